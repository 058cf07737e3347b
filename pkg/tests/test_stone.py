from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from powrec.errors import RangeError
from powrec.powerset import bits, mask_of
from powrec.stone import (
    BaHomomorphism,
    FiniteBooleanAlgebra,
    FiniteSpaceMap,
    all_maps,
    ba_homomorphism_from_map,
    box,
    check_forward_identities,
    check_span_identity,
    check_star_identities,
    diamond,
    dual_map,
    lower_adjoint,
    map_to_span,
    preimage_family,
    span_to_map,
    star_map,
    subsets,
    vietoris_map,
)


def ba(m):
    return FiniteBooleanAlgebra(m)


def hom(m_src, m_tgt, assignment):
    return BaHomomorphism(ba(m_src), ba(m_tgt), assignment)


def brute_ba_homs(m_src, m_tgt):
    """All lattice maps preserving 0, 1, meet, join and complement, by brute force."""
    B, C = ba(m_src), ba(m_tgt)
    for table in itertools.product(C.elements(), repeat=1 << m_src):
        if table[0] != 0 or table[B.top] != C.top:
            continue
        if all(
            table[a & b] == table[a] & table[b] and table[a | b] == table[a] | table[b] and table[B.complement(a)] == C.complement(table[a])
            for a in B.elements()
            for b in B.elements()
        ):
            yield table


class TestBooleanAlgebra:
    def test_operations(self):
        B = ba(3)
        assert B.top == 0b111
        assert B.complement(0b101) == 0b010
        assert B.leq(0b001, 0b011) and not B.leq(0b100, 0b011)

    @pytest.mark.parametrize("m_src, m_tgt", [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2)])
    def test_assignments_are_exactly_the_homomorphisms(self, m_src, m_tgt):
        induced = set()
        for assignment in itertools.product(range(m_src), repeat=m_tgt):
            alpha = hom(m_src, m_tgt, assignment)
            assert alpha.preserves_operations()
            induced.add(tuple(alpha(b) for b in range(1 << m_src)))
        assert induced == set(brute_ba_homs(m_src, m_tgt))

    def test_range(self):
        with pytest.raises(RangeError):
            hom(2, 1, (2,))
        with pytest.raises(RangeError):
            hom(2, 2, (0,))


class TestDuality:
    def test_identity(self):
        f = dual_map(hom(3, 3, (0, 1, 2)))
        assert f.table == (0, 1, 2)

    def test_collapse(self):
        f = dual_map(hom(2, 1, (1,)))
        assert f.table == (1,)

    def test_three_atoms(self):
        f = dual_map(hom(2, 3, (1, 1, 0)))
        assert f.preimage(0b10) == 0b011

    @pytest.mark.parametrize("m_src, m_tgt", [(m, n) for m in range(1, 4) for n in range(1, 4)])
    def test_roundtrip(self, m_src, m_tgt):
        for assignment in itertools.product(range(m_src), repeat=m_tgt):
            alpha = hom(m_src, m_tgt, assignment)
            f = dual_map(alpha)
            again = ba_homomorphism_from_map(f)
            assert again == alpha
            assert all(f.preimage(b) == alpha(b) for b in range(1 << m_src))


class TestLowerAdjoint:
    def test_identity(self):
        assert lower_adjoint(hom(2, 2, (0, 1))) == (0, 1, 2, 3)

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_from_two(self, m):
        table = lower_adjoint(hom(1, m, (0,) * m))
        assert table == tuple(0 if q == 0 else 1 for q in range(1 << m))

    def test_three_atoms_is_direct_image(self):
        alpha = hom(2, 3, (1, 1, 0))
        f = dual_map(alpha)
        assert lower_adjoint(alpha) == tuple(f.image(q) for q in range(8))
        assert lower_adjoint(alpha) == (0, 2, 2, 2, 1, 3, 3, 3)

    @pytest.mark.parametrize("m_src, m_tgt", [(2, 3), (3, 2), (3, 3), (1, 4)])
    def test_adjunction_law(self, m_src, m_tgt):
        for assignment in itertools.product(range(m_src), repeat=m_tgt):
            alpha = hom(m_src, m_tgt, assignment)
            low = lower_adjoint(alpha)
            for q in range(1 << m_tgt):
                for p in range(1 << m_src):
                    assert (low[q] & ~p == 0) == (q & ~alpha(p) == 0)


class TestVietoris:
    def test_diamond_and_box(self):
        assert diamond(2, 0b11) == {1, 2, 3}
        assert box(2, 0) == {0}
        assert diamond(2, 0b01) == {0b01, 0b11}
        assert all(0 in box(3, u) and 0 not in diamond(3, u) for u in subsets(3))

    @pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
    def test_de_morgan(self, n):
        everything = frozenset(subsets(n))
        for u in subsets(n):
            assert box(n, u) == everything - diamond(n, ((1 << n) - 1) & ~u)

    def test_identity_map(self):
        g = FiniteSpaceMap(3, 3, (0, 1, 2))
        assert all(vietoris_map(g)(c) == c for c in subsets(3))

    def test_constant_star(self):
        f = FiniteSpaceMap(3, 1, (0, 0, 0))
        fs = star_map(f)
        assert fs(1) == 0b111 and fs(0) == 0

    def test_star_box_example(self):
        f = FiniteSpaceMap(3, 2, (0, 0, 1))
        assert preimage_family(star_map(f), 2, box(3, 0b001)) == {0}

    @pytest.mark.parametrize("source, target", [(s, t) for s in range(0, 5) for t in range(1, 5) if s * t <= 12])
    def test_identities_exhaustive(self, source, target):
        for f in all_maps(source, target):
            assert check_forward_identities(f) == []
            assert check_star_identities(f) == []

    @given(st.integers(1, 4).flatmap(lambda z: st.tuples(st.just(z), st.integers(1, 4))).flatmap(
        lambda p: st.tuples(st.just(p), st.lists(st.integers(0, p[1] - 1), min_size=p[0], max_size=p[0]))
    ))
    def test_forward_image_oracle(self, args):
        (z, x), table = args
        g = FiniteSpaceMap(z, x, table)
        for c in subsets(z):
            assert set(bits(vietoris_map(g)(c))) == {table[i] for i in bits(c)}


class TestSpans:
    def test_identity_leg(self):
        g = FiniteSpaceMap(3, 2, (1, 0, 1))
        f = FiniteSpaceMap(3, 3, (0, 1, 2))
        assert span_to_map(f, g) == (0b10, 0b01, 0b10)

    def test_empty_fiber(self):
        f = FiniteSpaceMap(2, 3, (0, 0))
        g = FiniteSpaceMap(2, 2, (0, 1))
        assert span_to_map(f, g)[1] == 0

    def test_worked_example(self):
        f = FiniteSpaceMap(3, 2, (0, 0, 1))
        g = FiniteSpaceMap(3, 2, (0, 1, 1))
        h = span_to_map(f, g)
        assert h == (0b11, 0b10)
        assert check_span_identity(f, g) == []
        assert mask_of(y for y, c in enumerate(h) if c & 0b01) == 0b01 == f.image(g.preimage(0b01))
        Z, f2, g2 = map_to_span(h, 2)
        assert Z == ((0, 0), (0, 1), (1, 1))

    def test_graph(self):
        Z, f, g = map_to_span((0b01, 0b10, 0b10), 2)
        assert Z == ((0, 0), (1, 1), (2, 1))

    def test_constant_empty(self):
        Z, f, g = map_to_span((0, 0), 3)
        assert Z == () and f.source == g.source == 0

    def test_range(self):
        with pytest.raises(RangeError):
            map_to_span((0b100,), 2)
        with pytest.raises(RangeError):
            span_to_map(FiniteSpaceMap(1, 1, (0,)), FiniteSpaceMap(2, 1, (0, 0)))

    @pytest.mark.parametrize("y, x", [(y, x) for y in range(1, 4) for x in range(1, 4)])
    def test_roundtrip_exhaustive(self, y, x):
        for h in itertools.product(range(1 << x), repeat=y):
            Z, f, g = map_to_span(h, x)
            assert span_to_map(f, g) == h
            assert check_span_identity(f, g) == []

    @pytest.mark.parametrize("z, y, x", [(2, 2, 2), (3, 2, 2), (3, 3, 2), (2, 3, 3)])
    def test_span_identity_exhaustive(self, z, y, x):
        for f in all_maps(z, y):
            for g in all_maps(z, x):
                assert check_span_identity(f, g) == []
