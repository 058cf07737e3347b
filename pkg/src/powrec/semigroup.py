"""Finite semigroups given by multiplication tables.

Elements are the dense indices ``0 .. n-1``.  Anything exposing ``order``,
``mul(x, y)`` and ``label(x)`` is treated as a semigroup by the functions in
this module, which is how power semigroups (see :mod:`powrec.powerset`) take
part in division searches without materializing their tables.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    AssociativityError,
    BoundExceededError,
    NotHomomorphismError,
    RangeError,
    SizeLimitError,
)

DEFAULT_ELEMENT_CAP = 1 << 16
DEFAULT_SEARCH_BUDGET = 250_000


@dataclass(frozen=True)
class FiniteSemigroup:
    """A semigroup on ``range(n)`` with ``table[x][y] == x * y``.

    The constructor checks shape and ranges only; use :func:`validate` for
    untrusted tables, since the associativity check is cubic.
    """

    table: tuple[tuple[int, ...], ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        for x, row in enumerate(table):
            if len(row) != n:
                raise RangeError(f"row {x} has {len(row)} entries, expected {n}")
            if row and (min(row) < 0 or max(row) >= n):
                y = next(y for y, v in enumerate(row) if not 0 <= v < n)
                raise RangeError(f"entry table[{x}][{y}] = {row[y]} outside [0, {n - 1}]")
        if self.labels is not None:
            labels = tuple(str(l) for l in self.labels)
            if len(labels) != n:
                raise RangeError(f"{len(labels)} labels for {n} elements")
            object.__setattr__(self, "labels", labels)

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def index(self, label: str) -> int:
        if self.labels is None:
            return int(label)
        return self.labels.index(label)

    def product(self, xs: Iterable[int]) -> int:
        it = iter(xs)
        acc = next(it)
        for x in it:
            acc = self.table[acc][x]
        return acc

    def pow(self, x: int, k: int) -> int:
        return power_of(self, x, k)

    def relabel(self, labels: Optional[Sequence[str]]) -> "FiniteSemigroup":
        return FiniteSemigroup(self.table, tuple(labels) if labels is not None else None)


def power_of(S, x: int, k: int) -> int:
    """``x**k`` for ``k >= 1``."""
    if k < 1:
        raise ValueError("exponent must be positive")
    acc = x
    for _ in range(k - 1):
        acc = S.mul(acc, x)
    return acc


def associativity_violation(S) -> Optional[tuple[int, int, int]]:
    n = S.order
    mul = S.mul
    for x in range(n):
        for y in range(n):
            xy = mul(x, y)
            for z in range(n):
                if mul(xy, z) != mul(x, mul(y, z)):
                    return (x, y, z)
    return None


def validate(table: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None) -> FiniteSemigroup:
    """Build a semigroup from ``table``, checking ranges and all n^3 triples."""
    S = FiniteSemigroup(tuple(tuple(r) for r in table), tuple(labels) if labels is not None else None)
    if S.order == 0:
        raise RangeError("a semigroup table needs at least one element")
    bad = associativity_violation(S)
    if bad is not None:
        raise AssociativityError(bad)
    return S


def materialize(S, labels: bool = True) -> FiniteSemigroup:
    """Copy any semigroup-like object into a table-backed one."""
    if isinstance(S, FiniteSemigroup):
        return S
    n = S.order
    table = tuple(tuple(S.mul(x, y) for y in range(n)) for x in range(n))
    return FiniteSemigroup(table, tuple(S.label(x) for x in range(n)) if labels else None)


# -- homomorphisms ---------------------------------------------------------


@dataclass(frozen=True)
class SemigroupHomomorphism:
    source: object
    target: object
    map: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(v) for v in self.map)
        object.__setattr__(self, "map", m)
        if len(m) != self.source.order:
            raise RangeError(f"map has {len(m)} entries, source has {self.source.order} elements")
        if m and (min(m) < 0 or max(m) >= self.target.order):
            x = next(x for x, v in enumerate(m) if not 0 <= v < self.target.order)
            raise RangeError(f"map[{x}] = {m[x]} outside the target")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def violation(self) -> Optional[tuple[int, int]]:
        smul, tmul, m = self.source.mul, self.target.mul, self.map
        n = self.source.order
        for x in range(n):
            mx = m[x]
            for y in range(n):
                if m[smul(x, y)] != tmul(mx, m[y]):
                    return (x, y)
        return None

    def is_homomorphism(self) -> bool:
        return self.violation() is None

    def verify(self) -> "SemigroupHomomorphism":
        bad = self.violation()
        if bad is not None:
            x, y = bad
            raise NotHomomorphismError(f"phi({x}*{y}) != phi({x})*phi({y})")
        return self

    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def is_surjective(self) -> bool:
        return len(self.image()) == self.target.order

    def is_injective(self) -> bool:
        return len(self.image()) == len(self.map)

    def then(self, other: "SemigroupHomomorphism") -> "SemigroupHomomorphism":
        """Composite ``other . self``."""
        return SemigroupHomomorphism(self.source, other.target, tuple(other.map[v] for v in self.map))


def identity_hom(S) -> SemigroupHomomorphism:
    return SemigroupHomomorphism(S, S, tuple(range(S.order)))


# -- subsemigroups ----------------------------------------------------------


@dataclass(frozen=True)
class SubsemigroupWitness:
    parent: object
    elements: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements))))

    def __contains__(self, x: int) -> bool:
        return x in set(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def is_closed(self) -> bool:
        members = set(self.elements)
        mul = self.parent.mul
        return all(mul(x, y) in members for x in self.elements for y in self.elements)

    def as_semigroup(self) -> FiniteSemigroup:
        """The subsemigroup re-indexed by position in ``elements``."""
        pos = {x: i for i, x in enumerate(self.elements)}
        mul = self.parent.mul
        table = tuple(tuple(pos[mul(x, y)] for y in self.elements) for x in self.elements)
        return FiniteSemigroup(table, tuple(self.parent.label(x) for x in self.elements))


def generated_subsemigroup(S, generators: Iterable[int]) -> SubsemigroupWitness:
    gens = list(dict.fromkeys(generators))
    if not gens:
        raise ValueError("at least one generator is required")
    for g in gens:
        if not 0 <= g < S.order:
            raise RangeError(f"generator {g} outside the semigroup")
    return SubsemigroupWitness(S, tuple(_closure_order(S, gens)))


def _closure_order(S, gens: Sequence[int]) -> list[int]:
    seen = set(gens)
    order = list(gens)
    todo = deque(gens)
    mul = S.mul
    while todo:
        x = todo.popleft()
        # products of x with everything known so far, on both sides
        for y in list(order):
            for z in (mul(x, y), mul(y, x)):
                if z not in seen:
                    seen.add(z)
                    order.append(z)
                    todo.append(z)
    return order


def _right_derivations(S, gens: Sequence[int]) -> tuple[list[int], dict[int, tuple[int, int]]]:
    """BFS by right multiplication with generators.

    Returns the elements in discovery order and, for every non-generator, a
    pair ``(prefix, generator_position)`` with ``element = prefix * gens[pos]``.
    """
    order = list(dict.fromkeys(gens))
    parent: dict[int, tuple[int, int]] = {}
    seen = set(order)
    todo = deque(order)
    while todo:
        x = todo.popleft()
        for k, g in enumerate(gens):
            z = S.mul(x, g)
            if z not in seen:
                seen.add(z)
                parent[z] = (x, k)
                order.append(z)
                todo.append(z)
    return order, parent


# -- constructions ----------------------------------------------------------


def direct_product(S, T, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteSemigroup:
    """Componentwise product; the pair ``(s, t)`` has index ``s * |T| + t``."""
    n, m = S.order, T.order
    if n * m > cap:
        raise SizeLimitError(f"|S|*|T| = {n * m} exceeds the element cap {cap}")
    table = []
    for s in range(n):
        for t in range(m):
            table.append(tuple(S.mul(s, s2) * m + T.mul(t, t2) for s2 in range(n) for t2 in range(m)))
    labels = tuple(f"({S.label(s)},{T.label(t)})" for s in range(n) for t in range(m))
    return FiniteSemigroup(tuple(table), labels)


def semilattice2() -> FiniteSemigroup:
    """The two-element semilattice ``{0, 1}`` under meet; index = value."""
    return FiniteSemigroup(((0, 0), (0, 1)), ("0", "1"))


def adjoin_semilattice_bit(S, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteSemigroup:
    """``S x 2``; element ``(s, b)`` has index ``2 * s + b``."""
    return direct_product(S, semilattice2(), cap)


def translations(S, s: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not 0 <= s < S.order:
        raise RangeError(f"element {s} outside the semigroup")
    left = tuple(S.mul(s, x) for x in range(S.order))
    right = tuple(S.mul(x, s) for x in range(S.order))
    return left, right


def is_aperiodic(S) -> bool:
    """True iff ``x**n == x**(n+1)`` for every ``x``, with ``n = |S|``."""
    n = S.order
    for x in range(n):
        xn = power_of(S, x, n)
        if S.mul(xn, x) != xn:
            return False
    return True


def index_and_period(S, x: int) -> tuple[int, int]:
    """Smallest ``(i, p)`` with ``x**i == x**(i+p)``."""
    seen: dict[int, int] = {}
    acc, k = x, 1
    while acc not in seen:
        seen[acc] = k
        acc = S.mul(acc, x)
        k += 1
    i = seen[acc]
    return i, k - i


# -- division ---------------------------------------------------------------


@dataclass(frozen=True)
class DivisionWitness:
    """``S`` divides ``T``: ``subsemigroup`` of ``T`` maps onto ``S`` via ``hom``.

    ``hom`` is indexed by position in ``subsemigroup.elements``.
    """

    generators: tuple[int, ...]
    subsemigroup: SubsemigroupWitness
    hom: SemigroupHomomorphism

    @property
    def mapping(self) -> dict[int, int]:
        return dict(zip(self.subsemigroup.elements, self.hom.map))

    def verify(self) -> bool:
        return (
            self.subsemigroup.is_closed()
            and self.hom.is_homomorphism()
            and self.hom.is_surjective()
        )


def divides(
    S,
    T,
    max_generators: int,
    *,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> Optional[DivisionWitness]:
    """Search for a subsemigroup of ``T`` with ``S`` as a homomorphic image.

    Candidate subsemigroups are closures of generator sets of size at most
    ``max_generators``.  They are tried smallest first, ties broken by the
    lexicographic order of their first generating tuple; for each, the
    homomorphism is fixed by the images of the generators, which are tried
    in lexicographic order.  ``None`` means "not found within the bound".
    """
    if max_generators < 1:
        raise ValueError("max_generators must be at least 1")
    n = T.order
    kmax = min(max_generators, n)
    total = sum(math.comb(n, k) for k in range(1, kmax + 1))
    if total > budget:
        raise BoundExceededError(f"{total} generator tuples exceed the search budget {budget}")

    candidates: dict[frozenset[int], tuple[int, ...]] = {}
    for k in range(1, kmax + 1):
        for gens in itertools.combinations(range(n), k):
            U = frozenset(_closure_order(T, gens))
            if len(U) >= S.order and U not in candidates:
                candidates[U] = gens
    ranked = sorted(candidates.items(), key=lambda item: len(item[0]))  # stable

    for U, gens in ranked:
        phi = _hom_onto(S, T, gens)
        if phi is not None:
            sub = SubsemigroupWitness(T, tuple(U))
            hom = SemigroupHomomorphism(sub.as_semigroup(), S, tuple(phi[x] for x in sub.elements))
            return DivisionWitness(tuple(gens), sub, hom)
    return None


def _hom_onto(S, T, gens: Sequence[int]) -> Optional[dict[int, int]]:
    order, parent = _right_derivations(T, gens)
    if len(order) < S.order:
        return None
    k = len(gens)
    for images in itertools.product(range(S.order), repeat=k):
        phi = dict(zip(gens, images))
        # a generator may also be a product of generators; that is caught below
        for x in order[k:]:
            p, g = parent[x]
            phi[x] = S.mul(phi[p], images[g])
        if len(set(phi.values())) != S.order:
            continue
        if all(phi[T.mul(x, y)] == S.mul(phi[x], phi[y]) for x in order for y in order):
            return phi
    return None


def compose_divisions(first: DivisionWitness, second: DivisionWitness) -> DivisionWitness:
    """From ``S < T`` (``first``) and ``T < V`` (``second``) build ``S < V``.

    ``second.hom`` must land in the semigroup that ``first.subsemigroup``
    lives in.
    """
    onto_t = second.mapping
    wanted = first.mapping
    elements = tuple(v for v in second.subsemigroup.elements if onto_t[v] in wanted)
    sub = SubsemigroupWitness(second.subsemigroup.parent, elements)
    S = first.hom.target
    hom = SemigroupHomomorphism(sub.as_semigroup(), S, tuple(wanted[onto_t[v]] for v in sub.elements))
    return DivisionWitness(sub.elements, sub, hom)


def homomorphisms(S, T) -> Iterable[tuple[int, ...]]:
    """Every homomorphism ``S -> T`` as an image tuple, in lexicographic order."""
    n = S.order
    smul, tmul = S.mul, T.mul
    # checks[k]: pairs whose law becomes decidable once phi[0..k] are fixed
    checks: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for x in range(n):
        for y in range(n):
            xy = smul(x, y)
            checks[max(x, y, xy)].append((x, y, xy))
    phi = [0] * n

    def extend(k: int):
        if k == n:
            yield tuple(phi)
            return
        todo = checks[k]
        for v in range(T.order):
            phi[k] = v
            if all(phi[xy] == tmul(phi[x], phi[y]) for x, y, xy in todo):
                yield from extend(k + 1)

    yield from extend(0)


def find_isomorphism(S, T) -> Optional[tuple[int, ...]]:
    """A bijection ``S -> T`` respecting products, by brute force (small only)."""
    if S.order != T.order:
        return None
    for perm in itertools.permutations(range(T.order)):
        if all(perm[S.mul(x, y)] == T.mul(perm[x], perm[y]) for x in range(S.order) for y in range(S.order)):
            return perm
    return None


# -- catalog ----------------------------------------------------------------


def trivial() -> FiniteSemigroup:
    return FiniteSemigroup(((0,),), ("e",))


def cyclic_group(n: int) -> FiniteSemigroup:
    """``Z_n`` under addition mod ``n``."""
    return FiniteSemigroup(tuple(tuple((x + y) % n for y in range(n)) for x in range(n)))


def brandt_b2() -> FiniteSemigroup:
    """``B2 = {a, b, ab, ba, 0}`` with ``aba = a``, ``bab = b``, ``aa = bb = 0``."""
    a, b, ab, ba, z = range(5)
    table = [[z] * 5 for _ in range(5)]
    table[a][b] = ab
    table[b][a] = ba
    table[a][ba] = a
    table[b][ab] = b
    table[ab][a] = a
    table[ba][b] = b
    table[ab][ab] = ab
    table[ba][ba] = ba
    return FiniteSemigroup(tuple(map(tuple, table)), ("a", "b", "ab", "ba", "0"))


def left_zero(n: int) -> FiniteSemigroup:
    return FiniteSemigroup(tuple(tuple(x for _ in range(n)) for x in range(n)))


def right_zero(n: int) -> FiniteSemigroup:
    return FiniteSemigroup(tuple(tuple(range(n)) for _ in range(n)))


def null_semigroup(n: int) -> FiniteSemigroup:
    """``x * y = 0`` for all ``x, y``."""
    return FiniteSemigroup(tuple(tuple(0 for _ in range(n)) for _ in range(n)))


def chain(n: int) -> FiniteSemigroup:
    """``{0 < 1 < ... < n-1}`` under min."""
    return FiniteSemigroup(tuple(tuple(min(x, y) for y in range(n)) for x in range(n)))


def with_zero(S) -> FiniteSemigroup:
    """``S`` with a fresh zero adjoined as the last element."""
    n = S.order
    table = [tuple(S.mul(x, y) for y in range(n)) + (n,) for x in range(n)]
    table.append(tuple(n for _ in range(n + 1)))
    labels = tuple(S.label(x) for x in range(n)) + ("0",)
    return FiniteSemigroup(tuple(table), labels)


def _canonical_table(table: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    n = len(table)
    best = None
    for perm in itertools.permutations(range(n)):
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        relabeled = tuple(tuple(perm[table[inv[x]][inv[y]]] for y in range(n)) for x in range(n))
        if best is None or relabeled < best:
            best = relabeled
    return best


def all_semigroups(n: int, up_to_isomorphism: bool = True) -> list[FiniteSemigroup]:
    """Every associative table on ``n <= 4`` elements, by backtracking over cells."""
    if n > 4:
        raise SizeLimitError("exhaustive enumeration is limited to n <= 4")
    cells = [(x, y) for x in range(n) for y in range(n)]
    table = [[-1] * n for _ in range(n)]
    found = []
    seen = set()

    def associative_so_far() -> bool:
        for x in range(n):
            for y in range(n):
                xy = table[x][y]
                if xy < 0:
                    continue
                for z in range(n):
                    yz = table[y][z]
                    if yz < 0:
                        continue
                    left, right = table[xy][z], table[x][yz]
                    if left >= 0 and right >= 0 and left != right:
                        return False
        return True

    def extend(k: int):
        if k == len(cells):
            frozen = tuple(map(tuple, table))
            if up_to_isomorphism:
                key = _canonical_table(frozen)
                if key in seen:
                    return
                seen.add(key)
            found.append(FiniteSemigroup(frozen))
            return
        x, y = cells[k]
        for v in range(n):
            table[x][y] = v
            if associative_so_far():
                extend(k + 1)
        table[x][y] = -1

    extend(0)
    return found
