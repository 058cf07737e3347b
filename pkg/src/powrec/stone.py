"""Finite Stone duality and Vietoris spaces.

A finite Boolean algebra with ``m`` atoms is the powerset of ``range(m)``,
with elements stored as bitmasks.  Finite spaces are discrete, so every
subset is clopen, every map is continuous and open, and the Vietoris space
of ``X`` is its full powerset (``{}`` included).  What stays nontrivial is
the set-level algebra of images, preimages, diamonds and boxes, which this
module computes and checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .errors import RangeError
from .powerset import bits, mask_of


@dataclass(frozen=True)
class FiniteBooleanAlgebra:
    atoms: int

    @property
    def top(self) -> int:
        return (1 << self.atoms) - 1

    def elements(self) -> range:
        return range(1 << self.atoms)

    def meet(self, a: int, b: int) -> int:
        return a & b

    def join(self, a: int, b: int) -> int:
        return a | b

    def complement(self, a: int) -> int:
        return self.top & ~a

    def leq(self, a: int, b: int) -> bool:
        return a & ~b == 0


@dataclass(frozen=True)
class FiniteSpaceMap:
    """Total function ``range(source) -> range(target)``."""

    source: int
    target: int
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != self.source:
            raise RangeError(f"{len(self.table)} values for a source of size {self.source}")
        if any(not 0 <= y < self.target for y in self.table):
            raise RangeError("map leaves its target")

    def __call__(self, z: int) -> int:
        return self.table[z]

    def image(self, mask: int) -> int:
        return mask_of(self.table[z] for z in bits(mask))

    def preimage(self, mask: int) -> int:
        return mask_of(z for z, y in enumerate(self.table) if (mask >> y) & 1)


@dataclass(frozen=True)
class BaHomomorphism:
    """``alpha: B -> C`` given dually: ``atom_assignment[j]`` is the atom of ``B``
    below which target atom ``j`` sits, so ``alpha(b)`` is the set of target
    atoms assigned into ``b``."""

    source: FiniteBooleanAlgebra
    target: FiniteBooleanAlgebra
    atom_assignment: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "atom_assignment", tuple(self.atom_assignment))
        if len(self.atom_assignment) != self.target.atoms:
            raise RangeError("one source atom per target atom is required")
        if any(not 0 <= i < self.source.atoms for i in self.atom_assignment):
            raise RangeError("assignment names a nonexistent source atom")

    def __call__(self, b: int) -> int:
        return mask_of(j for j, i in enumerate(self.atom_assignment) if (b >> i) & 1)

    def preserves_operations(self) -> bool:
        B, C = self.source, self.target
        img = [self(b) for b in B.elements()]
        if img[0] != 0 or img[B.top] != C.top:
            return False
        for a in B.elements():
            ia = img[a]
            if img[B.complement(a)] != C.complement(ia):
                return False
            for b in B.elements():
                if img[a & b] != ia & img[b] or img[a | b] != ia | img[b]:
                    return False
        return True


def ba_homomorphism_from_map(f: FiniteSpaceMap) -> BaHomomorphism:
    """The preimage homomorphism of a space map, ``f^-1: P(Y) -> P(Z)``."""
    return BaHomomorphism(FiniteBooleanAlgebra(f.target), FiniteBooleanAlgebra(f.source), f.table)


def dual_map(alpha: BaHomomorphism) -> FiniteSpaceMap:
    """The space map between atom sets, checked against ``f^-1(b) = alpha(b)``."""
    f = FiniteSpaceMap(alpha.target.atoms, alpha.source.atoms, alpha.atom_assignment)
    for b in alpha.source.elements():
        if f.preimage(b) != alpha(b):
            raise AssertionError(f"duality fails at element {b}")
    return f


def lower_adjoint(alpha: BaHomomorphism) -> tuple[int, ...]:
    """``alpha_*(q)`` = meet of ``{p | q <= alpha(p)}``, tabulated over ``C``.

    The adjunction ``alpha_*(q) <= p  iff  q <= alpha(p)`` is checked on all
    pairs before returning.
    """
    B, C = alpha.source, alpha.target
    images = [alpha(p) for p in B.elements()]
    table = []
    for q in C.elements():
        m = B.top
        for p in B.elements():
            if C.leq(q, images[p]):
                m &= p
        table.append(m)
    for q in C.elements():
        for p in B.elements():
            if B.leq(table[q], p) != C.leq(q, images[p]):
                raise AssertionError(f"adjunction fails at q={q}, p={p}")
    return tuple(table)


# -- Vietoris ---------------------------------------------------------------------


def subsets(n: int) -> range:
    return range(1 << n)


def diamond(n: int, u: int) -> frozenset[int]:
    """Subsets of ``range(n)`` meeting ``u``."""
    return frozenset(c for c in subsets(n) if c & u)


def box(n: int, u: int) -> frozenset[int]:
    """Subsets of ``range(n)`` contained in ``u``; always contains ``{}``."""
    return frozenset(c for c in subsets(n) if c & ~u == 0)


def vietoris_map(g: FiniteSpaceMap) -> Callable[[int], int]:
    return g.image


def star_map(f: FiniteSpaceMap) -> Callable[[int], int]:
    return f.preimage


def preimage_family(fn: Callable[[int], int], n: int, family: frozenset[int]) -> frozenset[int]:
    """``{c subset of range(n) | fn(c) in family}``."""
    return frozenset(c for c in subsets(n) if fn(c) in family)


def span_to_map(f: FiniteSpaceMap, g: FiniteSpaceMap) -> tuple[int, ...]:
    """``h(y) = g[f^-1({y})]`` for the span ``Y <-f- Z -g-> X``."""
    if f.source != g.source:
        raise RangeError("the two legs of a span need a common source")
    return tuple(g.image(f.preimage(1 << y)) for y in range(f.target))


def map_to_span(h: Sequence[int], x_size: int) -> tuple[tuple[tuple[int, int], ...], FiniteSpaceMap, FiniteSpaceMap]:
    """``Z = {(y, x) | x in h(y)}`` with its projections to ``Y`` and ``X``."""
    Z = tuple((y, x) for y, c in enumerate(h) for x in bits(c))
    if any(x >= x_size for _, x in Z):
        raise RangeError("h(y) leaves X")
    f = FiniteSpaceMap(len(Z), len(h), tuple(y for y, _ in Z))
    g = FiniteSpaceMap(len(Z), x_size, tuple(x for _, x in Z))
    return Z, f, g


def all_maps(source: int, target: int) -> Iterator[FiniteSpaceMap]:
    for table in itertools.product(range(target), repeat=source):
        yield FiniteSpaceMap(source, target, table)


# -- identity checks -------------------------------------------------------------


def check_forward_identities(g: FiniteSpaceMap) -> list[str]:
    """Diamond and box pull back along the forward image map; returns failures."""
    failures = []
    Vg = vietoris_map(g)
    for u in subsets(g.target):
        pre = g.preimage(u)
        if preimage_family(Vg, g.source, diamond(g.target, u)) != diamond(g.source, pre):
            failures.append(f"diamond pullback fails for g={g.table}, U={u}")
        if preimage_family(Vg, g.source, box(g.target, u)) != box(g.source, pre):
            failures.append(f"box pullback fails for g={g.table}, U={u}")
    return failures


def check_star_identities(f: FiniteSpaceMap) -> list[str]:
    """Diamond and box pull back along the inverse image map; returns failures."""
    failures = []
    fs = star_map(f)
    Z, Y = f.source, f.target
    topz = (1 << Z) - 1
    topy = (1 << Y) - 1
    for u in subsets(Z):
        if preimage_family(fs, Y, diamond(Z, u)) != diamond(Y, f.image(u)):
            failures.append(f"star diamond fails for f={f.table}, U={u}")
        expected = box(Y, topy & ~f.image(topz & ~u))
        if preimage_family(fs, Y, box(Z, u)) != expected:
            failures.append(f"star box fails for f={f.table}, U={u}")
    return failures


def check_span_identity(f: FiniteSpaceMap, g: FiniteSpaceMap) -> list[str]:
    """``h^-1(diamond U) = f[g^-1(U)]`` for every ``U``; returns failures."""
    h = span_to_map(f, g)
    failures = []
    for u in subsets(g.target):
        lhs = mask_of(y for y, c in enumerate(h) if c & u)
        if lhs != f.image(g.preimage(u)):
            failures.append(f"span identity fails for f={f.table}, g={g.table}, U={u}")
    return failures
