"""Power semigroups, image maps and span decompositions.

Subsets of a base semigroup on ``range(n)`` are int bitmasks: bit ``k`` set
means element ``k`` belongs to the subset.  In full mode the element index of
a subset *is* its mask, so ``{}`` is element 0.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .errors import (
    EmptyFiberError,
    MissingSingletonError,
    NotHomomorphismError,
    RangeError,
    SizeLimitError,
)
from .semigroup import (
    DEFAULT_ELEMENT_CAP,
    FiniteSemigroup,
    SemigroupHomomorphism,
)

FULL_MODE_LIMIT = 20
TABLE_LIMIT = 10
EAGER_TABLE_LIMIT = 6


def bits(mask: int) -> Iterator[int]:
    k = 0
    while mask:
        if mask & 1:
            yield k
        mask >>= 1
        k += 1


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def subset_literal(mask: int) -> str:
    return "{" + ",".join(str(k) for k in bits(mask)) + "}"


def parse_subset(text: str) -> int:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(f"not a subset literal: {text!r}")
    body = text[1:-1].strip()
    if not body:
        return 0
    return mask_of(int(part) for part in body.split(","))


def subset_product(S, q1: int, q2: int) -> int:
    """Pointwise product ``{s t | s in q1, t in q2}`` of two masks."""
    if not q1 or not q2:
        return 0
    right = list(bits(q2))
    out = 0
    for s in bits(q1):
        for t in right:
            out |= 1 << S.mul(s, t)
    return out


class PowerSemigroup:
    """Subsets of ``base`` under pointwise product.

    ``full`` mode holds all ``2**|base|`` subsets, indexed by mask.
    ``generated`` mode holds the subsemigroup generated by a family of
    subsets, indexed in discovery order; its table is built eagerly.
    """

    def __init__(self, base, mode: str, masks: Optional[Sequence[int]] = None, table=None):
        self.base = base
        self.mode = mode
        self._masks = tuple(masks) if masks is not None else None
        self._index = {m: i for i, m in enumerate(self._masks)} if masks is not None else None
        self._table = table

    def __repr__(self) -> str:
        return f"PowerSemigroup(mode={self.mode!r}, base_order={self.base.order}, order={self.order})"

    @property
    def order(self) -> int:
        if self.mode == "full":
            return 1 << self.base.order
        return len(self._masks)

    def __len__(self) -> int:
        return self.order

    def mask(self, i: int) -> int:
        return i if self.mode == "full" else self._masks[i]

    @property
    def masks(self) -> tuple[int, ...]:
        if self.mode == "full":
            return tuple(range(self.order))
        return self._masks

    def find(self, mask: int) -> Optional[int]:
        if self.mode == "full":
            return mask if 0 <= mask < self.order else None
        return self._index.get(mask)

    def index(self, mask: int) -> int:
        i = self.find(mask)
        if i is None:
            raise RangeError(f"subset {subset_literal(mask)} is not an element of this power semigroup")
        return i

    def mul(self, i: int, j: int) -> int:
        if self._table is not None:
            return self._table[i][j]
        return subset_product(self.base, i, j)

    def label(self, i: int) -> str:
        return subset_literal(self.mask(i))

    def as_semigroup(self) -> FiniteSemigroup:
        if self.mode == "full" and self.base.order > TABLE_LIMIT:
            raise SizeLimitError(f"tables are only materialized for bases of size <= {TABLE_LIMIT}")
        n = self.order
        table = self._table or tuple(tuple(self.mul(i, j) for j in range(n)) for i in range(n))
        return FiniteSemigroup(table, tuple(self.label(i) for i in range(n)))


def power(S) -> PowerSemigroup:
    """Full power semigroup; subsets indexed by bit-vector value."""
    if S.order > FULL_MODE_LIMIT:
        raise SizeLimitError(f"full power semigroup needs |S| <= {FULL_MODE_LIMIT}, got {S.order}")
    table = _full_table(S) if S.order <= EAGER_TABLE_LIMIT and isinstance(S, FiniteSemigroup) else None
    return PowerSemigroup(S, "full", table=table)


@functools.lru_cache(maxsize=512)
def _full_table(S: FiniteSemigroup) -> tuple[tuple[int, ...], ...]:
    n = 1 << S.order
    return tuple(tuple(subset_product(S, i, j) for j in range(n)) for i in range(n))


def generated_power(S, generators: Iterable[int], cap: int = DEFAULT_ELEMENT_CAP) -> PowerSemigroup:
    """The subsemigroup of P(S) generated by the given subset masks."""
    order = list(dict.fromkeys(generators))
    if not order:
        raise ValueError("at least one generator is required")
    if len(order) > cap:
        raise SizeLimitError(f"generated power semigroup exceeds {cap} elements")
    index = {m: i for i, m in enumerate(order)}
    done = 0
    # closure: multiply every pair once, extending as new subsets appear
    products: dict[tuple[int, int], int] = {}
    while done < len(order):
        i = done
        done += 1
        for j in range(done):
            for a, b in ((i, j), (j, i)):
                if (a, b) in products:
                    continue
                m = subset_product(S, order[a], order[b])
                if m not in index:
                    if len(order) >= cap:
                        raise SizeLimitError(f"generated power semigroup exceeds {cap} elements")
                    index[m] = len(order)
                    order.append(m)
                products[(a, b)] = index[m]
    n = len(order)
    table = tuple(tuple(products[(i, j)] for j in range(n)) for i in range(n))
    return PowerSemigroup(S, "generated", order, table)


def singleton_embedding(P: PowerSemigroup) -> SemigroupHomomorphism:
    """``s -> {s}``, checked to be an injective homomorphism."""
    images = []
    for s in range(P.base.order):
        i = P.find(1 << s)
        if i is None:
            raise MissingSingletonError(f"singleton {{{s}}} is not materialized")
        images.append(i)
    hom = SemigroupHomomorphism(P.base, P, tuple(images)).verify()
    assert hom.is_injective()
    return hom


def forward_image_hom(g: SemigroupHomomorphism, verify: Optional[bool] = None) -> SemigroupHomomorphism:
    """``P(g): Q -> g[Q]`` between full power semigroups.

    The homomorphism law is checked exhaustively when ``verify`` is true, or
    by default when the source power has at most 64 elements.
    """
    src, tgt = power(g.source), power(g.target)
    images = []
    for q in range(src.order):
        images.append(mask_of(g.map[s] for s in bits(q)))
    hom = SemigroupHomomorphism(src, tgt, tuple(images))
    if verify or (verify is None and src.order <= 64):
        hom.verify()
    return hom


def preimage(f: SemigroupHomomorphism, q: int) -> int:
    return mask_of(x for x, y in enumerate(f.map) if (q >> y) & 1)


def inverse_image_map(f: SemigroupHomomorphism) -> tuple[Callable[[int], int], bool]:
    """``Q -> f^-1(Q)`` and whether it is a homomorphism ``P(T) -> P(S)``.

    The second component is decided by checking all pairs of subsets of the
    target, so this is meant for small targets.
    """
    S, T = f.source, f.target
    if T.order > 12:
        raise SizeLimitError("exhaustive pair check limited to targets of size <= 12")
    table = [preimage(f, q) for q in range(1 << T.order)]
    is_hom = True
    for q1 in range(1 << T.order):
        for q2 in range(1 << T.order):
            if subset_product(S, table[q1], table[q2]) != table[subset_product(T, q1, q2)]:
                is_hom = False
                break
        if not is_hom:
            break
    return (lambda q: table[q]), is_hom


def vietoris_actions(P: PowerSemigroup, q: int) -> tuple[Callable[[int], int], Callable[[int], int]]:
    """Left and right actions of the subset ``q`` on subsets of the base."""
    base = P.base

    def left(c: int) -> int:
        return subset_product(base, q, c)

    def right(c: int) -> int:
        return subset_product(base, c, q)

    return left, right


def diamond_set(P: PowerSemigroup, q: int) -> frozenset[int]:
    """Indices of materialized elements that meet ``q``."""
    return frozenset(i for i in range(P.order) if P.mask(i) & q)


# -- spans --------------------------------------------------------------------


@dataclass(frozen=True)
class SpanOverPower:
    """``T <-f- R -g-> S`` with ``R`` a subsemigroup of ``T x S``.

    ``pairs[i]`` is the ``(t, s)`` pair carried by element ``i`` of ``R``.
    """

    T: object
    S: object
    pairs: tuple[tuple[int, int], ...]
    R: FiniteSemigroup
    f: SemigroupHomomorphism
    g: SemigroupHomomorphism


def span_from_pairs(T, S, pairs: Iterable[tuple[int, int]]) -> SpanOverPower:
    """Package a product-closed set of pairs as a span with its projections."""
    ordered = tuple(sorted(set(pairs)))
    m = S.order
    index = [-1] * (T.order * m)
    for i, (t, s) in enumerate(ordered):
        index[t * m + s] = i
    tt, st = _rows(T), _rows(S)
    rows = []
    for t, s in ordered:
        trow, srow = tt[t], st[s]
        row = tuple([index[trow[t2] * m + srow[s2]] for t2, s2 in ordered])
        if -1 in row:
            raise NotHomomorphismError("pairs are not closed under the product of T x S")
        rows.append(row)
    R = FiniteSemigroup(tuple(rows), tuple(f"({T.label(t)},{S.label(s)})" for t, s in ordered))
    f = SemigroupHomomorphism(R, T, tuple(t for t, _ in ordered))
    g = SemigroupHomomorphism(R, S, tuple(s for _, s in ordered))
    return SpanOverPower(T, S, ordered, R, f, g)


def _rows(S) -> Sequence[Sequence[int]]:
    table = getattr(S, "table", None)
    if table is None:
        n = S.order
        table = [[S.mul(x, y) for y in range(n)] for x in range(n)]
    return table


def span_decompose(h: SemigroupHomomorphism, strict: bool = False) -> SpanOverPower:
    """``R = {(t, s) | s in h(t)}`` with its two projections."""
    P = h.target
    if not isinstance(P, PowerSemigroup):
        raise TypeError("h must map into a power semigroup")
    h.verify()
    pairs = []
    for t in range(h.source.order):
        q = P.mask(h.map[t])
        if not q and strict:
            raise EmptyFiberError(f"h({t}) is empty")
        pairs.extend((t, s) for s in bits(q))
    return span_from_pairs(h.source, P.base, pairs)


def span_compose(span: SpanOverPower) -> SemigroupHomomorphism:
    """``h(t) = g[f^-1(t)]`` into the full power semigroup of ``S``."""
    images = [0] * span.T.order
    for t, s in span.pairs:
        images[t] |= 1 << s
    return SemigroupHomomorphism(span.T, power(span.S), tuple(images)).verify()
