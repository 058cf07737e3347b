"""Regular languages of nonempty words.

Every language here is a subset of ``A+``: the empty word is never a member,
so whether an initial state accepts is irrelevant to the language and is
ignored by equivalence and minimization.

Words are tuples of symbol names.  Alphabets are tuples of distinct names;
automata store transitions by symbol position.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import AlphabetMismatchError, RegexSyntaxError, SizeLimitError
from .powerset import PowerSemigroup, diamond_set, generated_power, mask_of
from .semigroup import DEFAULT_ELEMENT_CAP, FiniteSemigroup

Word = tuple[str, ...]

SYNTACTIC_CAP = 10_000


def make_alphabet(symbols: Iterable[str]) -> tuple[str, ...]:
    alphabet = tuple(str(s) for s in symbols)
    if not alphabet:
        raise ValueError("an alphabet needs at least one symbol")
    if len(set(alphabet)) != len(alphabet):
        raise ValueError(f"duplicate symbols in alphabet {alphabet}")
    return alphabet


def words(alphabet: Sequence[str], max_length: int, min_length: int = 1) -> Iterator[Word]:
    """All words with ``min_length <= |w| <= max_length``, shortlex order."""
    for n in range(min_length, max_length + 1):
        yield from itertools.product(alphabet, repeat=n)


def split_word(text: str, alphabet: Sequence[str]) -> Word:
    """Parse a word: space/comma separated, or greedy over symbol names."""
    text = text.strip()
    if not text or text in ("eps", "ε"):
        return ()
    if any(c in text for c in " ,"):
        parts = tuple(p for p in text.replace(",", " ").split() if p)
    else:
        parts = []
        i = 0
        names = sorted(alphabet, key=len, reverse=True)
        while i < len(text):
            for name in names:
                if text.startswith(name, i):
                    parts.append(name)
                    i += len(name)
                    break
            else:
                raise ValueError(f"cannot read a symbol at {text[i:]!r}")
        parts = tuple(parts)
    unknown = [p for p in parts if p not in alphabet]
    if unknown:
        raise ValueError(f"symbols {unknown} not in alphabet")
    return parts


def join_word(word: Sequence[str]) -> str:
    if all(len(s) == 1 for s in word):
        return "".join(word)
    return ".".join(word)


# -- automata -----------------------------------------------------------------


@dataclass(frozen=True)
class Dfa:
    """Complete deterministic automaton; ``delta[q][k]`` reads ``alphabet[k]``."""

    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]
    initial: int
    accepting: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "delta", tuple(tuple(r) for r in self.delta))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        n = len(self.delta)
        if not 0 <= self.initial < n:
            raise ValueError(f"initial state {self.initial} out of range")
        for q, row in enumerate(self.delta):
            if len(row) != len(self.alphabet):
                raise ValueError(f"state {q} is missing transitions")
            if any(not 0 <= p < n for p in row):
                raise ValueError(f"state {q} has a transition out of range")
        if any(not 0 <= q < n for q in self.accepting):
            raise ValueError("accepting state out of range")

    @property
    def size(self) -> int:
        return len(self.delta)

    def symbol_index(self, symbol: str) -> int:
        try:
            return self.alphabet.index(symbol)
        except ValueError:
            raise AlphabetMismatchError(f"symbol {symbol!r} not in alphabet {self.alphabet}") from None

    def run(self, word: Sequence[str], state: Optional[int] = None) -> int:
        q = self.initial if state is None else state
        for sym in word:
            q = self.delta[q][self.symbol_index(sym)]
        return q

    def accepts(self, word: Sequence[str]) -> bool:
        return len(word) > 0 and self.run(word) in self.accepting

    def __contains__(self, word) -> bool:
        return self.accepts(tuple(word))


@dataclass(frozen=True)
class Nfa:
    """Automaton with a transition relation and optional epsilon moves."""

    alphabet: tuple[str, ...]
    size: int
    delta: dict[tuple[int, int], frozenset[int]]
    epsilon: dict[int, frozenset[int]]
    initial: frozenset[int]
    accepting: frozenset[int]

    @classmethod
    def from_dfa(cls, D: Dfa) -> "Nfa":
        delta = {(q, k): frozenset({p}) for q, row in enumerate(D.delta) for k, p in enumerate(row)}
        return cls(D.alphabet, D.size, delta, {}, frozenset({D.initial}), D.accepting)

    @classmethod
    def from_edges(cls, alphabet, size, edges, initial, accepting) -> "Nfa":
        """``edges`` are ``(q, symbol_or_None, p)`` triples; ``None`` is epsilon."""
        alphabet = tuple(alphabet)
        delta: dict[tuple[int, int], set[int]] = {}
        eps: dict[int, set[int]] = {}
        for q, sym, p in edges:
            if sym is None:
                eps.setdefault(q, set()).add(p)
            else:
                delta.setdefault((q, alphabet.index(sym)), set()).add(p)
        return cls(
            alphabet,
            size,
            {k: frozenset(v) for k, v in delta.items()},
            {k: frozenset(v) for k, v in eps.items()},
            frozenset(initial),
            frozenset(accepting),
        )

    def closure(self, states: Iterable[int]) -> frozenset[int]:
        seen = set(states)
        todo = list(seen)
        while todo:
            q = todo.pop()
            for p in self.epsilon.get(q, ()):
                if p not in seen:
                    seen.add(p)
                    todo.append(p)
        return frozenset(seen)

    def accepts(self, word: Sequence[str]) -> bool:
        if not word:
            return False
        current = self.closure(self.initial)
        for sym in word:
            k = self.alphabet.index(sym)
            step = set()
            for q in current:
                step |= self.delta.get((q, k), frozenset())
            current = self.closure(step)
        return bool(current & self.accepting)


def determinize(N: Nfa) -> Dfa:
    """Subset construction; states numbered in BFS order over the alphabet."""
    start = N.closure(N.initial)
    index = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        current = order[i]
        i += 1
        row = []
        for k in range(len(N.alphabet)):
            step = set()
            for q in current:
                step |= N.delta.get((q, k), frozenset())
            target = N.closure(step)
            if target not in index:
                index[target] = len(order)
                order.append(target)
            row.append(index[target])
        delta.append(tuple(row))
    accepting = frozenset(j for j, s in enumerate(order) if s & N.accepting)
    return Dfa(N.alphabet, tuple(delta), 0, accepting)


def _bfs_renumber(alphabet, delta, initial, accepting) -> Dfa:
    index = {initial: 0}
    order = [initial]
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        for p in delta[q]:
            if p not in index:
                index[p] = len(order)
                order.append(p)
    new_delta = tuple(tuple(index[p] for p in delta[q]) for q in order)
    return Dfa(alphabet, new_delta, 0, frozenset(index[q] for q in order if q in accepting))


def _moore_blocks(delta: Sequence[Sequence[int]], accepting: frozenset[int]) -> list[int]:
    n = len(delta)
    block = [1 if q in accepting else 0 for q in range(n)]
    while True:
        signature = {}
        new_block = []
        for q in range(n):
            key = (block[q], tuple(block[p] for p in delta[q]))
            new_block.append(signature.setdefault(key, len(signature)))
        if len(signature) == len(set(block)):
            return new_block
        block = new_block


def minimize(D: Dfa) -> Dfa:
    """Smallest complete Dfa for the language, canonically numbered.

    The initial state is first detached (fresh, non-accepting copy), the
    result is Moore-minimized, and the detached start is then folded into
    any state with identical successors, which is sound under ``A+``
    semantics.  Numbering is BFS from the initial state in alphabet order.
    """
    n = D.size
    # state n is the detached start
    delta = [list(r) for r in D.delta] + [list(D.delta[D.initial])]
    accepting = frozenset(D.accepting)
    reach = _reachable(delta, n)
    order = sorted(reach)
    pos = {q: i for i, q in enumerate(order)}
    sub = [[pos[p] for p in delta[q]] for q in order]
    sub_acc = frozenset(pos[q] for q in order if q in accepting)
    block = _moore_blocks(sub, sub_acc)
    m = max(block) + 1
    q_delta = [None] * m
    for q in range(len(order)):
        q_delta[block[q]] = tuple(block[p] for p in sub[q])
    q_acc = frozenset(block[q] for q in range(len(order)) if q in sub_acc)
    start = block[pos[n]]

    reach = _reachable(q_delta, start)
    entered = {p for q in reach for p in q_delta[q]}
    if start not in entered:
        twins = [q for q in range(m) if q != start and q_delta[q] == q_delta[start]]
        if twins:
            ranked = _bfs_order(q_delta, start)
            start = min(twins, key=ranked.__getitem__)
    return _bfs_renumber(D.alphabet, q_delta, start, q_acc)


def _reachable(delta, start) -> set[int]:
    seen = {start}
    todo = [start]
    while todo:
        q = todo.pop()
        for p in delta[q]:
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return seen


def _bfs_order(delta, start) -> dict[int, int]:
    index = {start: 0}
    todo = deque([start])
    while todo:
        q = todo.popleft()
        for p in delta[q]:
            if p not in index:
                index[p] = len(index)
                todo.append(p)
    return index


def _aligned(D1: Dfa, D2: Dfa) -> Dfa:
    """``D2`` with its columns permuted to follow ``D1``'s alphabet."""
    if D1.alphabet == D2.alphabet:
        return D2
    if set(D1.alphabet) != set(D2.alphabet):
        raise AlphabetMismatchError(f"alphabets differ: {D1.alphabet} vs {D2.alphabet}")
    perm = [D2.alphabet.index(s) for s in D1.alphabet]
    delta = tuple(tuple(row[k] for k in perm) for row in D2.delta)
    return Dfa(D1.alphabet, delta, D2.initial, D2.accepting)


def equivalent(D1: Dfa, D2: Dfa) -> bool:
    """Language equality on ``A+``, by search over pairs reached by nonempty words."""
    return counterexample(D1, D2) is None


def counterexample(D1: Dfa, D2: Dfa) -> Optional[Word]:
    D2 = _aligned(D1, D2)
    alphabet = D1.alphabet
    seen = {}
    todo = deque()
    for k, sym in enumerate(alphabet):
        pair = (D1.delta[D1.initial][k], D2.delta[D2.initial][k])
        if pair not in seen:
            seen[pair] = (sym,)
            todo.append(pair)
    while todo:
        pair = todo.popleft()
        w = seen[pair]
        if (pair[0] in D1.accepting) != (pair[1] in D2.accepting):
            return w
        for k, sym in enumerate(alphabet):
            nxt = (D1.delta[pair[0]][k], D2.delta[pair[1]][k])
            if nxt not in seen:
                seen[nxt] = w + (sym,)
                todo.append(nxt)
    return None


def is_empty(D: Dfa) -> bool:
    return shortest_word(D) is None


def shortest_word(D: Dfa) -> Optional[Word]:
    seen = {}
    todo = deque()
    for k, sym in enumerate(D.alphabet):
        p = D.delta[D.initial][k]
        if p not in seen:
            seen[p] = (sym,)
            todo.append(p)
    while todo:
        q = todo.popleft()
        if q in D.accepting:
            return seen[q]
        for k, sym in enumerate(D.alphabet):
            p = D.delta[q][k]
            if p not in seen:
                seen[p] = seen[q] + (sym,)
                todo.append(p)
    return None


_OPS = {
    "and": lambda a, b: a and b,
    "or": lambda a, b: a or b,
    "diff": lambda a, b: a and not b,
    "xor": lambda a, b: a != b,
}


def boolean_op(D1: Dfa, D2: Dfa, op: str) -> Dfa:
    """Product construction for ``op`` in ``and``, ``or``, ``diff``, ``xor``."""
    fn = _OPS[op]
    D2 = _aligned(D1, D2)
    start = (D1.initial, D2.initial)
    index = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        q1, q2 = order[i]
        i += 1
        row = []
        for k in range(len(D1.alphabet)):
            nxt = (D1.delta[q1][k], D2.delta[q2][k])
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        delta.append(tuple(row))
    accepting = frozenset(j for j, (q1, q2) in enumerate(order) if fn(q1 in D1.accepting, q2 in D2.accepting))
    return minimize(Dfa(D1.alphabet, tuple(delta), 0, accepting))


def intersection(D1: Dfa, D2: Dfa) -> Dfa:
    return boolean_op(D1, D2, "and")


def union(D1: Dfa, D2: Dfa) -> Dfa:
    return boolean_op(D1, D2, "or")


def difference(D1: Dfa, D2: Dfa) -> Dfa:
    return boolean_op(D1, D2, "diff")


def complement(D: Dfa) -> Dfa:
    """``A+`` minus the language."""
    return minimize(Dfa(D.alphabet, D.delta, D.initial, frozenset(range(D.size)) - D.accepting))


def universal(alphabet: Sequence[str]) -> Dfa:
    return Dfa(tuple(alphabet), (tuple(0 for _ in alphabet),), 0, frozenset({0}))


def empty_language(alphabet: Sequence[str]) -> Dfa:
    return Dfa(tuple(alphabet), (tuple(0 for _ in alphabet),), 0, frozenset())


def quotient(L: Dfa, u: Sequence[str], v: Sequence[str]) -> Dfa:
    """``{w in A+ | u w v in L}``; ``u`` and ``v`` may be empty."""
    start = L.run(u)
    accepting = frozenset(q for q in range(L.size) if L.run(v, q) in L.accepting)
    return minimize(Dfa(L.alphabet, L.delta, start, accepting))


def from_words(alphabet: Sequence[str], members: Iterable[Sequence[str]]) -> Dfa:
    """A Dfa accepting exactly the given finite set of nonempty words."""
    alphabet = tuple(alphabet)
    edges = []
    accepting = set()
    size = 1
    for w in members:
        if not w:
            continue
        q = 0
        for sym in w:
            edges.append((q, sym, size))
            q = size
            size += 1
        accepting.add(q)
    return minimize(determinize(Nfa.from_edges(alphabet, size, edges, {0}, accepting)))


# -- regular expressions -------------------------------------------------------


class _RegexParser:
    def __init__(self, pattern: str, alphabet: Sequence[str]):
        self.text = pattern
        self.alphabet = tuple(alphabet)
        self.names = sorted(self.alphabet, key=len, reverse=True)
        self.pos = 0
        self.edges: list[tuple[int, Optional[str], int]] = []
        self.size = 0

    def new_state(self) -> int:
        self.size += 1
        return self.size - 1

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> Optional[str]:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse(self) -> Nfa:
        if self.peek() is None:
            raise RegexSyntaxError("empty pattern", self.pos)
        start, end = self.union()
        if self.peek() is not None:
            raise RegexSyntaxError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return Nfa.from_edges(self.alphabet, self.size, self.edges, {start}, {end})

    def union(self) -> tuple[int, int]:
        branches = [self.concat()]
        while self.peek() == "|":
            self.pos += 1
            branches.append(self.concat())
        if len(branches) == 1:
            return branches[0]
        s, e = self.new_state(), self.new_state()
        for bs, be in branches:
            self.edges += [(s, None, bs), (be, None, e)]
        return s, e

    def concat(self) -> tuple[int, int]:
        first = self.repeat()
        s, e = first
        while True:
            c = self.peek()
            if c == ".":
                self.pos += 1
            elif c is None or c in "|)":
                break
            nxt = self.repeat()
            self.edges.append((e, None, nxt[0]))
            e = nxt[1]
        return s, e

    def repeat(self) -> tuple[int, int]:
        s, e = self.atom()
        while self.peek() in ("*", "+", "?"):
            op = self.text[self.pos]
            self.pos += 1
            ns, ne = self.new_state(), self.new_state()
            self.edges += [(ns, None, s), (e, None, ne)]
            if op in "*+":
                self.edges.append((e, None, s))
            if op in "*?":
                self.edges.append((ns, None, ne))
            s, e = ns, ne
        return s, e

    def atom(self) -> tuple[int, int]:
        c = self.peek()
        if c is None:
            raise RegexSyntaxError("unexpected end of pattern", self.pos)
        if c == "(":
            self.pos += 1
            inner = self.union()
            if self.peek() != ")":
                raise RegexSyntaxError("missing ')'", self.pos)
            self.pos += 1
            return inner
        if c == "'":
            close = self.text.find("'", self.pos + 1)
            if close < 0:
                raise RegexSyntaxError("unterminated quoted symbol", self.pos)
            name = self.text[self.pos + 1:close]
            if name not in self.alphabet:
                raise RegexSyntaxError(f"symbol {name!r} not in alphabet", self.pos)
            self.pos = close + 1
            return self.symbol(name)
        for name in self.names:
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                return self.symbol(name)
        raise RegexSyntaxError(f"unexpected {c!r}", self.pos)

    def symbol(self, name: str) -> tuple[int, int]:
        s, e = self.new_state(), self.new_state()
        self.edges.append((s, name, e))
        return s, e


def parse_regex(pattern: str, alphabet: Sequence[str]) -> Nfa:
    """Thompson automaton for ``pattern``; ``|``, concatenation, ``* + ?``."""
    return _RegexParser(pattern, make_alphabet(alphabet)).parse()


def regex(pattern: str, alphabet: Sequence[str]) -> Dfa:
    """Minimal Dfa of the nonempty words matched by ``pattern``."""
    return minimize(determinize(parse_regex(pattern, alphabet)))


# -- recognition by semigroups ---------------------------------------------------


@dataclass(frozen=True)
class RecognizingHom:
    """``A+ -> S`` given on letters, plus the accepting subset of ``S``."""

    alphabet: tuple[str, ...]
    target: object
    letter_map: tuple[int, ...]
    accepting: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "letter_map", tuple(self.letter_map))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        if len(self.letter_map) != len(self.alphabet):
            raise ValueError("letter_map must give one element per letter")
        n = self.target.order
        if any(not 0 <= v < n for v in self.letter_map) or any(not 0 <= v < n for v in self.accepting):
            raise ValueError("letter images and accepting elements must lie in the target")

    def image(self, word: Sequence[str]) -> int:
        if not word:
            raise ValueError("the empty word has no image in a semigroup")
        mul = self.target.mul
        acc = self.letter_map[self.alphabet.index(word[0])]
        for sym in word[1:]:
            acc = mul(acc, self.letter_map[self.alphabet.index(sym)])
        return acc

    def accepts(self, word: Sequence[str]) -> bool:
        return len(word) > 0 and self.image(word) in self.accepting

    def with_accepting(self, accepting: Iterable[int]) -> "RecognizingHom":
        return RecognizingHom(self.alphabet, self.target, self.letter_map, frozenset(accepting))


def recognize(eta: RecognizingHom) -> Dfa:
    """Right Cayley automaton: state 0 is the start, state ``s + 1`` is element ``s``."""
    S = eta.target
    n = S.order
    start = tuple(v + 1 for v in eta.letter_map)
    rows = [start]
    for s in range(n):
        rows.append(tuple(S.mul(s, v) + 1 for v in eta.letter_map))
    return Dfa(eta.alphabet, tuple(rows), 0, frozenset(s + 1 for s in eta.accepting))


def recognizes(eta: RecognizingHom, L: Dfa) -> bool:
    return equivalent(recognize(eta), L)


def transition_semigroup(D: Dfa, cap: int = SYNTACTIC_CAP) -> tuple[FiniteSemigroup, RecognizingHom]:
    """Semigroup of state transformations induced by nonempty words.

    Elements are numbered in BFS order from the letters and labeled with a
    shortest word realizing them.
    """
    n = D.size
    gens = [tuple(D.delta[q][k] for q in range(n)) for k in range(len(D.alphabet))]
    index: dict[tuple[int, ...], int] = {}
    elements: list[tuple[int, ...]] = []
    labels: list[Word] = []
    for k, g in enumerate(gens):
        if g not in index:
            index[g] = len(elements)
            elements.append(g)
            labels.append((D.alphabet[k],))
    i = 0
    while i < len(elements):
        e = elements[i]
        for k, g in enumerate(gens):
            t = tuple(g[e[q]] for q in range(n))
            if t not in index:
                if len(elements) >= cap:
                    raise SizeLimitError(f"transition semigroup exceeds {cap} elements")
                index[t] = len(elements)
                elements.append(t)
                labels.append(labels[i] + (D.alphabet[k],))
        i += 1
    table = tuple(
        tuple(index[tuple(y[x[q]] for q in range(n))] for y in elements) for x in elements
    )
    S = FiniteSemigroup(table, tuple(join_word(w) for w in labels))
    letter_map = tuple(index[g] for g in gens)
    accepting = frozenset(j for j, e in enumerate(elements) if e[D.initial] in D.accepting)
    return S, RecognizingHom(D.alphabet, S, letter_map, accepting)


def syntactic_semigroup(L: Dfa, cap: int = SYNTACTIC_CAP) -> tuple[FiniteSemigroup, RecognizingHom]:
    """Transition semigroup of the minimal automaton, with the recognizing map.

    The result is checked to recognize ``L`` exactly.
    """
    S, eta = transition_semigroup(minimize(L), cap)
    if not recognizes(eta, L):
        raise AssertionError("syntactic morphism fails to recognize its language")
    return S, eta


# -- free semigroup homomorphisms ---------------------------------------------------


@dataclass(frozen=True)
class FreeHom:
    """``B+ -> A+`` given by a nonempty image word for every letter of ``B``."""

    source: tuple[str, ...]
    target: tuple[str, ...]
    images: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))
        object.__setattr__(self, "images", tuple(tuple(w) for w in self.images))
        if len(self.images) != len(self.source):
            raise ValueError("one image per source letter is required")
        for b, w in zip(self.source, self.images):
            if not w:
                raise ValueError(f"image of {b!r} is empty")
            if any(a not in self.target for a in w):
                raise ValueError(f"image of {b!r} leaves the target alphabet")

    @classmethod
    def from_dict(cls, mapping: dict[str, Sequence[str]], target: Sequence[str]) -> "FreeHom":
        """``{"x": ("a",), "y": ("a", "b")}``; a bare string is one symbol."""
        images = [(w,) if isinstance(w, str) else tuple(w) for w in mapping.values()]
        return cls(tuple(mapping), tuple(target), tuple(images))

    @property
    def is_lp(self) -> bool:
        return all(len(w) == 1 for w in self.images)

    def image(self, b: str) -> Word:
        return self.images[self.source.index(b)]

    def apply(self, word: Sequence[str]) -> Word:
        out: list[str] = []
        for b in word:
            out.extend(self.image(b))
        return tuple(out)

    def letter_fiber(self, a: str) -> tuple[str, ...]:
        """Source letters mapped to the single letter ``a``."""
        return tuple(b for b, w in zip(self.source, self.images) if w == (a,))


def lp_check(f: FreeHom) -> bool:
    return f.is_lp


def free_inverse_on_words(f: FreeHom, w: Sequence[str]) -> frozenset[Word]:
    """``{u in B+ | f(u) = w}``; finite because images are nonempty."""
    w = tuple(w)
    if not w:
        return frozenset()
    if f.is_lp:
        return frozenset(itertools.product(*(f.letter_fiber(a) for a in w)))
    memo: dict[int, list[Word]] = {len(w): [()]}

    def tails(i: int) -> list[Word]:
        if i in memo:
            return memo[i]
        out = []
        for b, img in zip(f.source, f.images):
            if w[i:i + len(img)] == img:
                out.extend((b,) + rest for rest in tails(i + len(img)))
        memo[i] = out
        return out

    return frozenset(tails(0))


def preimage_is_multiplicative(f: FreeHom, w1: Sequence[str], w2: Sequence[str]) -> bool:
    """Does ``f^-1(w1 w2) == f^-1(w1) . f^-1(w2)`` hold?"""
    whole = free_inverse_on_words(f, tuple(w1) + tuple(w2))
    parts = {u1 + u2 for u1 in free_inverse_on_words(f, w1) for u2 in free_inverse_on_words(f, w2)}
    return whole == parts


def forward_image_lp(f: FreeHom, L: Dfa) -> Dfa:
    """Minimal Dfa of ``f[L]`` for a letter-to-letter ``f``."""
    if not f.is_lp:
        raise ValueError("forward images are only computed along lp-morphisms")
    if set(L.alphabet) != set(f.source):
        raise AlphabetMismatchError(f"language over {L.alphabet}, morphism from {f.source}")
    edges = []
    for q, row in enumerate(L.delta):
        for k, p in enumerate(row):
            edges.append((q, f.image(L.alphabet[k])[0], p))
    N = Nfa.from_edges(f.target, L.size, edges, {L.initial}, L.accepting)
    return minimize(determinize(N))


def inverse_image_hom(h: FreeHom, L: Dfa) -> Dfa:
    """Minimal Dfa of ``h^-1(L)`` over the source alphabet of ``h``."""
    if not set(h.target) <= set(L.alphabet):
        raise AlphabetMismatchError(f"morphism into {h.target}, language over {L.alphabet}")
    delta = tuple(tuple(L.run(img, q) for img in h.images) for q in range(L.size))
    return minimize(Dfa(h.source, delta, L.initial, L.accepting))


def power_recognizer(f: FreeHom, g: RecognizingHom, cap: int = DEFAULT_ELEMENT_CAP) -> RecognizingHom:
    """``a -> g[f^-1(a)]`` into the generated power semigroup of ``g.target``.

    The accepting family is every materialized subset meeting ``g.accepting``,
    so the recognized language is ``f[L]`` for ``L`` the language of ``g``.
    """
    if not f.is_lp:
        raise ValueError("power recognizers need an lp-morphism")
    if set(g.alphabet) != set(f.source):
        raise AlphabetMismatchError(f"recognizer over {g.alphabet}, morphism from {f.source}")
    S = g.target
    masks = []
    for a in f.target:
        masks.append(mask_of(g.letter_map[g.alphabet.index(b)] for b in f.letter_fiber(a)))
    P = generated_power(S, masks, cap)
    letter_map = tuple(P.index(m) for m in masks)
    accepting = diamond_set(P, mask_of(g.accepting))
    return RecognizingHom(f.target, P, letter_map, accepting)


def recognizer_from_masks(alphabet: Sequence[str], base, masks: Sequence[int], accepting_masks: Iterable[int] = ()) -> RecognizingHom:
    """Letter-wise subsets of ``base`` as a recognizer into their generated power."""
    P = generated_power(base, masks)
    return RecognizingHom(tuple(alphabet), P, tuple(P.index(m) for m in masks), frozenset(P.index(m) for m in accepting_masks))


def power_semigroup_of(eta: RecognizingHom) -> PowerSemigroup:
    if not isinstance(eta.target, PowerSemigroup):
        raise TypeError("recognizer does not map into a power semigroup")
    return eta.target
