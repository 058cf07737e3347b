"""Monadic second-order logic on words, compiled to automata.

Models with ``N`` free set variables are words over ``A x 2^N``; a letter
``(a, v)`` is written ``a|v`` with ``v`` as ``N`` bits, track 0 leftmost.
With ``N = 0`` the symbols are the plain letters of ``A``.  Existential
quantification is the forward image along the projection that forgets the
bits.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .errors import FormulaSyntaxError, TrackLimitError, UnboundVariableError
from .language import (
    Dfa,
    FreeHom,
    RecognizingHom,
    boolean_op,
    complement,
    empty_language,
    equivalent,
    forward_image_lp,
    inverse_image_hom,
    intersection,
    minimize,
    recognize,
    syntactic_semigroup,
    universal,
)
from .powerset import PowerSemigroup, bits, power
from .semigroup import DivisionWitness, divides, index_and_period, is_aperiodic

DEFAULT_TRACK_LIMIT = 8


# -- extended alphabets ------------------------------------------------------------


@dataclass(frozen=True)
class ExtendedAlphabet:
    base: tuple[str, ...]
    n: int

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(self.symbol(a, v) for a in self.base for v in range(1 << self.n))

    def symbol(self, a: str, v: int) -> str:
        if self.n == 0:
            return a
        return f"{a}|{v:0{self.n}b}"

    def split(self, symbol: str) -> tuple[str, int]:
        if self.n == 0:
            return symbol, 0
        a, _, v = symbol.rpartition("|")
        return a, int(v, 2)

    def bit(self, v: int, track: int) -> int:
        return (v >> (self.n - 1 - track)) & 1


def parse_extended(alphabet: Sequence[str]) -> ExtendedAlphabet:
    """Recover ``(A, N)`` from symbols of the form ``a|bits``."""
    base: list[str] = []
    n = None
    for sym in alphabet:
        if "|" in sym:
            a, _, v = sym.rpartition("|")
            if not v or set(v) - {"0", "1"}:
                raise ValueError(f"bad extended symbol {sym!r}")
            width = len(v)
        else:
            a, width = sym, 0
        if n is None:
            n = width
        elif n != width:
            raise ValueError("extended symbols disagree on the number of tracks")
        if a not in base:
            base.append(a)
    ext = ExtendedAlphabet(tuple(base), n or 0)
    if set(ext.symbols) != set(alphabet):
        raise ValueError("alphabet is not a full A x 2^N")
    return ext


def projection(ext: ExtendedAlphabet, target: Optional[Sequence[str]] = None) -> FreeHom:
    """The lp-morphism ``a|v -> a`` onto ``target`` (default: the base)."""
    target = tuple(target) if target is not None else ext.base
    return FreeHom(ext.symbols, target, tuple((ext.split(s)[0],) for s in ext.symbols))


def project(L: Dfa, n: Optional[int] = None, target: Optional[Sequence[str]] = None) -> Dfa:
    """Existential quantification of all ``N`` tracks: ``pi_N[L]``."""
    ext = parse_extended(L.alphabet)
    if n is not None and n != ext.n:
        raise ValueError(f"language has {ext.n} tracks, not {n}")
    return forward_image_lp(projection(ext, target), L)


def encode(word: Sequence[str], *sets: Iterable[int]) -> tuple[str, ...]:
    """Word over ``A x 2^N`` for ``word`` with the given position sets."""
    ext = ExtendedAlphabet(tuple(dict.fromkeys(word)), len(sets))
    members = [set(s) for s in sets]
    out = []
    for i, a in enumerate(word):
        v = 0
        for k, m in enumerate(members):
            if i in m:
                v |= 1 << (ext.n - 1 - k)
        out.append(ext.symbol(a, v))
    return tuple(out)


# -- formulas ---------------------------------------------------------------------


class Formula:
    pass


@dataclass(frozen=True)
class Const(Formula):
    value: bool


@dataclass(frozen=True)
class Letter(Formula):
    letter: str
    var: str


@dataclass(frozen=True)
class Less(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Succ(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Member(Formula):
    set_var: str
    var: str


@dataclass(frozen=True)
class First(Formula):
    var: str


@dataclass(frozen=True)
class Last(Formula):
    var: str


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class Binary(Formula):
    op: str  # one of & | -> <->
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Quantifier(Formula):
    kind: str  # E, A, E2, A2
    var: str
    body: Formula

    @property
    def second_order(self) -> bool:
        return self.kind.endswith("2")


def free_variables(phi: Formula) -> dict[str, int]:
    """Free variables in order of first occurrence, mapped to their order (1 or 2)."""
    out: dict[str, int] = {}

    def walk(node: Formula, bound: frozenset[str]):
        if isinstance(node, (Letter, First, Last)):
            if node.var not in bound:
                out.setdefault(node.var, 1)
        elif isinstance(node, (Less, Succ)):
            for v in (node.left, node.right):
                if v not in bound:
                    out.setdefault(v, 1)
        elif isinstance(node, Member):
            if node.set_var not in bound:
                out.setdefault(node.set_var, 2)
            if node.var not in bound:
                out.setdefault(node.var, 1)
        elif isinstance(node, Not):
            walk(node.body, bound)
        elif isinstance(node, Binary):
            walk(node.left, bound)
            walk(node.right, bound)
        elif isinstance(node, Quantifier):
            walk(node.body, bound | {node.var})

    walk(phi, frozenset())
    return out


_TOKEN = re.compile(r"\s*(<->|->|[()&|!,<~]|[A-Za-z_][A-Za-z0-9_']*|'[^']*')")
_QUANTIFIERS = {"E", "A", "E2", "A2"}


class _FormulaParser:
    def __init__(self, text: str, alphabet: Sequence[str]):
        self.text = text
        self.alphabet = set(alphabet)
        self.tokens: list[tuple[str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise FormulaSyntaxError(f"unexpected {text[pos:].strip()[:1]!r}", pos)
            self.tokens.append((m.group(1), m.start(1)))
            pos = m.end()
        self.i = 0
        self.counter = 0
        self.scope: list[tuple[str, str, int]] = []  # (surface name, unique name, order)

    def peek(self, offset: int = 0) -> Optional[str]:
        j = self.i + offset
        return self.tokens[j][0] if j < len(self.tokens) else None

    def where(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def take(self, expected: Optional[str] = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            want = repr(expected) if expected else "a token"
            raise FormulaSyntaxError(f"expected {want}", self.where())
        self.i += 1
        return tok

    def parse(self) -> Formula:
        phi = self.iff()
        if self.peek() is not None:
            raise FormulaSyntaxError(f"unexpected {self.peek()!r}", self.where())
        return phi

    def iff(self) -> Formula:
        left = self.implies()
        while self.peek() == "<->":
            self.take()
            left = Binary("<->", left, self.implies())
        return left

    def implies(self) -> Formula:
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return Binary("->", left, self.implies())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.peek() == "|":
            self.take()
            left = Binary("|", left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.peek() == "&":
            self.take()
            left = Binary("&", left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok in ("!", "~"):
            self.take()
            return Not(self.unary())
        nxt = self.peek(1)
        if tok in _QUANTIFIERS and nxt is not None and _is_ident(nxt):
            self.take()
            name = self.take()
            order = 2 if tok.endswith("2") else 1
            self.counter += 1
            unique = f"{name}#{self.counter}"
            self.scope.append((name, unique, order))
            body = self.iff()
            self.scope.pop()
            return Quantifier(tok, unique, body)
        return self.atom()

    def resolve(self, name: str, order: int) -> str:
        for surface, unique, o in reversed(self.scope):
            if surface == name and o == order:
                return unique
        return name

    def bound_as(self, name: str, order: int) -> bool:
        return any(s == name and o == order for s, _, o in self.scope)

    def atom(self) -> Formula:
        start = self.where()
        tok = self.take()
        if tok == "(":
            phi = self.iff()
            self.take(")")
            return phi
        if tok in ("true", "false"):
            return Const(tok == "true")
        name = tok.strip("'")
        if not _is_ident(tok) and not tok.startswith("'"):
            raise FormulaSyntaxError(f"unexpected {tok!r}", start)
        if self.peek() == "<":
            self.take()
            other = self.take()
            return Less(self.resolve(name, 1), self.resolve(other, 1))
        self.take("(")
        args = [self.take()]
        while self.peek() == ",":
            self.take()
            args.append(self.take())
        self.take(")")
        if not all(_is_ident(a) for a in args):
            raise FormulaSyntaxError("arguments must be variable names", start)
        args = [self.resolve(a, 1) for a in args]
        if name in ("first", "last") and len(args) == 1:
            return First(args[0]) if name == "first" else Last(args[0])
        if name == "S" and len(args) == 2:
            return Succ(args[0], args[1])
        if len(args) != 1:
            raise FormulaSyntaxError(f"{name} takes one argument", start)
        if self.bound_as(name, 2):
            return Member(self.resolve(name, 2), args[0])
        if name in self.alphabet:
            return Letter(name, args[0])
        return Member(name, args[0])


def _is_ident(tok: str) -> bool:
    return bool(re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", tok)) and tok not in ("true", "false")


def parse_formula(text: str, alphabet: Sequence[str]) -> Formula:
    """Parse the surface syntax.

    Quantifiers ``E x``, ``A x``, ``E2 X``, ``A2 X`` scope as far right as
    possible.  ``name(x)`` is a letter predicate when ``name`` is a letter
    not bound as a set variable, and set membership otherwise.  Bound
    variables are renamed apart (``x#1``, ...).
    """
    return _FormulaParser(text, alphabet).parse()


# -- compilation --------------------------------------------------------------------


@dataclass(frozen=True)
class _Compiled:
    dfa: Dfa
    vars: tuple[str, ...]


class _Compiler:
    def __init__(self, alphabet: Sequence[str], orders: dict[str, int], rank: dict[str, int], limit: int):
        self.alphabet = tuple(alphabet)
        self.orders = orders
        self.rank = rank
        self.limit = limit
        self._singletons: dict[tuple[tuple[str, ...], str], Dfa] = {}

    def ext(self, k: int) -> ExtendedAlphabet:
        return ExtendedAlphabet(self.alphabet, k)

    def build(self, vars: tuple[str, ...], n_states: int, accept: Iterable[int], step: Callable) -> _Compiled:
        """Dfa from ``step(state, letter, bit_of) -> state``; ``bit_of(var)`` reads a track."""
        if len(vars) > self.limit:
            raise TrackLimitError(f"{len(vars)} tracks exceed the limit {self.limit}")
        ext = self.ext(len(vars))
        rows = []
        for q in range(n_states):
            row = []
            for a in self.alphabet:
                for v in range(1 << ext.n):
                    bit_of = lambda name, v=v: ext.bit(v, vars.index(name))
                    row.append(step(q, a, bit_of))
            rows.append(tuple(row))
        return _Compiled(minimize(Dfa(ext.symbols, tuple(rows), 0, frozenset(accept))), vars)

    def singleton(self, vars: tuple[str, ...], x: str) -> Dfa:
        key = (vars, x)
        if key not in self._singletons:
            dead = 2

            def step(q, a, bit):
                if q == dead:
                    return dead
                if bit(x):
                    return 1 if q == 0 else dead
                return q

            self._singletons[key] = self.build(vars, 3, {1}, step).dfa
        return self._singletons[key]

    def fix(self, c: _Compiled) -> _Compiled:
        """Restrict first-order tracks to exactly one marked position."""
        dfa = c.dfa
        for v in c.vars:
            if self.orders[v] == 1:
                dfa = intersection(dfa, self.singleton(c.vars, v))
        return _Compiled(dfa, c.vars)

    def widen(self, c: _Compiled, vars: tuple[str, ...]) -> _Compiled:
        """Re-express ``c`` over more tracks (the new tracks are unconstrained)."""
        if c.vars == vars:
            return c
        old, new = self.ext(len(c.vars)), self.ext(len(vars))
        images = []
        for sym in new.symbols:
            a, v = new.split(sym)
            w = 0
            for k, name in enumerate(c.vars):
                w |= new.bit(v, vars.index(name)) << (old.n - 1 - k)
            images.append((old.symbol(a, w),))
        h = FreeHom(new.symbols, old.symbols, tuple(images))
        return _Compiled(inverse_image_hom(h, c.dfa), vars)

    def merge(self, *groups: Iterable[str]) -> tuple[str, ...]:
        names = {v for g in groups for v in g}
        return tuple(sorted(names, key=self.rank.__getitem__))

    def compile(self, phi: Formula) -> _Compiled:
        if isinstance(phi, Const):
            dfa = universal(self.alphabet) if phi.value else empty_language(self.alphabet)
            return _Compiled(dfa, ())
        if isinstance(phi, Letter):
            x = phi.var
            core = self.build((x,), 2, {0}, lambda q, a, bit: 1 if q == 1 or (bit(x) and a != phi.letter) else 0)
            return self.fix(core)
        if isinstance(phi, Member):
            X, x = phi.set_var, phi.var
            vars = self.merge((X, x))
            core = self.build(vars, 2, {0}, lambda q, a, bit: 1 if q == 1 or (bit(x) and not bit(X)) else 0)
            return self.fix(core)
        if isinstance(phi, Less):
            return self.fix(self.build(self.merge((phi.left, phi.right)), 4, {2}, _less_step(phi.left, phi.right)))
        if isinstance(phi, Succ):
            return self.fix(self.build(self.merge((phi.left, phi.right)), 4, {2}, _succ_step(phi.left, phi.right)))
        if isinstance(phi, First):
            return self.fix(self.build((phi.var,), 4, {2}, _first_step(phi.var)))
        if isinstance(phi, Last):
            return self.fix(self.build((phi.var,), 3, {1}, _last_step(phi.var)))
        if isinstance(phi, Not):
            inner = self.compile(phi.body)
            return self.fix(_Compiled(complement(inner.dfa), inner.vars))
        if isinstance(phi, Binary):
            left, right = self.compile(phi.left), self.compile(phi.right)
            vars = self.merge(left.vars, right.vars)
            if len(vars) > self.limit:
                raise TrackLimitError(f"{len(vars)} tracks exceed the limit {self.limit}")
            left, right = self.widen(left, vars), self.widen(right, vars)
            op = {"&": "and", "|": "or", "->": "implies", "<->": "iff"}[phi.op]
            if op == "implies":
                dfa = boolean_op(complement(left.dfa), right.dfa, "or")
            elif op == "iff":
                dfa = complement(boolean_op(left.dfa, right.dfa, "xor"))
            else:
                dfa = boolean_op(left.dfa, right.dfa, op)
            return self.fix(_Compiled(dfa, vars))
        if isinstance(phi, Quantifier):
            if phi.kind in ("A", "A2"):
                dual = Quantifier("E" + phi.kind[1:], phi.var, Not(phi.body))
                return self.compile(Not(dual))
            inner = self.compile(phi.body)
            if phi.var not in inner.vars:
                # words are nonempty, so a vacuous witness always exists
                return inner
            return self.fix(self.drop(inner, phi.var))
        raise TypeError(f"unknown formula node {phi!r}")

    def drop(self, c: _Compiled, var: str) -> _Compiled:
        keep = tuple(v for v in c.vars if v != var)
        old, new = self.ext(len(c.vars)), self.ext(len(keep))
        images = []
        for sym in old.symbols:
            a, v = old.split(sym)
            w = 0
            for k, name in enumerate(keep):
                w |= old.bit(v, c.vars.index(name)) << (new.n - 1 - k)
            images.append((new.symbol(a, w),))
        f = FreeHom(old.symbols, new.symbols, tuple(images))
        return _Compiled(forward_image_lp(f, c.dfa), keep)


def _less_step(x: str, y: str):
    dead = 3

    def step(q, a, bit):
        bx, by = bit(x), bit(y)
        if q == 0:
            return {(0, 0): 0, (1, 0): 1}.get((bx, by), dead)
        if q == 1:
            return {(0, 0): 1, (0, 1): 2}.get((bx, by), dead)
        if q == 2:
            return 2 if (bx, by) == (0, 0) else dead
        return dead

    return step


def _succ_step(x: str, y: str):
    dead = 3

    def step(q, a, bit):
        bx, by = bit(x), bit(y)
        if q == 0:
            return {(0, 0): 0, (1, 0): 1}.get((bx, by), dead)
        if q == 1:
            return 2 if (bx, by) == (0, 1) else dead
        if q == 2:
            return 2 if (bx, by) == (0, 0) else dead
        return dead

    return step


def _first_step(x: str):
    # 0: nothing read, 1: first position unmarked, 2: first position marked
    dead = 3

    def step(q, a, bit):
        if q == 0:
            return 2 if bit(x) else 1
        if q in (1, 2) and not bit(x):
            return q
        return dead

    return step


def _last_step(x: str):
    # 0: unmarked so far, 1: last read position marked
    dead = 2

    def step(q, a, bit):
        if q == 0:
            return 1 if bit(x) else 0
        return dead

    return step


def compile_formula(
    phi: Formula | str,
    alphabet: Sequence[str],
    env: Optional[Sequence[str]] = None,
    track_limit: int = DEFAULT_TRACK_LIMIT,
) -> Dfa:
    """Minimal Dfa for ``L_phi`` over ``alphabet x 2^|env|``.

    ``env`` lists the free variables, track 0 first; by default they are
    taken in order of first occurrence.  First-order variables are tracks
    with exactly one marked position.
    """
    if isinstance(phi, str):
        phi = parse_formula(phi, alphabet)
    free = free_variables(phi)
    if env is None:
        env = tuple(free)
    else:
        env = tuple(env)
        missing = [v for v in free if v not in env]
        if missing:
            raise UnboundVariableError(f"free variables {missing} are not in the environment")
    orders = _variable_orders(phi)
    for v in env:
        orders.setdefault(v, 2)
    rank = {v: i for i, v in enumerate(env)}
    for v in orders:
        rank.setdefault(v, len(rank))
    if len(env) > track_limit:
        raise TrackLimitError(f"{len(env)} tracks exceed the limit {track_limit}")
    c = _Compiler(alphabet, orders, rank, track_limit)
    result = c.fix(c.widen(c.compile(phi), env))
    return result.dfa


def _variable_orders(phi: Formula) -> dict[str, int]:
    out: dict[str, int] = {}

    def walk(node):
        if isinstance(node, (Letter, First, Last)):
            out.setdefault(node.var, 1)
        elif isinstance(node, (Less, Succ)):
            out.setdefault(node.left, 1)
            out.setdefault(node.right, 1)
        elif isinstance(node, Member):
            out.setdefault(node.set_var, 2)
            out.setdefault(node.var, 1)
        elif isinstance(node, Not):
            walk(node.body)
        elif isinstance(node, Binary):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Quantifier):
            out[node.var] = 2 if node.second_order else 1
            walk(node.body)

    walk(phi)
    return out


# -- the converse construction -------------------------------------------------------


@dataclass(frozen=True)
class QuantifiedTerm:
    """``L`` over ``alphabet x 2^n``, recognized by ``recognizer`` into the base semigroup."""

    language: Dfa
    alphabet: tuple[str, ...]
    n: int
    element: int
    recognizer: RecognizingHom


@dataclass(frozen=True)
class QuantifiedFamily:
    """A union of conjunctions of signed existential quantifications.

    ``disjuncts[i]`` is a tuple of ``(positive, term_index)``; a term
    denotes ``terms[k].language`` projected onto ``alphabet``.
    """

    alphabet: tuple[str, ...]
    terms: tuple[QuantifiedTerm, ...]
    disjuncts: tuple[tuple[tuple[bool, int], ...], ...]
    _projected: dict = field(default_factory=dict, compare=False, repr=False)

    def projected(self, k: int) -> Dfa:
        if k not in self._projected:
            term = self.terms[k]
            ext = ExtendedAlphabet(term.alphabet, term.n)
            self._projected[k] = forward_image_lp(projection(ext, self.alphabet), term.language)
        return self._projected[k]

    def denotation(self) -> Dfa:
        used = sorted({k for d in self.disjuncts for _, k in d})
        dfas = [self.projected(k) for k in used]
        slot = {k: i for i, k in enumerate(used)}

        def accept(member: tuple[bool, ...]) -> bool:
            return any(all(member[slot[k]] == pos for pos, k in d) for d in self.disjuncts)

        return combine(self.alphabet, dfas, accept)

    def single_language(self) -> Optional[QuantifiedTerm]:
        """One language ``L`` with denotation ``L`` quantified, when the family
        is a union of positive terms over a common extended alphabet."""
        if any(len(d) != 1 or not d[0][0] for d in self.disjuncts):
            return None
        ks = [d[0][1] for d in self.disjuncts]
        if not ks:
            if not self.terms:
                return None
            t = self.terms[0]
            return QuantifiedTerm(empty_language(t.language.alphabet), t.alphabet, t.n, -1, t.recognizer.with_accepting(()))
        first = self.terms[ks[0]]
        lang = first.language
        for k in ks[1:]:
            lang = boolean_op(lang, self.terms[k].language, "or")
        accepting = frozenset(self.terms[k].element for k in ks)
        return QuantifiedTerm(lang, first.alphabet, first.n, -1, first.recognizer.with_accepting(accepting))


def combine(alphabet: Sequence[str], dfas: Sequence[Dfa], accept: Callable[[tuple[bool, ...]], bool]) -> Dfa:
    """Product of several Dfas accepting where ``accept(memberships)`` holds."""
    alphabet = tuple(alphabet)
    aligned = []
    for D in dfas:
        perm = [D.alphabet.index(s) for s in alphabet]
        aligned.append((tuple(tuple(row[k] for k in perm) for row in D.delta), D.initial, D.accepting))
    start = tuple(init for _, init, _ in aligned)
    index = {start: 0}
    order = [start]
    rows = []
    i = 0
    while i < len(order):
        state = order[i]
        i += 1
        row = []
        for k in range(len(alphabet)):
            nxt = tuple(delta[q][k] for (delta, _, _), q in zip(aligned, state))
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        rows.append(tuple(row))
    accepting = frozenset(
        j for j, state in enumerate(order) if accept(tuple(q in acc for (_, _, acc), q in zip(aligned, state)))
    )
    return minimize(Dfa(alphabet, tuple(rows), 0, accepting))


@dataclass(frozen=True)
class ConverseBasis:
    """Per-element quantified languages ``K_s`` for a recognizer into a power.

    ``K_s`` is the projection of ``terms[s].language`` and consists of the
    words ``w`` with ``s in h(w)``.
    """

    alphabet: tuple[str, ...]
    sub_alphabet: tuple[str, ...]
    n: int
    terms: tuple[QuantifiedTerm, ...]
    cache: dict = field(default_factory=dict, compare=False, repr=False)


def converse_basis(h: RecognizingHom) -> ConverseBasis:
    P = h.target
    if not isinstance(P, PowerSemigroup):
        raise TypeError("exists_converse needs a recognizer into a power semigroup")
    S = P.base
    fibers = {a: tuple(bits(P.mask(h.letter_map[k]))) for k, a in enumerate(h.alphabet)}
    sub = tuple(a for a in h.alphabet if fibers[a])
    widest = max((len(fibers[a]) for a in sub), default=1)
    n = max(1, math.ceil(math.log2(widest))) if widest > 1 else 1
    ext = ExtendedAlphabet(sub, n)
    symbols = ext.symbols
    letter_map = []
    for sym in symbols:
        a, v = ext.split(sym)
        fiber = fibers[a]
        letter_map.append(fiber[min(v, len(fiber) - 1)])
    terms = []
    for s in range(S.order):
        g = RecognizingHom(symbols, S, tuple(letter_map), frozenset({s}))
        terms.append(QuantifiedTerm(minimize(recognize(g)), sub, n, s, g))
    return ConverseBasis(h.alphabet, sub, n, tuple(terms))


def exists_converse(
    h: RecognizingHom,
    accepting: Optional[Iterable[int]] = None,
    *,
    basis: Optional[ConverseBasis] = None,
    simplify: bool = False,
) -> QuantifiedFamily:
    """Boolean combination of quantified ``S``-recognizable languages equal
    to the language ``h`` recognizes with ``accepting`` (default
    ``h.accepting``).

    Each accepted subset ``P`` contributes the conjunction of ``K_s`` for
    ``s in P`` and of the complements of ``K_s`` for ``s not in P``.  With
    ``simplify``, literals whose removal leaves a conjunction's language
    unchanged are dropped greedily, negative ones first, each in element
    order.
    """
    if basis is None:
        basis = converse_basis(h)
    P = h.target
    C = sorted(h.accepting if accepting is None else set(accepting))
    disjuncts = []
    for c in C:
        mask = P.mask(c)
        disjuncts.append(tuple(((mask >> s) & 1 == 1, s) for s in range(P.base.order)))
    family = QuantifiedFamily(h.alphabet, basis.terms, tuple(disjuncts), basis.cache)
    if simplify:
        family = _simplify(family)
    return family


def _simplify(family: QuantifiedFamily) -> QuantifiedFamily:
    cache = family._projected
    disjuncts = []
    for d in family.disjuncts:
        current = list(d)
        target = QuantifiedFamily(family.alphabet, family.terms, (tuple(current),), cache).denotation()
        for lit in sorted(d, key=lambda x: (x[0], x[1])):
            if len(current) == 1:
                break
            trial = [x for x in current if x != lit]
            cand = QuantifiedFamily(family.alphabet, family.terms, (tuple(trial),), cache).denotation()
            if equivalent(cand, target):
                current = trial
        disjuncts.append(tuple(current))
    return QuantifiedFamily(family.alphabet, family.terms, tuple(disjuncts), cache)


# -- divisors of powers of aperiodic semigroups ----------------------------------------


@dataclass(frozen=True)
class CorollaryWitness:
    catalog_index: int
    language: Dfa
    semigroup: object
    recognizer: RecognizingHom
    periods: tuple[tuple[int, int], ...]
    power: PowerSemigroup
    division: DivisionWitness


def corollary_witness(S, catalog: Sequence[Dfa], max_gens: int = 1) -> Optional[CorollaryWitness]:
    """First catalog language whose syntactic semigroup ``T`` is aperiodic and
    whose full power ``P(T)`` has ``S`` as a divisor within the bound."""
    for i, L in enumerate(catalog):
        T, eta = syntactic_semigroup(L)
        if not is_aperiodic(T):
            continue
        P = power(T)
        w = divides(S, P, max_gens)
        if w is not None:
            periods = tuple(index_and_period(T, x) for x in range(T.order))
            return CorollaryWitness(i, L, T, eta, periods, P, w)
    return None
