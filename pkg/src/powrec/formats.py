"""Text formats for semigroups, automata, morphisms and recognizers.

Every ``dump_*`` output re-parses with the matching ``parse_*`` to an equal
value.  Lines starting with ``#`` and blank lines are ignored everywhere.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import FormatError
from .language import Dfa, FreeHom, Nfa, RecognizingHom
from .powerset import PowerSemigroup, generated_power, parse_subset, subset_literal
from .semigroup import FiniteSemigroup, validate
from .stone import BaHomomorphism, FiniteBooleanAlgebra


def _lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((no, line))
    return out


def _int(token: str, no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"line {no}: expected an integer, got {token!r}") from None


def read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


# -- .sgp ---------------------------------------------------------------------------


def parse_sgp(text: str) -> FiniteSemigroup:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty semigroup file")
    no, head = lines[0]
    n = _int(head, no)
    if n < 1:
        raise FormatError(f"line {no}: a semigroup needs at least one element")
    rows, labels = [], None
    for no, line in lines[1:]:
        if line.startswith("labels"):
            labels = line.split()[1:]
            continue
        rows.append([_int(tok, no) for tok in line.split()])
    if len(rows) != n:
        raise FormatError(f"expected {n} table rows, found {len(rows)}")
    return validate(rows, labels)


def dump_sgp(S) -> str:
    n = S.order
    out = [str(n)]
    for x in range(n):
        out.append(" ".join(str(S.mul(x, y)) for y in range(n)))
    labels = [S.label(x) for x in range(n)]
    if labels != [str(x) for x in range(n)]:
        out.append("labels " + " ".join(labels))
    return "\n".join(out) + "\n"


# -- .dfa / .nfa ----------------------------------------------------------------------


def _automaton_header(text: str) -> tuple[dict, list[tuple[int, list[str]]]]:
    head: dict = {}
    trans = []
    for no, line in _lines(text):
        key, *rest = line.split()
        if key == "states":
            head["states"] = _int(rest[0], no) if rest else None
        elif key == "alphabet":
            head["alphabet"] = tuple(rest)
        elif key == "initial":
            head["initial"] = [_int(t, no) for t in rest]
        elif key == "accept":
            head["accept"] = [_int(t, no) for t in rest]
        elif key in ("trans", "eps"):
            trans.append((no, [key] + rest))
        else:
            raise FormatError(f"line {no}: unknown directive {key!r}")
    for key in ("states", "alphabet", "initial"):
        if key not in head:
            raise FormatError(f"missing {key!r} line")
    head.setdefault("accept", [])
    return head, trans


def parse_dfa(text: str) -> Dfa:
    head, trans = _automaton_header(text)
    k, alphabet = head["states"], head["alphabet"]
    if len(head["initial"]) != 1:
        raise FormatError("a Dfa has exactly one initial state")
    delta: list[list[Optional[int]]] = [[None] * len(alphabet) for _ in range(k)]
    for no, parts in trans:
        if parts[0] != "trans" or len(parts) != 4:
            raise FormatError(f"line {no}: expected 'trans q sym q2'")
        q, sym, p = _int(parts[1], no), parts[2], _int(parts[3], no)
        if sym not in alphabet:
            raise FormatError(f"line {no}: symbol {sym!r} not in alphabet")
        if not (0 <= q < k and 0 <= p < k):
            raise FormatError(f"line {no}: state out of range")
        a = alphabet.index(sym)
        if delta[q][a] is not None and delta[q][a] != p:
            raise FormatError(f"line {no}: second transition for ({q}, {sym})")
        delta[q][a] = p
    for q, row in enumerate(delta):
        if None in row:
            raise FormatError(f"state {q} lacks a transition on {alphabet[row.index(None)]!r}")
    try:
        return Dfa(alphabet, tuple(map(tuple, delta)), head["initial"][0], frozenset(head["accept"]))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def dump_dfa(D: Dfa) -> str:
    out = [
        f"states {D.size}",
        "alphabet " + " ".join(D.alphabet),
        f"initial {D.initial}",
        "accept " + " ".join(str(q) for q in sorted(D.accepting)),
    ]
    for q, row in enumerate(D.delta):
        for a, p in zip(D.alphabet, row):
            out.append(f"trans {q} {a} {p}")
    return "\n".join(line.rstrip() for line in out) + "\n"


def parse_nfa(text: str) -> Nfa:
    head, trans = _automaton_header(text)
    k, alphabet = head["states"], head["alphabet"]
    edges = []
    for no, parts in trans:
        if parts[0] == "eps" and len(parts) == 3:
            edges.append((_int(parts[1], no), None, _int(parts[2], no)))
        elif parts[0] == "trans" and len(parts) == 4:
            if parts[2] not in alphabet:
                raise FormatError(f"line {no}: symbol {parts[2]!r} not in alphabet")
            edges.append((_int(parts[1], no), parts[2], _int(parts[3], no)))
        else:
            raise FormatError(f"line {no}: expected 'trans q sym q2' or 'eps q q2'")
    if any(not (0 <= q < k and 0 <= p < k) for q, _, p in edges):
        raise FormatError("state out of range")
    return Nfa.from_edges(alphabet, k, edges, head["initial"], head["accept"])


def dump_nfa(N: Nfa) -> str:
    out = [
        f"states {N.size}",
        "alphabet " + " ".join(N.alphabet),
        "initial " + " ".join(str(q) for q in sorted(N.initial)),
        "accept " + " ".join(str(q) for q in sorted(N.accepting)),
    ]
    for (q, a), targets in sorted(N.delta.items()):
        for p in sorted(targets):
            out.append(f"trans {q} {N.alphabet[a]} {p}")
    for q, targets in sorted(N.epsilon.items()):
        for p in sorted(targets):
            out.append(f"eps {q} {p}")
    return "\n".join(line.rstrip() for line in out) + "\n"


def parse_automaton(text: str) -> Dfa | Nfa:
    """A Dfa when the file is deterministic and complete, an Nfa otherwise."""
    try:
        return parse_dfa(text)
    except FormatError:
        return parse_nfa(text)


# -- .fh ------------------------------------------------------------------------------


def _split_symbols(text: str, alphabet: Optional[Sequence[str]]) -> tuple[str, ...]:
    if " " in text.strip():
        return tuple(text.split())
    if alphabet is None:
        # without a target header, plain letters are single characters
        return (text.strip(),) if "|" in text else tuple(text.strip())
    names = sorted(alphabet, key=len, reverse=True)
    out, i = [], 0
    while i < len(text):
        for name in names:
            if text.startswith(name, i):
                out.append(name)
                i += len(name)
                break
        else:
            raise FormatError(f"cannot read a symbol at {text[i:]!r}")
    return tuple(out)


def parse_fh(text: str) -> FreeHom:
    source = target = None
    rules = []
    for no, line in _lines(text):
        if line.startswith("source ") or line == "source":
            source = tuple(line.split()[1:])
        elif line.startswith("target ") or line == "target":
            target = tuple(line.split()[1:])
        elif "->" in line:
            b, _, w = line.partition("->")
            rules.append((no, b.strip(), w.strip()))
        else:
            raise FormatError(f"line {no}: expected 'b -> w'")
    images = {}
    for no, b, w in rules:
        if b in images:
            raise FormatError(f"line {no}: second image for {b!r}")
        word = _split_symbols(w, target)
        if not word:
            raise FormatError(f"line {no}: image of {b!r} is empty")
        images[b] = word
    if source is None:
        source = tuple(images)
    if set(source) != set(images):
        raise FormatError("every source letter needs exactly one image")
    if target is None:
        target = tuple(dict.fromkeys(a for b in source for a in images[b]))
    try:
        return FreeHom(source, target, tuple(images[b] for b in source))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def dump_fh(f: FreeHom) -> str:
    out = ["source " + " ".join(f.source), "target " + " ".join(f.target)]
    for b, w in zip(f.source, f.images):
        out.append(f"{b} -> {' '.join(w)}")
    return "\n".join(out) + "\n"


# -- .rh ------------------------------------------------------------------------------


def _element_token(token: str, no: int) -> int | tuple[str, int]:
    if token.startswith("{"):
        try:
            return ("subset", parse_subset(token))
        except ValueError as exc:
            raise FormatError(f"line {no}: {exc}") from None
    return _int(token, no)


def _tokens(text: str) -> list[str]:
    """Split on whitespace, keeping ``{...}`` literals whole."""
    out, buf, depth = [], "", 0
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch.isspace() and depth == 0:
            if buf:
                out.append(buf)
            buf = ""
        else:
            buf += ch
    if buf:
        out.append(buf)
    return out


def parse_rh(text: str, base_dir: str = ".") -> RecognizingHom:
    """``target S.sgp`` with element indices, or ``power S.sgp`` with subset literals."""
    mode = path = None
    letters, accept = [], []
    for no, line in _lines(text):
        key = line.split()[0]
        if key in ("target", "power") and "->" not in line:
            mode, path = key, line.split(None, 1)[1].strip()
        elif key == "accept":
            accept.extend(_element_token(t, no) for t in _tokens(line[len("accept"):]))
        elif "->" in line:
            a, _, v = line.partition("->")
            letters.append((a.strip(), _element_token(v.strip(), no)))
        else:
            raise FormatError(f"line {no}: unknown directive {key!r}")
    if path is None:
        raise FormatError("missing 'target' or 'power' line")
    S = parse_sgp(read_text(os.path.join(base_dir, path)))
    alphabet = tuple(a for a, _ in letters)
    if len(set(alphabet)) != len(alphabet):
        raise FormatError("a letter is mapped twice")
    if mode == "target":
        values = [v for _, v in letters] + accept
        if any(isinstance(v, tuple) for v in values):
            raise FormatError("subset literals need a 'power' target")
        return RecognizingHom(alphabet, S, tuple(v for _, v in letters), frozenset(accept))
    masks = [v[1] if isinstance(v, tuple) else 1 << v for _, v in letters]
    P = generated_power(S, masks)
    acc_masks = [v[1] if isinstance(v, tuple) else 1 << v for v in accept]
    return RecognizingHom(alphabet, P, tuple(P.index(m) for m in masks), frozenset(P.index(m) for m in acc_masks))


def dump_rh(eta: RecognizingHom, target_path: str) -> str:
    T = eta.target
    if isinstance(T, PowerSemigroup):
        out = [f"power {target_path}"]
        out += [f"{a} -> {subset_literal(T.mask(v))}" for a, v in zip(eta.alphabet, eta.letter_map)]
        acc = sorted(T.mask(i) for i in eta.accepting)
        out.append(("accept " + " ".join(subset_literal(m) for m in acc)).rstrip())
    else:
        out = [f"target {target_path}"]
        out += [f"{a} -> {v}" for a, v in zip(eta.alphabet, eta.letter_map)]
        out.append(("accept " + " ".join(str(i) for i in sorted(eta.accepting))).rstrip())
    return "\n".join(out) + "\n"


# -- .map -----------------------------------------------------------------------------


@dataclass(frozen=True)
class MapFile:
    """``hom n [m]`` followed by ``x -> y``; subset literals give masks."""

    size: int
    target_size: Optional[int]
    values: tuple[int, ...]
    subsets: bool


def parse_map(text: str) -> MapFile:
    lines = _lines(text)
    if not lines or not lines[0][1].startswith("hom"):
        raise FormatError("expected 'hom n' first")
    no, head = lines[0]
    parts = head.split()
    if len(parts) not in (2, 3):
        raise FormatError(f"line {no}: expected 'hom n [m]'")
    n = _int(parts[1], no)
    m = _int(parts[2], no) if len(parts) == 3 else None
    values: list[Optional[int]] = [None] * n
    kinds = set()
    for no, line in lines[1:]:
        x, sep, y = line.partition("->")
        if not sep:
            raise FormatError(f"line {no}: expected 'x -> y'")
        x = _int(x.strip(), no)
        if not 0 <= x < n:
            raise FormatError(f"line {no}: {x} outside [0, {n - 1}]")
        if values[x] is not None:
            raise FormatError(f"line {no}: second value for {x}")
        tok = _element_token(y.strip(), no)
        kinds.add(isinstance(tok, tuple))
        values[x] = tok[1] if isinstance(tok, tuple) else tok
    if None in values:
        raise FormatError(f"no value for {values.index(None)}")
    if len(kinds) > 1:
        raise FormatError("mixes indices and subset literals")
    return MapFile(n, m, tuple(values), kinds == {True})


def dump_map(values: Sequence[int], subsets: bool = False, target_size: Optional[int] = None) -> str:
    head = f"hom {len(values)}" + (f" {target_size}" if target_size is not None else "")
    out = [head]
    for x, y in enumerate(values):
        out.append(f"{x} -> {subset_literal(y) if subsets else y}")
    return "\n".join(out) + "\n"


# -- .bah -----------------------------------------------------------------------------


def parse_bah(text: str) -> BaHomomorphism:
    lines = _lines(text)
    if not lines or not lines[0][1].startswith("atoms"):
        raise FormatError("expected 'atoms m_src m_tgt' first")
    no, head = lines[0]
    parts = head.split()
    if len(parts) != 3:
        raise FormatError(f"line {no}: expected 'atoms m_src m_tgt'")
    m_src, m_tgt = _int(parts[1], no), _int(parts[2], no)
    assignment: list[Optional[int]] = [None] * m_tgt
    for no, line in lines[1:]:
        j, sep, i = line.partition("->")
        if not sep:
            raise FormatError(f"line {no}: expected 'j -> i'")
        j, i = _int(j.strip(), no), _int(i.strip(), no)
        if not 0 <= j < m_tgt:
            raise FormatError(f"line {no}: target atom {j} out of range")
        assignment[j] = i
    if None in assignment:
        raise FormatError(f"target atom {assignment.index(None)} is unassigned")
    return BaHomomorphism(FiniteBooleanAlgebra(m_src), FiniteBooleanAlgebra(m_tgt), tuple(assignment))


def dump_bah(alpha: BaHomomorphism) -> str:
    out = [f"atoms {alpha.source.atoms} {alpha.target.atoms}"]
    out += [f"{j} -> {i}" for j, i in enumerate(alpha.atom_assignment)]
    return "\n".join(out) + "\n"


# -- .set -----------------------------------------------------------------------------


def parse_set(text: str, P: Optional[PowerSemigroup] = None) -> frozenset[int]:
    """Element indices; subset literals are resolved against ``P``."""
    out = set()
    for no, line in _lines(text):
        for tok in _tokens(line):
            v = _element_token(tok, no)
            if isinstance(v, tuple):
                if P is None:
                    raise FormatError(f"line {no}: subset literal without a power semigroup")
                out.add(P.index(v[1]))
            else:
                out.add(v)
    return frozenset(out)


def dump_set(elements, P: Optional[PowerSemigroup] = None) -> str:
    if P is None:
        return "".join(f"{i}\n" for i in sorted(elements))
    return "".join(f"{subset_literal(m)}\n" for m in sorted(P.mask(i) for i in elements))

