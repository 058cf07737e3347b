"""Exhaustive and seeded checks of the library's identities, grouped into named suites."""

from __future__ import annotations

import functools
import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .language import (
    Dfa,
    FreeHom,
    RecognizingHom,
    equivalent,
    forward_image_lp,
    free_inverse_on_words,
    lp_check,
    quotient,
    recognize,
    regex,
    syntactic_semigroup,
    power_recognizer,
    words,
)
from .mso import compile_formula, converse_basis, corollary_witness, exists_converse, project
from .powerset import generated_power, power, span_compose, span_decompose
from .semigroup import (
    FiniteSemigroup,
    SemigroupHomomorphism,
    all_semigroups,
    brandt_b2,
    chain,
    cyclic_group,
    find_isomorphism,
    homomorphisms,
    is_aperiodic,
    null_semigroup,
    with_zero,
)
from .stone import (
    BaHomomorphism,
    FiniteBooleanAlgebra,
    all_maps,
    check_forward_identities,
    check_span_identity,
    check_star_identities,
    dual_map,
    lower_adjoint,
    map_to_span,
    span_to_map,
)

ALTERNATING_SENTENCE = (
    "E2 X (E x (first(x) & X(x)) & E x (last(x) & !X(x)) & A x A y (S(x,y) -> (X(x) <-> !X(y))))"
)
ALTERNATING_BODY = "E x (first(x) & X(x)) & E x (last(x) & !X(x)) & A x A y (S(x,y) -> (X(x) <-> !X(y)))"


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> Check:
        c = Check(name, bool(passed), detail)
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def render(self) -> str:
        lines = [c.line() for c in self.checks]
        lines.append(f"{self.suite}: {sum(c.passed for c in self.checks)}/{len(self.checks)} checks passed")
        return "\n".join(lines)


def _timed(fn: Callable[[], tuple[bool, str]]) -> tuple[bool, str, float]:
    start = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - start


@functools.lru_cache(maxsize=None)
def _catalog(max_order: int) -> tuple[FiniteSemigroup, ...]:
    return tuple(S for n in range(1, max_order + 1) for S in all_semigroups(n))


def semigroup_catalog(max_order: int) -> list[FiniteSemigroup]:
    """Every semigroup of order ``<= max_order`` up to isomorphism."""
    return list(_catalog(max_order))


# -- lp-morphisms and multiplicative preimages -------------------------------------------


def all_free_homs(max_alphabet: int = 2, max_image: int = 2):
    for nb in range(1, max_alphabet + 1):
        for na in range(1, max_alphabet + 1):
            B = tuple("xy"[:nb])
            A = tuple("ab"[:na])
            images = [w for k in range(1, max_image + 1) for w in itertools.product(A, repeat=k)]
            for choice in itertools.product(images, repeat=nb):
                yield FreeHom(B, A, choice)


def brute_preimage(f: FreeHom, w: tuple[str, ...]) -> frozenset[tuple[str, ...]]:
    return frozenset(u for u in words(f.source, len(w)) if f.apply(u) == w)


def lemma1_check(max_alphabet: int = 2, max_image: int = 2, max_total: int = 5) -> tuple[bool, str]:
    homs = exceptions = 0
    for f in all_free_homs(max_alphabet, max_image):
        homs += 1
        pre = {w: free_inverse_on_words(f, w) for w in words(f.target, max_total)}
        multiplicative = True
        for w, us in pre.items():
            if us != brute_preimage(f, w):
                return False, f"preimage of {w} under {f.images} disagrees with brute force"
        for w1 in words(f.target, max_total - 1):
            for w2 in words(f.target, max_total - len(w1)):
                prod = {u1 + u2 for u1 in pre[w1] for u2 in pre[w2]}
                if pre[w1 + w2] != prod:
                    multiplicative = False
                    break
            if not multiplicative:
                break
        if multiplicative != lp_check(f):
            exceptions += 1
    return exceptions == 0, f"{homs} morphisms, {exceptions} exceptions"


def suite_lemma1(**_) -> Report:
    r = Report("lemma1")
    ok, detail, secs = _timed(lemma1_check)
    r.add("lp <=> multiplicative preimages (|A|,|B| <= 2, images <= 2, |w1|+|w2| <= 5)", ok, f"{detail}, {secs:.2f}s")
    return r


# -- finite Stone duality and Vietoris identities ------------------------------------------


def span_identity_check(max_z: int = 4, max_yx: int = 3) -> tuple[bool, str]:
    pairs = 0
    for z in range(0, max_z + 1):
        for y in range(1, max_yx + 1):
            for x in range(1, max_yx + 1):
                fs = list(all_maps(z, y))
                gs = list(all_maps(z, x))
                for f in fs:
                    for g in gs:
                        pairs += 1
                        bad = check_span_identity(f, g)
                        if bad:
                            return False, bad[0]
    return True, f"{pairs} span pairs"


def vietoris_identity_check(max_size: int = 4) -> tuple[bool, str]:
    maps = 0
    for z in range(0, max_size + 1):
        for x in range(1, max_size + 1):
            for g in all_maps(z, x):
                maps += 1
                bad = check_forward_identities(g) + check_star_identities(g)
                if bad:
                    return False, bad[0]
    return True, f"{maps} maps, four identities each"


def all_ba_homs(max_atoms: int):
    for m_src in range(0, max_atoms + 1):
        for m_tgt in range(0, max_atoms + 1):
            if m_src == 0 and m_tgt > 0:
                continue
            for assignment in itertools.product(range(m_src), repeat=m_tgt):
                yield BaHomomorphism(FiniteBooleanAlgebra(m_src), FiniteBooleanAlgebra(m_tgt), assignment)


def adjoint_check(max_atoms: int = 5) -> tuple[bool, str]:
    count = 0
    for alpha in all_ba_homs(max_atoms):
        count += 1
        f = dual_map(alpha)
        table = lower_adjoint(alpha)
        if any(table[q] != f.image(q) for q in alpha.target.elements()):
            return False, f"lower adjoint differs from direct image for {alpha.atom_assignment}"
    return True, f"{count} homomorphisms"


def duality_check(max_atoms: int = 5) -> tuple[bool, str]:
    count = 0
    for alpha in all_ba_homs(max_atoms):
        count += 1
        f = dual_map(alpha)
        again = BaHomomorphism(alpha.source, alpha.target, f.table)
        if again != alpha or not alpha.preserves_operations():
            return False, f"round trip fails for {alpha.atom_assignment}"
    return True, f"{count} homomorphisms"


def map_span_roundtrip_check(max_size: int = 3) -> tuple[bool, str]:
    count = 0
    for y in range(0, max_size + 1):
        for x in range(0, max_size + 1):
            for h in itertools.product(range(1 << x), repeat=y):
                count += 1
                _, f, g = map_to_span(h, x)
                if span_to_map(f, g) != tuple(h):
                    return False, f"round trip fails for h={h}"
    return True, f"{count} maps"


def suite_stone(max_size: int = 4, max_atoms: int = 5, **_) -> Report:
    r = Report("stone-exhaustive")
    ok, d, s = _timed(lambda: span_identity_check(max_size, min(3, max_size)))
    r.add(f"span identity h^-1(<>U) = f[g^-1(U)] (|Z| <= {max_size})", ok, f"{d}, {s:.2f}s")
    ok, d, s = _timed(lambda: vietoris_identity_check(max_size))
    r.add(f"diamond/box pullbacks along images and preimages (size <= {max_size})", ok, f"{d}, {s:.2f}s")
    ok, d, s = _timed(lambda: adjoint_check(max_atoms))
    r.add(f"lower adjoint law and direct image (atoms <= {max_atoms})", ok, f"{d}, {s:.2f}s")
    ok, d, s = _timed(lambda: duality_check(max_atoms))
    r.add(f"duality round trip (atoms <= {max_atoms})", ok, f"{d}, {s:.2f}s")
    ok, d, s = _timed(lambda: map_span_roundtrip_check(min(3, max_size)))
    r.add("map -> span -> map round trip (|Y|,|X| <= 3)", ok, f"{d}, {s:.2f}s")
    return r


# -- span round trips over power semigroups ---------------------------------------------------


def span_roundtrip_check(max_order: int = 4) -> tuple[bool, str]:
    catalog = semigroup_catalog(max_order)
    homs = 0
    for S in catalog:
        P = power(S)
        for T in catalog:
            for images in homomorphisms(T, P):
                homs += 1
                h = SemigroupHomomorphism(T, P, images)
                if span_compose(span_decompose(h)).map != images:
                    return False, f"round trip fails for h={images}"
    return True, f"{len(catalog)} semigroups, {homs} homomorphisms"


def suite_roundtrips(max_order: int = 3, **_) -> Report:
    r = Report("roundtrips")
    ok, d, s = _timed(lambda: span_roundtrip_check(max_order))
    r.add(f"compose . decompose = id on T -> P(S) (|T|,|S| <= {max_order})", ok, f"{d}, {s:.2f}s")
    ok, d, s = _timed(lambda: map_span_roundtrip_check(3))
    r.add("map -> span -> map round trip (|Y|,|X| <= 3)", ok, f"{d}, {s:.2f}s")
    return r


# -- forward images and power recognizers ------------------------------------------------------


def random_semigroup(rng: random.Random, max_order: int = 5) -> FiniteSemigroup:
    pool = semigroup_catalog(min(max_order, 4))
    if max_order >= 5:
        pool += [brandt_b2(), cyclic_group(5), chain(5), with_zero(cyclic_group(4)), null_semigroup(5)]
    return rng.choice(pool)


def random_power_pair(rng: random.Random, max_order: int = 5) -> tuple[FreeHom, RecognizingHom]:
    S = random_semigroup(rng, max_order)
    B = tuple("xyz"[: rng.randint(1, 3)])
    A = tuple("abc"[: rng.randint(1, 3)])
    f = FreeHom(B, A, tuple((rng.choice(A),) for _ in B))
    g = RecognizingHom(
        B,
        S,
        tuple(rng.randrange(S.order) for _ in B),
        frozenset(s for s in range(S.order) if rng.random() < 0.5),
    )
    return f, g


def powerrec_check(count: int = 100, seed: int = 0) -> tuple[bool, str]:
    rng = random.Random(seed)
    empty = 0
    for i in range(count):
        f, g = random_power_pair(rng)
        if any(not f.letter_fiber(a) for a in f.target):
            empty += 1
        if not equivalent(recognize(power_recognizer(f, g)), forward_image_lp(f, recognize(g))):
            return False, f"pair {i} disagrees"
    return empty > 0, f"{count} pairs, {empty} with empty letter fibers"


def suite_powerrec(count: int = 100, seed: int = 0, **_) -> Report:
    r = Report("powerrec")
    ok, d, s = _timed(lambda: powerrec_check(count, seed))
    r.add(f"power recognizer = forward image (seed {seed})", ok, f"{d}, {s:.2f}s")
    return r


# -- existential quantification ---------------------------------------------------------------


def projection_check() -> tuple[bool, str]:
    L = regex("('a|1' 'a|0')+", ("a|0", "a|1"))
    ok = equivalent(project(L, 1), regex("(aa)+", ("a",)))
    return ok, "pi_1[((a,1)(a,0))+] = (aa)+"


def converse_check(max_order: int = 3, max_alphabet: int = 2) -> tuple[bool, str]:
    families = recognizers = 0
    for S in semigroup_catalog(max_order):
        for k in range(1, max_alphabet + 1):
            A = tuple("ab"[:k])
            for masks in itertools.product(range(1 << S.order), repeat=k):
                P = generated_power(S, masks)
                h = RecognizingHom(A, P, tuple(P.index(m) for m in masks), frozenset())
                recognizers += 1
                basis = converse_basis(h)
                for term in basis.terms:
                    if not equivalent(recognize(term.recognizer), term.language):
                        return False, f"term for element {term.element} is not recognized by S"
                for bits_ in range(1 << P.order):
                    C = frozenset(i for i in range(P.order) if bits_ >> i & 1)
                    families += 1
                    fam = exists_converse(h, C, basis=basis)
                    if not equivalent(fam.denotation(), recognize(h.with_accepting(C))):
                        return False, f"family differs for masks={masks}, C={sorted(C)}"
    return True, f"{recognizers} recognizers, {families} accepting families"


def suite_converse(max_order: int = 3, **_) -> Report:
    r = Report("converse")
    ok, d, s = _timed(projection_check)
    r.add("projection of an encoded language", ok, f"{d}, {s:.2f}s")
    ok, d, s = _timed(lambda: converse_check(max_order))
    r.add(f"quantified family denotes h^-1(C) (|A| <= 2, |S| <= {max_order})", ok, f"{d}, {s:.2f}s")
    return r


def suite_mso(**_) -> Report:
    r = Report("mso")
    even = regex("(aa)+", ("a",))
    D = compile_formula(ALTERNATING_SENTENCE, ("a",))
    r.add("alternating-set sentence compiles to (aa)+", equivalent(D, even) and D.size == 2, f"{D.size} states")
    body = compile_formula(ALTERNATING_BODY, ("a",))
    T, _ = syntactic_semigroup(body)
    r.add("unquantified language has an aperiodic syntactic semigroup", is_aperiodic(T), f"order {T.order}")
    Z, _ = syntactic_semigroup(even)
    iso = find_isomorphism(Z, cyclic_group(2)) is not None
    r.add("(aa)+ has syntactic semigroup Z2", iso and not is_aperiodic(Z), f"order {Z.order}")
    r.add("projecting the body gives the sentence", equivalent(project(body, 1), D))
    return r


# -- quotients --------------------------------------------------------------------------------


def random_dfa(rng: random.Random, alphabet: tuple[str, ...], max_states: int = 5) -> Dfa:
    n = rng.randint(1, max_states)
    delta = tuple(tuple(rng.randrange(n) for _ in alphabet) for _ in range(n))
    accepting = frozenset(q for q in range(n) if rng.random() < 0.5)
    return Dfa(alphabet, delta, 0, accepting)


def quotient_check(count: int = 20, seed: int = 0, max_length: int = 8) -> tuple[bool, str]:
    rng = random.Random(seed)
    tested = 0
    for i in range(count):
        alphabet = tuple("ab"[: rng.randint(1, 2)])
        L = random_dfa(rng, alphabet)
        u = tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 3)))
        v = tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 3)))
        Q = quotient(L, u, v)
        for w in words(alphabet, max_length):
            tested += 1
            if Q.accepts(w) != L.accepts(u + w + v):
                return False, f"triple {i}: w={''.join(w)}"
    return True, f"{count} triples, {tested} words"


def suite_quotient(count: int = 20, seed: int = 0, **_) -> Report:
    r = Report("quotient")
    ok, d, s = _timed(lambda: quotient_check(count, seed))
    r.add(f"w in u^-1 L v^-1 <=> uwv in L (seed {seed})", ok, f"{d}, {s:.2f}s")
    return r


# -- divisors of powers of aperiodic semigroups ------------------------------------------------


CATALOG_PATTERNS = (("(a|b)+", ("a", "b")), ("(xy)+", ("x", "y")), ("(xyz)+", ("x", "y", "z")))


def default_catalog() -> list[Dfa]:
    return [regex(p, a) for p, a in CATALOG_PATTERNS]


def labeled_subset(T, mask: int) -> str:
    return "{" + ",".join(T.label(x) for x in range(T.order) if mask >> x & 1) + "}"


def describe_witness(S_name: str, pattern: str, w) -> list[str]:
    T, P, div = w.semigroup, w.power, w.division
    show = lambda i: labeled_subset(T, P.mask(i))
    gens = ", ".join(show(g) for g in div.generators)
    U = ", ".join(show(u) for u in div.subsemigroup.elements)
    onto = ", ".join(f"{show(u)} -> {v}" for u, v in div.mapping.items())
    return [
        f"T = syntactic semigroup of {pattern}, order {T.order}: {' '.join(T.label(x) for x in range(T.order))}",
        f"T aperiodic, (index, period) per element: {' '.join(f'{i},{p}' for i, p in w.periods)}",
        f"{S_name} < P(T): generators {gens}; U = {{{U}}}; onto {S_name}: {onto}",
    ]


def suite_corollary(max_gens: int = 2, z3_max_gens: int = 1, **_) -> Report:
    r = Report("corollary")
    start = time.perf_counter()
    w2 = corollary_witness(cyclic_group(2), [regex(*CATALOG_PATTERNS[1])], max_gens)
    secs = time.perf_counter() - start
    ok = False
    detail = "no witness within bound"
    if w2 is not None:
        B2, P = w2.semigroup, w2.power
        X = P.find(0b11)  # {x, y}: the letters come first in the syntactic numbering
        X2 = P.mul(X, X)
        X3 = P.mul(X2, X)
        ok = (
            B2.order == 5
            and is_aperiodic(B2)
            and find_isomorphism(B2, brandt_b2()) is not None
            and w2.division.verify()
            and set(w2.division.subsemigroup.elements) == {X2, X3}
        )
        detail = "; ".join(describe_witness("Z2", "(xy)+", w2)) + f"; {secs:.2f}s"
    r.add("Z2 divides P(B2) via U = {X^2, X^3}, X = {x, y}", ok, detail)
    start = time.perf_counter()
    w3 = corollary_witness(cyclic_group(3), [regex(*CATALOG_PATTERNS[2])], z3_max_gens)
    secs = time.perf_counter() - start
    ok3 = w3 is not None and w3.division.verify() and is_aperiodic(w3.semigroup)
    detail3 = "; ".join(describe_witness("Z3", "(xyz)+", w3)) + f"; {secs:.2f}s" if w3 else "no witness within bound"
    r.add("Z3 divides the power of the syntactic semigroup of (xyz)+", ok3, detail3)
    return r


SUITES: dict[str, Callable[..., Report]] = {
    "stone-exhaustive": suite_stone,
    "lemma1": suite_lemma1,
    "roundtrips": suite_roundtrips,
    "corollary": suite_corollary,
    "powerrec": suite_powerrec,
    "converse": suite_converse,
    "mso": suite_mso,
    "quotient": suite_quotient,
}


def run_suite(name: str, **options) -> Report:
    return SUITES[name](**options)


def run_all(**options) -> list[Report]:
    return [fn(**options) for fn in SUITES.values()]

