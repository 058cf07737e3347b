"""Command line front end: ``powrec sg|pw|lang|stone|mso|suite ...``.

Exit status is 0 on success, 1 on a domain error (reported on stderr as
``error: CODE message``) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from . import formats, language, mso, powerset, semigroup, stone, suite
from .errors import FormatError, PowrecError
from .powerset import subset_literal


class CliError(PowrecError):
    code = "VALUE"


def _out(text: str, path: Optional[str]) -> None:
    if path:
        formats.write_text(path, text)
    else:
        sys.stdout.write(text)


def _sgp(path: str):
    return formats.parse_sgp(formats.read_text(path))


def _dfa(path: str) -> language.Dfa:
    return formats.parse_dfa(formats.read_text(path))


def _alphabet(text: str) -> tuple[str, ...]:
    try:
        return language.make_alphabet(s.strip() for s in text.split(",") if s.strip())
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _word(text: str, alphabet) -> tuple[str, ...]:
    try:
        return language.split_word(text, alphabet)
    except ValueError as exc:
        raise CliError(str(exc)) from None


# -- sg ---------------------------------------------------------------------------------


def cmd_sg_validate(args) -> int:
    S = _sgp(args.file)
    print(f"ok: associative, order {S.order}")
    return 0


def cmd_sg_aperiodic(args) -> int:
    print("true" if semigroup.is_aperiodic(_sgp(args.file)) else "false")
    return 0


def cmd_sg_divides(args) -> int:
    S, T = _sgp(args.s), _sgp(args.t)
    if args.power:
        T = powerset.power(T)
    w = semigroup.divides(S, T, args.max_gens, budget=args.budget)
    if w is None:
        print(f"not found within bound (max generators {args.max_gens})")
        return 0
    if not w.verify():
        raise CliError("division witness failed verification")
    print("generators " + " ".join(T.label(g) for g in w.generators))
    print("subsemigroup " + " ".join(T.label(u) for u in w.subsemigroup.elements))
    for u, v in w.mapping.items():
        print(f"{T.label(u)} -> {v}")
    return 0


def cmd_sg_product(args) -> int:
    P = semigroup.direct_product(_sgp(args.a), _sgp(args.b))
    _out(formats.dump_sgp(P), args.output)
    return 0


# -- pw ---------------------------------------------------------------------------------


def cmd_pw_build(args) -> int:
    P = powerset.power(_sgp(args.base))
    _out(formats.dump_sgp(P.as_semigroup()), args.output)
    return 0


def cmd_pw_embed(args) -> int:
    P = powerset.power(_sgp(args.base))
    hom = powerset.singleton_embedding(P)
    _out(formats.dump_map([P.mask(i) for i in hom.map], subsets=True), args.output)
    return 0


def cmd_pw_span_decompose(args) -> int:
    S, T = _sgp(args.base), _sgp(args.target)
    m = formats.parse_map(formats.read_text(args.hom))
    if not m.subsets:
        raise FormatError("a map into a power semigroup needs subset literals")
    if m.size != T.order:
        raise FormatError(f"map has {m.size} entries, T has {T.order} elements")
    P = powerset.power(S)
    h = semigroup.SemigroupHomomorphism(T, P, m.values)
    span = powerset.span_decompose(h, strict=args.strict)
    print("pairs " + " ".join(f"({t},{s})" for t, s in span.pairs))
    print("f " + " ".join(str(t) for t in span.f.map))
    print("g " + " ".join(str(s) for s in span.g.map))
    back = powerset.span_compose(span)
    print("recomposed " + ("equal" if back.map == h.map else "different"))
    if args.output:
        formats.write_text(args.output, formats.dump_sgp(span.R))
    return 0


# -- lang -------------------------------------------------------------------------------


def cmd_lang_regex(args) -> int:
    D = language.regex(args.pattern, _alphabet(args.alphabet))
    _out(formats.dump_dfa(D), args.output)
    return 0


def cmd_lang_min(args) -> int:
    _out(formats.dump_dfa(language.minimize(_dfa(args.file))), args.output)
    return 0


def cmd_lang_det(args) -> int:
    A = formats.parse_automaton(formats.read_text(args.file))
    N = language.Nfa.from_dfa(A) if isinstance(A, language.Dfa) else A
    _out(formats.dump_dfa(language.determinize(N)), args.output)
    return 0


def cmd_lang_eq(args) -> int:
    D1, D2 = _dfa(args.first), _dfa(args.second)
    w = language.counterexample(D1, D2)
    if w is None:
        print("true")
    else:
        print("false")
        print("counterexample " + " ".join(w))
    return 0


def cmd_lang_quotient(args) -> int:
    L = _dfa(args.file)
    Q = language.quotient(L, _word(args.u, L.alphabet), _word(args.v, L.alphabet))
    _out(formats.dump_dfa(Q), args.output)
    return 0


def cmd_lang_syn(args) -> int:
    L = _dfa(args.file)
    S, eta = language.syntactic_semigroup(L)
    print(f"order {S.order}")
    print("elements " + " ".join(S.label(x) for x in range(S.order)))
    print("accepting " + " ".join(S.label(x) for x in sorted(eta.accepting)))
    print("aperiodic " + ("true" if semigroup.is_aperiodic(S) else "false"))
    if args.output:
        formats.write_text(args.output, formats.dump_sgp(S))
    if args.hom:
        if not args.output:
            raise CliError("--hom needs -o for the semigroup file it refers to")
        rel = os.path.relpath(os.path.abspath(args.output), os.path.dirname(os.path.abspath(args.hom)))
        formats.write_text(args.hom, formats.dump_rh(eta, rel))
    return 0


def _fh(path: str) -> language.FreeHom:
    return formats.parse_fh(formats.read_text(path))


def cmd_lang_image(args) -> int:
    f = _fh(args.lp)
    if not f.is_lp:
        raise CliError("forward images need an lp-morphism")
    _out(formats.dump_dfa(language.forward_image_lp(f, _dfa(args.file))), args.output)
    return 0


def cmd_lang_preimage(args) -> int:
    _out(formats.dump_dfa(language.inverse_image_hom(_fh(args.morphism), _dfa(args.file))), args.output)
    return 0


def _rh(path: str) -> tuple[language.RecognizingHom, str]:
    text = formats.read_text(path)
    base = os.path.dirname(os.path.abspath(path))
    eta = formats.parse_rh(text, base)
    for line in text.splitlines():
        parts = line.split(None, 1)
        if parts and parts[0] in ("target", "power") and "->" not in line:
            return eta, os.path.join(base, parts[1].strip())
    raise FormatError("missing 'target' or 'power' line")


def cmd_lang_powerrec(args) -> int:
    f = _fh(args.lp)
    g, base_path = _rh(args.rec)
    h = language.power_recognizer(f, g)
    P = h.target
    print(f"power order {P.order}")
    for a, v in zip(h.alphabet, h.letter_map):
        print(f"{a} -> {subset_literal(P.mask(v))}")
    same = language.equivalent(language.recognize(h), language.forward_image_lp(f, language.recognize(g)))
    print("matches forward image " + ("true" if same else "false"))
    if args.output:
        rel = os.path.relpath(base_path, os.path.dirname(os.path.abspath(args.output)))
        formats.write_text(args.output, formats.dump_rh(h, rel))
    return 0 if same else 1


# -- stone ------------------------------------------------------------------------------


def cmd_stone_adjoint(args) -> int:
    alpha = formats.parse_bah(formats.read_text(args.hom))
    f = stone.dual_map(alpha)
    table = stone.lower_adjoint(alpha)
    print("dual " + " ".join(str(i) for i in f.table))
    for q, p in enumerate(table):
        print(f"{subset_literal(q)} -> {subset_literal(p)}")
    return 0


def _space_map(path: str) -> stone.FiniteSpaceMap:
    m = formats.parse_map(formats.read_text(path))
    if m.subsets:
        raise FormatError(f"{path}: a space map takes indices, not subsets")
    target = m.target_size if m.target_size is not None else max(m.values, default=-1) + 1
    return stone.FiniteSpaceMap(m.size, target, m.values)


def cmd_stone_span_map(args) -> int:
    f, g = _space_map(args.f), _space_map(args.g)
    h = stone.span_to_map(f, g)
    failures = stone.check_span_identity(f, g)
    _out(formats.dump_map(h, subsets=True), args.output)
    if failures:
        raise CliError(failures[0])
    return 0


def cmd_stone_check(args) -> int:
    return _report(suite.run_suite("stone-exhaustive", max_size=args.size_limit, max_atoms=args.max_atoms))


# -- mso --------------------------------------------------------------------------------


def cmd_mso_compile(args) -> int:
    env = [v.strip() for v in args.env.split(",") if v.strip()] if args.env is not None else None
    D = mso.compile_formula(args.formula, _alphabet(args.alphabet), env, track_limit=args.track_limit)
    _out(formats.dump_dfa(D), args.output)
    return 0


def cmd_mso_project(args) -> int:
    try:
        D = mso.project(_dfa(args.file), args.n)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    _out(formats.dump_dfa(D), args.output)
    return 0


def cmd_mso_unquantify(args) -> int:
    h, _ = _rh(args.rec)
    if not isinstance(h.target, powerset.PowerSemigroup):
        raise CliError("unquantify needs a recognizer into a power semigroup ('power' line)")
    C = formats.parse_set(formats.read_text(args.accept), h.target) if args.accept else h.accepting
    basis = mso.converse_basis(h)
    family = mso.exists_converse(h, C, basis=basis, simplify=not args.no_simplify)
    print("alphabet " + " ".join(basis.sub_alphabet))
    print(f"tracks {basis.n}")
    for term in family.terms:
        print(f"term K{term.element}: {term.language.size} states over {' '.join(term.language.alphabet)}")
        if args.emit:
            os.makedirs(args.emit, exist_ok=True)
            formats.write_text(os.path.join(args.emit, f"K{term.element}.dfa"), formats.dump_dfa(term.language))
    for d in family.disjuncts:
        print("disjunct " + (" & ".join(f"{'+' if pos else '-'}K{k}" for pos, k in d) or "true"))
    if not family.disjuncts:
        print("disjunct none (empty language)")
    single = family.single_language()
    print("single-language form " + ("yes" if single is not None else "no"))
    same = language.equivalent(family.denotation(), language.recognize(h.with_accepting(C)))
    print("denotation matches " + ("true" if same else "false"))
    return 0 if same else 1


def cmd_mso_corollary(args) -> int:
    S = _sgp(args.semigroup)
    names = sorted(n for n in os.listdir(args.catalog) if n.endswith(".dfa"))
    catalog = [_dfa(os.path.join(args.catalog, n)) for n in names]
    w = mso.corollary_witness(S, catalog, args.max_gens)
    if w is None:
        print("not found within catalog and bound")
        return 0
    if not w.division.verify():
        raise CliError("division witness failed verification")
    print(f"language {names[w.catalog_index]}")
    for line in suite.describe_witness("S", names[w.catalog_index], w):
        print(line)
    return 0


# -- suite ------------------------------------------------------------------------------


def _report(r: suite.Report) -> int:
    print(r.render())
    return 0 if r.passed else 1


def cmd_suite(args) -> int:
    options = {
        "max_size": args.max_size,
        "max_atoms": args.max_atoms,
        "max_order": args.max_order,
        "seed": args.seed,
        "count": args.count,
        "max_gens": args.max_gens,
    }
    options = {k: v for k, v in options.items() if v is not None}
    names = list(suite.SUITES) if args.name == "all" else [args.name]
    status = 0
    for name in names:
        status |= _report(suite.run_suite(name, **options))
    return status


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="powrec", description="Power constructions for semigroups, languages and finite spaces.")
    top = p.add_subparsers(dest="group", required=True)

    sg = top.add_parser("sg", help="finite semigroups").add_subparsers(dest="cmd", required=True)
    c = sg.add_parser("validate", help="check a table for associativity")
    c.add_argument("file")
    c.set_defaults(fn=cmd_sg_validate)
    c = sg.add_parser("aperiodic", help="print true or false")
    c.add_argument("file")
    c.set_defaults(fn=cmd_sg_aperiodic)
    c = sg.add_parser("divides", help="search for S as a quotient of a subsemigroup of T")
    c.add_argument("--s", required=True, help="the divisor S (.sgp)")
    c.add_argument("--t", required=True, help="the semigroup T (.sgp)")
    c.add_argument("--power", action="store_true", help="search in the full power semigroup of T")
    c.add_argument("--max-gens", type=int, default=1)
    c.add_argument("--budget", type=int, default=semigroup.DEFAULT_SEARCH_BUDGET)
    c.set_defaults(fn=cmd_sg_divides)
    c = sg.add_parser("product", help="direct product, (s,t) at index s*|B|+t")
    c.add_argument("a")
    c.add_argument("b")
    c.add_argument("-o", "--output")
    c.set_defaults(fn=cmd_sg_product)

    pw = top.add_parser("pw", help="power semigroups").add_subparsers(dest="cmd", required=True)
    c = pw.add_parser("build", help="table of the full power semigroup (base order <= 10)")
    c.add_argument("base")
    c.add_argument("-o", "--output")
    c.set_defaults(fn=cmd_pw_build)
    c = pw.add_parser("embed", help="the singleton embedding as a map file")
    c.add_argument("base")
    c.add_argument("-o", "--output")
    c.set_defaults(fn=cmd_pw_embed)
    c = pw.add_parser("span-decompose", help="split h: T -> P(S) into a span T <- R -> S")
    c.add_argument("--hom", required=True, help="h as a .map file with subset literals")
    c.add_argument("--base", required=True, help="S, the base of the power semigroup")
    c.add_argument("--target", required=True, help="T, the domain of h and target of f: R -> T")
    c.add_argument("--strict", action="store_true", help="reject empty values of h")
    c.add_argument("-o", "--output", help="write R as .sgp")
    c.set_defaults(fn=cmd_pw_span_decompose)

    lang = top.add_parser("lang", help="regular languages").add_subparsers(dest="cmd", required=True)
    c = lang.add_parser("regex", help="minimal Dfa of a regular expression")
    c.add_argument("pattern")
    c.add_argument("--alphabet", required=True, help="comma separated symbols")
    c.add_argument("-o", "--output")
    c.set_defaults(fn=cmd_lang_regex)
    c = lang.add_parser("min", help="minimize a Dfa")
    c.add_argument("file")
    c.add_argument("-o", "--output")
    c.set_defaults(fn=cmd_lang_min)
    c = lang.add_parser("det", help="determinize an automaton file")
    c.add_argument("file")
    c.add_argument("-o", "--output")
    c.set_defaults(fn=cmd_lang_det)
    c = lang.add_parser("eq", help="decide language equality")
    c.add_argument("first")
    c.add_argument("second")
    c.set_defaults(fn=cmd_lang_eq)
    c = lang.add_parser("quotient", help="{w | u w v in L}")
    c.add_argument("file")
    c.add_argument("--u", default="", help="left word (default empty)")
    c.add_argument("--v", default="", help="right word (default empty)")
    c.add_argument("-o", "--output")
    c.set_defaults(fn=cmd_lang_quotient)
    c = lang.add_parser("syn", help="syntactic semigroup")
    c.add_argument("file")
    c.add_argument("-o", "--output", help="write the semigroup (.sgp)")
    c.add_argument("--hom", help="write the recognizing morphism (.rh)")
    c.set_defaults(fn=cmd_lang_syn)
    c = lang.add_parser("image", help="forward image along an lp-morphism")
    c.add_argument("--lp", required=True, help="the morphism (.fh)")
    c.add_argument("file")
    c.add_argument("-o", "--output")
    c.set_defaults(fn=cmd_lang_image)
    c = lang.add_parser("preimage", help="inverse image along a morphism")
    c.add_argument("morphism")
    c.add_argument("file")
    c.add_argument("-o", "--output")
    c.set_defaults(fn=cmd_lang_preimage)
    c = lang.add_parser("powerrec", help="recognizer of f[L] into a power semigroup")
    c.add_argument("--lp", required=True)
    c.add_argument("--rec", required=True)
    c.add_argument("-o", "--output", help="write the power recognizer (.rh)")
    c.set_defaults(fn=cmd_lang_powerrec)

    st = top.add_parser("stone", help="finite Boolean algebras and Vietoris spaces").add_subparsers(dest="cmd", required=True)
    c = st.add_parser("adjoint", help="dual map and lower adjoint")
    c.add_argument("--hom", required=True, help=".bah file")
    c.set_defaults(fn=cmd_stone_adjoint)
    c = st.add_parser("span-map", help="h(y) = g[f^-1(y)] from two .map files")
    c.add_argument("--f", required=True)
    c.add_argument("--g", required=True)
    c.add_argument("-o", "--output")
    c.set_defaults(fn=cmd_stone_span_map)
    c = st.add_parser("check", help="exhaustive identity suite")
    c.add_argument("--size-limit", type=int, default=4)
    c.add_argument("--max-atoms", type=int, default=5)
    c.set_defaults(fn=cmd_stone_check)

    ms = top.add_parser("mso", help="logic on words").add_subparsers(dest="cmd", required=True)
    c = ms.add_parser("compile", help="formula to minimal Dfa over A x 2^N")
    c.add_argument("formula")
    c.add_argument("--alphabet", required=True)
    c.add_argument("--env", help="free variables in track order, comma separated")
    c.add_argument("--track-limit", type=int, default=mso.DEFAULT_TRACK_LIMIT)
    c.add_argument("-o", "--output")
    c.set_defaults(fn=cmd_mso_compile)
    c = ms.add_parser("project", help="quantify all tracks away")
    c.add_argument("file")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("-o", "--output")
    c.set_defaults(fn=cmd_mso_project)
    c = ms.add_parser("unquantify", help="Boolean family of quantified languages for h^-1(C)")
    c.add_argument("--rec", required=True, help="recognizer into a power semigroup (.rh)")
    c.add_argument("--accept", help="accepting family (.set); default: the one in the .rh")
    c.add_argument("--no-simplify", action="store_true")
    c.add_argument("--emit", help="directory for the term languages")
    c.set_defaults(fn=cmd_mso_unquantify)
    c = ms.add_parser("corollary", help="find an aperiodic T with S dividing P(T)")
    c.add_argument("semigroup")
    c.add_argument("--catalog", required=True, help="directory of .dfa files, scanned by name")
    c.add_argument("--max-gens", type=int, default=1)
    c.set_defaults(fn=cmd_mso_corollary)

    c = top.add_parser("suite", help="run a named check suite")
    c.add_argument("name", choices=sorted(suite.SUITES) + ["all"])
    c.add_argument("--max-size", type=int)
    c.add_argument("--max-atoms", type=int)
    c.add_argument("--max-order", type=int)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--count", type=int)
    c.add_argument("--max-gens", type=int)
    c.set_defaults(fn=cmd_suite)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except PowrecError as exc:
        print(f"error: {exc.code} {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: IO {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: VALUE {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
