from __future__ import annotations

import subprocess
import sys

import pytest

from powrec import cli
from powrec.formats import dump_dfa, dump_sgp, parse_dfa, parse_map, parse_rh, parse_sgp, read_text, write_text
from powrec.language import equivalent, regex
from powrec.powerset import power
from powrec.semigroup import brandt_b2, cyclic_group, find_isomorphism


@pytest.fixture
def files(tmp_path):
    paths = {}

    def put(name, text):
        path = tmp_path / name
        write_text(str(path), text)
        paths[name] = str(path)

    put("b2.sgp", dump_sgp(brandt_b2()))
    put("z2.sgp", dump_sgp(cyclic_group(2)))
    put("bad.sgp", "2\n0 0\n1 0\n")
    put("xy.dfa", dump_dfa(regex("(xy)+", ("x", "y"))))
    put("ab.dfa", dump_dfa(regex("(ab)+", ("a", "b"))))
    put("aa.dfa", dump_dfa(regex("(aa)+", ("a",))))
    put("pairs.dfa", dump_dfa(regex("('a|1' 'a|0')+", ("a|0", "a|1"))))
    put("collapse.fh", "x -> a\ny -> a\n")
    put("c.fh", "target a b\nc -> a b\n")
    put("h.map", "hom 2\n0 -> {0,1}\n1 -> {0,1}\n")
    put("f.map", "hom 3 2\n0 -> 0\n1 -> 0\n2 -> 1\n")
    put("g.map", "hom 3 2\n0 -> 0\n1 -> 1\n2 -> 1\n")
    put("alpha.bah", "atoms 2 3\n0 -> 1\n1 -> 1\n2 -> 0\n")
    put("neg.rh", "power z2.sgp\na -> {0}\nb -> {0,1}\naccept {0}\n")
    paths["dir"] = str(tmp_path)
    return paths


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestSg:
    def test_aperiodic(self, capsys, files):
        assert run(capsys, "sg", "aperiodic", files["b2.sgp"]) == (0, "true\n", "")
        assert run(capsys, "sg", "aperiodic", files["z2.sgp"])[1] == "false\n"

    def test_validate(self, capsys, files):
        code, out, _ = run(capsys, "sg", "validate", files["b2.sgp"])
        assert code == 0 and "order 5" in out
        code, _, err = run(capsys, "sg", "validate", files["bad.sgp"])
        assert code == 1 and err.startswith("error: ASSOCIATIVITY")

    def test_divides(self, capsys, files):
        code, out, _ = run(capsys, "sg", "divides", "--s", files["z2.sgp"], "--t", files["b2.sgp"], "--power")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "generators {0,1,4}"
        assert lines[1] == "subsemigroup {0,1,4} {2,3,4}"
        code, out, _ = run(capsys, "sg", "divides", "--s", files["z2.sgp"], "--t", files["b2.sgp"], "--max-gens", "3")
        assert code == 0 and out.startswith("not found")

    def test_budget(self, capsys, files):
        code, _, err = run(capsys, "sg", "divides", "--s", files["z2.sgp"], "--t", files["b2.sgp"], "--power", "--max-gens", "3", "--budget", "5")
        assert code == 1 and "BOUND_EXCEEDED" in err

    def test_product(self, capsys, files, tmp_path):
        out_path = str(tmp_path / "p.sgp")
        assert run(capsys, "sg", "product", files["b2.sgp"], files["z2.sgp"], "-o", out_path)[0] == 0
        assert parse_sgp(read_text(out_path)).order == 10


class TestPw:
    def test_build(self, capsys, files):
        code, out, _ = run(capsys, "pw", "build", files["z2.sgp"])
        P = parse_sgp(out)
        assert code == 0 and P.order == 4 and P.mul(3, 3) == 3

    def test_embed(self, capsys, files):
        code, out, _ = run(capsys, "pw", "embed", files["b2.sgp"])
        assert parse_map(out).values == (1, 2, 4, 8, 16)

    def test_span_decompose(self, capsys, files, tmp_path):
        r_path = str(tmp_path / "r.sgp")
        code, out, _ = run(capsys, "pw", "span-decompose", "--hom", files["h.map"], "--base", files["z2.sgp"], "--target", files["z2.sgp"], "-o", r_path)
        assert code == 0
        assert out.splitlines()[0] == "pairs (0,0) (0,1) (1,0) (1,1)"
        assert "recomposed equal" in out
        assert parse_sgp(read_text(r_path)).order == 4

    def test_span_not_hom(self, capsys, files, tmp_path):
        bad = tmp_path / "bad.map"
        bad.write_text("hom 2\n0 -> {1}\n1 -> {1}\n")
        code, _, err = run(capsys, "pw", "span-decompose", "--hom", str(bad), "--base", files["z2.sgp"], "--target", files["z2.sgp"])
        assert code == 1 and "NOT_HOMOMORPHISM" in err


class TestLang:
    def test_regex_and_eq(self, capsys, files, tmp_path):
        path = str(tmp_path / "r.dfa")
        assert run(capsys, "lang", "regex", "(xy)+", "--alphabet", "x,y", "-o", path)[0] == 0
        assert run(capsys, "lang", "eq", path, files["xy.dfa"]) == (0, "true\n", "")
        code, out, _ = run(capsys, "lang", "eq", files["ab.dfa"], files["ab.dfa"])
        assert out == "true\n"

    def test_eq_counterexample(self, capsys, files, tmp_path):
        other = tmp_path / "o.dfa"
        other.write_text(dump_dfa(regex("(ab)+|a", ("a", "b"))))
        code, out, _ = run(capsys, "lang", "eq", files["ab.dfa"], str(other))
        assert code == 0 and out == "false\ncounterexample a\n"

    def test_min_and_det(self, capsys, files):
        code, out, _ = run(capsys, "lang", "min", files["xy.dfa"])
        assert equivalent(parse_dfa(out), regex("(xy)+", ("x", "y")))
        code, out, _ = run(capsys, "lang", "det", files["xy.dfa"])
        assert equivalent(parse_dfa(out), regex("(xy)+", ("x", "y")))

    def test_quotient(self, capsys, files):
        code, out, _ = run(capsys, "lang", "quotient", files["ab.dfa"], "--u", "a")
        assert equivalent(parse_dfa(out), regex("b(ab)*", ("a", "b")))

    def test_syn(self, capsys, files, tmp_path):
        s_path, h_path = str(tmp_path / "s.sgp"), str(tmp_path / "s.rh")
        code, out, _ = run(capsys, "lang", "syn", files["xy.dfa"], "-o", s_path, "--hom", h_path)
        assert code == 0
        assert out.splitlines() == ["order 5", "elements x y xx xy yx", "accepting xy", "aperiodic true"]
        assert find_isomorphism(parse_sgp(read_text(s_path)), brandt_b2()) is not None
        eta = parse_rh(read_text(h_path), str(tmp_path))
        assert eta.alphabet == ("x", "y")

    def test_image_and_preimage(self, capsys, files):
        code, out, _ = run(capsys, "lang", "image", "--lp", files["collapse.fh"], files["xy.dfa"])
        assert equivalent(parse_dfa(out), regex("(aa)+", ("a",)))
        code, out, _ = run(capsys, "lang", "preimage", files["c.fh"], files["ab.dfa"])
        assert equivalent(parse_dfa(out), regex("c+", ("c",)))

    def test_image_needs_lp(self, capsys, files):
        code, _, err = run(capsys, "lang", "image", "--lp", files["c.fh"], files["ab.dfa"])
        assert code == 1 and err.startswith("error: VALUE")

    def test_powerrec(self, capsys, files, tmp_path):
        s_path, h_path = str(tmp_path / "s.sgp"), str(tmp_path / "s.rh")
        run(capsys, "lang", "syn", files["xy.dfa"], "-o", s_path, "--hom", h_path)
        out_path = str(tmp_path / "p.rh")
        code, out, _ = run(capsys, "lang", "powerrec", "--lp", files["collapse.fh"], "--rec", h_path, "-o", out_path)
        assert code == 0
        assert "a -> {0,1}" in out and "matches forward image true" in out
        assert read_text(out_path).startswith("power s.sgp")


class TestStone:
    def test_adjoint(self, capsys, files):
        code, out, _ = run(capsys, "stone", "adjoint", "--hom", files["alpha.bah"])
        lines = out.splitlines()
        assert code == 0 and lines[0] == "dual 1 1 0"
        assert lines[1:] == [
            "{} -> {}", "{0} -> {1}", "{1} -> {1}", "{0,1} -> {1}",
            "{2} -> {0}", "{0,2} -> {0,1}", "{1,2} -> {0,1}", "{0,1,2} -> {0,1}",
        ]

    def test_span_map(self, capsys, files):
        code, out, _ = run(capsys, "stone", "span-map", "--f", files["f.map"], "--g", files["g.map"])
        assert code == 0 and parse_map(out).values == (0b11, 0b10)

    def test_check(self, capsys):
        code, out, _ = run(capsys, "stone", "check", "--size-limit", "2", "--max-atoms", "2")
        assert code == 0 and out.startswith("PASS")


class TestMso:
    def test_compile_alternating(self, capsys):
        text = "E2 X (E x (first(x) & X(x)) & E x (last(x) & !X(x)) & A x A y (S(x,y) -> (X(x) <-> !X(y))))"
        code, out, _ = run(capsys, "mso", "compile", text, "--alphabet", "a")
        D = parse_dfa(out)
        assert code == 0 and D.size == 2 and equivalent(D, regex("(aa)+", ("a",)))

    def test_compile_errors(self, capsys):
        code, _, err = run(capsys, "mso", "compile", "a(x", "--alphabet", "a")
        assert code == 1 and "SYNTAX" in err
        code, _, err = run(capsys, "mso", "compile", "a(x)", "--alphabet", "a", "--env", "y")
        assert code == 1 and "UNBOUND_VARIABLE" in err
        code, _, err = run(capsys, "mso", "compile", "X(x) & Y(x)", "--alphabet", "a", "--track-limit", "2")
        assert code == 1 and "TRACK_LIMIT" in err

    def test_project(self, capsys, files):
        code, out, _ = run(capsys, "mso", "project", files["pairs.dfa"], "--n", "1")
        assert code == 0 and equivalent(parse_dfa(out), regex("(aa)+", ("a",)))
        code, _, err = run(capsys, "mso", "project", files["pairs.dfa"], "--n", "2")
        assert code == 1

    def test_unquantify(self, capsys, files, tmp_path):
        emit = str(tmp_path / "terms")
        code, out, _ = run(capsys, "mso", "unquantify", "--rec", files["neg.rh"], "--emit", emit)
        assert code == 0
        assert "disjunct -K1" in out
        assert "single-language form no" in out
        assert "denotation matches true" in out
        assert sorted(p.name for p in (tmp_path / "terms").iterdir()) == ["K0.dfa", "K1.dfa"]
        code, out, _ = run(capsys, "mso", "unquantify", "--rec", files["neg.rh"], "--no-simplify")
        assert "disjunct +K0 & -K1" in out

    def test_corollary(self, capsys, files, tmp_path):
        catalog = tmp_path / "catalog"
        catalog.mkdir()
        (catalog / "1_even.dfa").write_text(dump_dfa(regex("(xx)+", ("x",))))
        (catalog / "2_xy.dfa").write_text(dump_dfa(regex("(xy)+", ("x", "y"))))
        code, out, _ = run(capsys, "mso", "corollary", files["z2.sgp"], "--catalog", str(catalog))
        assert code == 0 and out.startswith("language 2_xy.dfa")


class TestSuiteCommand:
    def test_lemma1(self, capsys):
        code, out, _ = run(capsys, "suite", "lemma1")
        assert code == 0 and out.startswith("PASS")

    def test_corollary(self, capsys):
        code, out, _ = run(capsys, "suite", "corollary")
        assert code == 0
        assert "Z2" in out and "PASS" in out and "FAIL" not in out


class TestExitCodes:
    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as err:
            cli.main(["sg", "bogus"])
        assert err.value.code == 2

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "sg", "aperiodic", "/nonexistent/x.sgp")
        assert code == 1 and err.startswith("error: IO")

    def test_format_error(self, capsys, tmp_path):
        bad = tmp_path / "x.dfa"
        bad.write_text("states 1\n")
        code, _, err = run(capsys, "lang", "min", str(bad))
        assert code == 1 and err.startswith("error: FORMAT")

    def test_module_entry_point_is_deterministic(self, files):
        argv = [sys.executable, "-m", "powrec", "sg", "divides", "--s", files["z2.sgp"], "--t", files["b2.sgp"], "--power", "--max-gens", "2"]
        first = subprocess.run(argv, capture_output=True, text=True, check=True)
        second = subprocess.run(argv, capture_output=True, text=True, check=True)
        assert first.stdout == second.stdout and first.stdout.startswith("generators")


def test_power_table_from_cli_matches_library(capsys, files):
    _, out, _ = run(capsys, "pw", "build", files["b2.sgp"])
    P = parse_sgp(out)
    Q = power(brandt_b2())
    assert all(P.mul(i, j) == Q.mul(i, j) for i in range(32) for j in range(32))
