import json
import subprocess
import sys

import pytest

from mcgwords.cli import FAIL, OK, USAGE, main
from mcgwords.corpus import build_Zg_word, corpus_dir, zg_context
from mcgwords.homology import render_curve_table
from mcgwords.relations import relation, render_relations
from mcgwords.words import render_definitions, render_word


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def g2_files():
    d = corpus_dir() / "g2"
    return d / "curves.mcgc", d / "relations.mcgr", d / "defs.mcgdef"


class TestVerify:
    def test_genus_two_entry(self, capsys):
        code, out, _ = run(capsys, "verify", "--entry", "X2")
        assert code == OK
        assert "homology identity" in out and "order of base word: 3" in out

    def test_word_file(self, capsys, tmp_path, g2_files):
        curves, _, defs = g2_files
        w = tmp_path / "w.mcgw"
        w.write_text("(c1 c2 x c3 c4 c5 c5 c4 c5 c4)^3\n")
        code, out, _ = run(capsys, "verify", w, "--curves", curves, "--defs", defs, "--json")
        data = json.loads(out)
        assert code == OK and data["identity"] and data["order"] == 3 and data["positive"]

    def test_missing_letter_fails(self, capsys, tmp_path, g2_files):
        curves, _, defs = g2_files
        w = tmp_path / "w.mcgw"
        w.write_text("(c1 c2 x c3 c4 c5 c5 c4 c5 c4)^2 c1 c2 x c3 c4 c5 c5 c4 c5\n")
        code, out, _ = run(capsys, "verify", w, "--curves", curves, "--defs", defs)
        assert code == FAIL and "NOT identity" in out

    def test_general_genus_word(self, capsys, tmp_path):
        ctx = zg_context(8)
        (tmp_path / "c.mcgc").write_text(render_curve_table(ctx.table))
        (tmp_path / "d.mcgdef").write_text(render_definitions(ctx.defs))
        (tmp_path / "w.mcgw").write_text(f"({render_word(build_Zg_word(8))})^3\n")
        code, out, _ = run(capsys, "verify", tmp_path / "w.mcgw", "--curves", tmp_path / "c.mcgc",
                           "--defs", tmp_path / "d.mcgdef", "--json")
        data = json.loads(out)
        assert code == OK and data["identity"] and data["order"] == 3
        assert data["positive"] is False


class TestOtherCommands:
    def test_parse(self, capsys, tmp_path):
        (tmp_path / "w").write_text("(c1 c2)^2 c3^-1")
        code, out, _ = run(capsys, "parse", tmp_path / "w")
        assert code == OK and "c1 c2 c1 c2 c3^-1" in out and "positive false" in out

    def test_reduce(self, capsys, tmp_path):
        (tmp_path / "w").write_text("c1 c2 c2^-1 c3")
        code, out, _ = run(capsys, "reduce", tmp_path / "w", "--json")
        assert code == OK and json.loads(out) == {"word": "c1 c3", "length": 2, "removed": 2}

    def test_order(self, capsys):
        code, out, _ = run(capsys, "order", "--entry", "X2")
        assert code == OK and out.strip() == "order 1"

    def test_derive_with_ledger(self, capsys):
        code, out, _ = run(capsys, "derive", "--entry", "Y6", "--ledger")
        assert code == OK
        assert "ledger total -30" in out and "Lantern +1 x27" in out

    def test_derive_script_file_with_expectation(self, capsys, tmp_path, g2_files):
        curves, rels, defs = g2_files
        d = corpus_dir() / "X2"
        code, out, _ = run(capsys, "derive", d / "derivation.mcgd", "--curves", curves,
                           "--relations", rels, "--defs", defs, "--expect", d / "word.mcgw",
                           "--json")
        data = json.loads(out)
        assert code == OK and data["ledger_total"] == -18 and data["letters"] == 30

    def test_derive_broken_script(self, capsys, tmp_path):
        text = (corpus_dir() / "X2" / "derivation.mcgd").read_text()
        (tmp_path / "bad.mcgd").write_text(text.replace("swap at 4\n", "swap at 0\n", 1))
        code, out, _ = run(capsys, "derive", tmp_path / "bad.mcgd")
        assert code == FAIL and "replay failed at step" in out

    def test_invariants(self, capsys):
        code, out, _ = run(capsys, "invariants", "--entry", "X2,6", "--json")
        data = json.loads(out)
        assert code == OK
        assert (data["chi"], data["sigma"], data["h1"]) == (20, -12, "Z/3")

    def test_invariants_formula_mismatch(self, capsys):
        code, out, _ = run(capsys, "invariants", "--entry", "X2", "--family", "X_g,k",
                           "--param", "g=2", "--param", "k=1")
        assert code == FAIL and "mismatch" in out

    def test_solve_curves(self, capsys, tmp_path):
        (tmp_path / "p.mcgc").write_text(
            "genus 2\ncurve c1 = [0, 1, 0, 0]\ncurve c2 = [1, 0, 0, 0]\n"
            "curve c3 = [0, 1, 0, 1]\ncurve c4 = [0, 0, 1, 0]\ncurve c5 = [0, 0, 0, 1]\n"
            "curve delta = [0, 0, 0, 0]\nseparating delta\n")
        (tmp_path / "r.mcgr").write_text(render_relations(
            [relation("L1", "Lantern", "delta x c3", "c5 c5 c1 c1")]))
        code, out, _ = run(capsys, "solve-curves", tmp_path / "p.mcgc", "--unknowns", "x",
                           "--relations", tmp_path / "r.mcgr", "--search-bound", 2, "--json")
        data = json.loads(out)
        assert code == OK and [0, 1, 0, -1] in [s["x"] for s in data["solutions"]]

    def test_validate_corpus(self, capsys):
        code, out, _ = run(capsys, "validate-corpus")
        assert code == OK and "all pass" in out


class TestTable:
    def test_pristine(self, capsys):
        code, out, _ = run(capsys, "table")
        assert code == OK
        assert "row X2,6 chi 20 sigma -12 chih 2 c1sq 4 h1 Z/3 status ok" in out

    def test_tampered_expected_names_row(self, capsys, tmp_path):
        text = (corpus_dir() / "expected_table.txt").read_text()
        bad = tmp_path / "expected.txt"
        bad.write_text(text.replace("Y5 | Y5 | 41 | -29", "Y5 | Y5 | 41 | -28"))
        code, out, _ = run(capsys, "table", "--expected", bad)
        assert code == FAIL
        assert "row Y5 " in out and "status diff" in out and "diff Y5: sigma -29 != -28" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "table", "--json")
        data = json.loads(out)
        assert code == OK and data["ok"] and len(data["rows"]) == 12


class TestErrors:
    def test_parse_error_exit_code(self, capsys, tmp_path):
        (tmp_path / "w").write_text("(c1 c2")
        code, _, err = run(capsys, "parse", tmp_path / "w")
        assert code == USAGE and err.startswith("error:")

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "parse", "/nonexistent/word")
        assert code == USAGE and "cannot read" in err

    def test_unknown_curve(self, capsys, tmp_path, g2_files):
        (tmp_path / "w").write_text("c1 zz")
        code, _, err = run(capsys, "verify", tmp_path / "w", "--curves", g2_files[0])
        assert code == USAGE and "zz" in err

    def test_unknown_entry(self, capsys):
        code, _, _ = run(capsys, "verify", "--entry", "nope")
        assert code == USAGE

    def test_argparse_usage(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == USAGE


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mcgwords", "verify", "--entry", "X3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "homology identity" in proc.stdout
