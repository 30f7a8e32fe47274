import json
import subprocess
import sys

from logcalc import catalog
from logcalc.cli import main
from logcalc.jsonio import dump_object


def run_cli(*argv, stdin: str | None = None):
    proc = subprocess.run(
        [sys.executable, "-m", "logcalc.cli", *argv],
        input=stdin,
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


class TestExpressionVerbs:
    def test_eval_canonicalizes(self):
        assert main(["eval", "2*x + lg(x)"]) == 0

    def test_eval_roundtrip_subprocess(self):
        code, out, _ = run_cli("eval", "x^(1/2)*lg(x)^2 + 1/2")
        assert code == 0
        assert out.strip() == "(1/2) + x^(1/2)*lg(x)^2"

    def test_diff(self):
        code, out, _ = run_cli("diff", "lg(x)", "--var", "x")
        assert code == 0 and out.strip() == "x^(-1)"

    def test_subst_shift(self):
        code, out, _ = run_cli("subst", "lg(x)", "--kind", "shift", "--order", "2")
        assert code == 0
        assert "lg(x)" in out and "y" in out

    def test_parse_error_exits_2(self):
        code, _, err = run_cli("eval", "x^(1/7)")
        assert code == 2 and "denominator" in err

    def test_json_format(self):
        code, out, _ = run_cli("--format", "json", "eval", "x")
        assert code == 0 and json.loads(out) == {"series": "x"}


class TestCheckVerbs:
    def test_check_comb(self):
        code, out, _ = run_cli("check", "comb", "--kmax", "6")
        assert code == 0 and "PASS" in out

    def test_check_taylor_seeded(self):
        code, out, _ = run_cli("check", "taylor", "--order", "4", "--samples", "10", "--seed", "7")
        assert code == 0 and "PASS" in out

    def test_check_lubell(self):
        code, out, _ = run_cli("check", "lubell", "--nmax", "4", "--jmax", "3")
        assert code == 0

    def test_check_json_format(self):
        code, out, _ = run_cli("--format", "json", "check", "comb", "--kmax", "3")
        data = json.loads(out)
        assert code == 0 and data["passed"] is True

    def test_verb_is_thin_shell_over_library(self):
        # the CLI report must be exactly the library's report
        from logcalc.checks import check_comb

        code, out, _ = run_cli("--format", "json", "check", "comb", "--kmax", "5")
        assert code == 0
        assert json.loads(out) == json.loads(check_comb(5).to_json())

    def test_check_intertwiner_file(self, tmp_path, honest_table):
        path = tmp_path / "t.json"
        path.write_text(dump_object(honest_table))
        code, out, _ = run_cli("check", "intertwiner", str(path), "--axioms", "all")
        assert code == 0 and "PASS" in out

    def test_failing_check_exits_1(self, tmp_path, honest_table):
        from logcalc.intertwiner import IntertwinerTable
        from logcalc.scalars import Exponent

        t = honest_table
        modes = dict(t.modes)
        modes[(0, 0, Exponent(-5), 0)] = t.w3.basis_vector(0)
        bad = IntertwinerTable(t.w1, t.w2, t.w3, modes)
        path = tmp_path / "bad.json"
        path.write_text(dump_object(bad))
        code, out, _ = run_cli("check", "intertwiner", str(path), "--axioms", "lminus1")
        assert code == 1


class TestDeriveAndSolve:
    def test_omega_pipeline_restores_input(self, tmp_path, jordan_tables):
        path = tmp_path / "table.json"
        path.write_text(dump_object(jordan_tables[0]))
        code, once, _ = run_cli("derive", "omega", "--r", "0", str(path))
        assert code == 0
        code, twice, _ = run_cli("derive", "omega", "--r", "-1", "-", stdin=once)
        assert code == 0
        assert twice == path.read_text()

    def test_xt_derivation(self, tmp_path, jordan_tables):
        path = tmp_path / "table.json"
        path.write_text(dump_object(jordan_tables[1]))
        code, out, _ = run_cli("derive", "xt", "--t", "1", str(path))
        assert code == 0 and '"kind": "intertwiner"' in out

    def test_solve_fusion(self, tmp_path):
        names = []
        for name, mod in (
            ("W1", catalog.trivial_module("W1")),
            ("W2", catalog.trivial_module("W2")),
            ("W3", catalog.jordan_module("W3", 0, size=2)),
        ):
            p = tmp_path / f"{name}.json"
            p.write_text(dump_object(mod))
            names.append(str(p))
        code, out, _ = run_cli("solve", "fusion", "--modules", *names)
        assert code == 0 and "dimension: 2" in out

    def test_solve_with_window(self, tmp_path):
        names = []
        for name, mod in (
            ("W1", catalog.trivial_module("W1")),
            ("W2", catalog.trivial_module("W2")),
            ("W3", catalog.jordan_module("W3", 0, size=2)),
        ):
            p = tmp_path / f"{name}.json"
            p.write_text(dump_object(mod))
            names.append(str(p))
        code, out, _ = run_cli("solve", "fusion", "--modules", *names, "--window", "5")
        assert code == 0 and "dimension: 0" in out


class TestRoundtripVerb:
    def test_file_roundtrip(self, tmp_path, jordan2):
        path = tmp_path / "m.json"
        path.write_text(dump_object(jordan2))
        code, out, _ = run_cli("roundtrip", str(path))
        assert code == 0 and "PASS" in out

    def test_fuzz(self):
        code, out, _ = run_cli("roundtrip", "--fuzz", "200", "--seed", "3")
        assert code == 0 and "PASS" in out
