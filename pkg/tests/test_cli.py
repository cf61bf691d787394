import json
import subprocess
import sys
from fractions import Fraction

from padiczeta import euler
from padiczeta.cli import main
from padiczeta.padic import PadicContext, from_json_dict
from padiczeta.report import (
    compare_exact,
    compare_values,
    report_to_json_line,
    reports_to_csv,
)


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCompute:
    def test_zeta_czp_at_one(self, capsys):
        code, out, _ = run_cli(
            ["compute", "--p", "5", "--prec", "12", "zeta-czp", "--s", "1", "--x", "1/5"],
            capsys,
        )
        assert code == 0
        assert out.startswith("5^0 * (1")

    def test_euler_number(self, capsys):
        code, out, _ = run_cli(
            ["compute", "--p", "5", "--prec", "12", "euler-number", "--m", "4"], capsys
        )
        assert code == 0 and out.strip() == "5"

    def test_euler_poly(self, capsys):
        code, out, _ = run_cli(
            ["compute", "euler-poly", "--m", "1", "--x", "3"], capsys
        )
        assert code == 0 and out.strip() == "5/2"

    def test_teichmuller_json_round_trip(self, capsys):
        code, out, _ = run_cli(
            [
                "compute", "--p", "5", "--prec", "4", "--guard", "0",
                "teichmuller", "--x", "2", "--format", "json",
            ],
            capsys,
        )
        assert code == 0
        payload = json.loads(out)
        value = from_json_dict(payload["value"])
        assert value.integer_rep(4) == 182

    def test_ell_matches_library(self, capsys):
        code, out, _ = run_cli(
            [
                "compute", "--p", "5", "--prec", "12",
                "ell", "--char", "1:1", "--s", "2", "--format", "json",
            ],
            capsys,
        )
        assert code == 0
        from padiczeta.characters import DirichletCharacter
        from padiczeta.padic import agreement_depth
        from padiczeta.zeta_char import ell_limit_oracle

        ctx = PadicContext(5, 12)
        value = from_json_dict(json.loads(out)["value"])
        oracle = ell_limit_oracle(ctx, DirichletCharacter(5, 1, 1), 2, 5)
        assert agreement_depth(value, oracle) >= 5

    def test_domain_error_exit_code(self, capsys):
        code, _, err = run_cli(
            ["compute", "--p", "5", "zeta-czp", "--s", "1", "--x", "3"], capsys
        )
        assert code == 2
        obj = json.loads(err.strip().splitlines()[-1])
        assert obj["error"]["code"] == "ArgumentInZp"

    def test_missing_operand(self, capsys):
        code, _, err = run_cli(["compute", "zeta-czp", "--s", "1"], capsys)
        assert code == 2


class TestVerifyCommand:
    def test_small_identity_passes(self, capsys):
        code, out, err = run_cli(
            ["verify", "--p", "3", "--prec", "12", "--identity", "functional-czp"],
            capsys,
        )
        assert code == 0
        assert "functional-czp" in out and "fail" not in out

    def test_json_stream_parses(self, capsys):
        code, out, _ = run_cli(
            [
                "verify", "--p", "5", "--prec", "12", "--format", "json",
                "--identity", "euler-exact,zeta-one",
            ],
            capsys,
        )
        assert code == 0
        lines = [json.loads(line) for line in out.strip().splitlines()]
        assert all(obj["status"] == "pass" for obj in lines)
        assert {obj["identity"] for obj in lines} >= {"euler-conversion", "zeta-one"}

    def test_unknown_identity(self, capsys):
        code, _, err = run_cli(["verify", "--identity", "nope"], capsys)
        assert code == 2

    def test_list_identities(self, capsys):
        code, out, _ = run_cli(["verify", "--list-identities"], capsys)
        assert code == 0 and "raabe-czp" in out.split()

    def test_report_both_forms_adds_variant(self, capsys):
        code, out, _ = run_cli(
            [
                "verify", "--p", "5", "--prec", "12", "--identity", "raabe-czp",
                "--report-both-forms", "--format", "json",
            ],
            capsys,
        )
        assert code == 0
        lines = [json.loads(line) for line in out.strip().splitlines()]
        variants = [l for l in lines if l["identity"] == "raabe-czp-variant"]
        assert variants and all(v["status"] == "pass" for v in variants)
        # the variant's residual is recorded: agreement depth well below target
        assert any(v["agreement_depth"] is not None and v["agreement_depth"] <= 2 for v in variants)

    def test_calibrate_writes_fixture(self, capsys, tmp_path):
        out_path = tmp_path / "fixture.json"
        code, out, _ = run_cli(
            [
                "verify", "--p", "5", "--prec", "12", "--oracle-depth", "3",
                "--calibrate", "-o", str(out_path),
            ],
            capsys,
        )
        assert code == 0
        obj = json.loads(out_path.read_text())
        assert obj["version"] == 1
        assert set(obj["families"]) >= {"oracle-czp", "oracle-char"}


class TestTableCommand:
    def test_euler_table_matches_cache_bytes(self, capsys, tmp_path):
        out_path = tmp_path / "euler.json"
        code, _, _ = run_cli(["table", "euler", "--max", "20", "-o", str(out_path)], capsys)
        assert code == 0
        cached = euler.save_table(euler.build_table(20), tmp_path / "cache.json")
        assert out_path.read_bytes() == cached.read_bytes()

    def test_zeta_values_csv_deterministic(self, capsys):
        args = [
            "table", "--p", "5", "--prec", "10", "zeta-values",
            "--s-list", "0,1,2", "--x-list", "1/5,2/5",
        ]
        code1, out1, _ = run_cli(args, capsys)
        code2, out2, _ = run_cli(args, capsys)
        assert code1 == code2 == 0
        assert out1 == out2
        assert out1.splitlines()[0] == "p,prec,s,x,value"
        assert len(out1.strip().splitlines()) == 7

    def test_ell_values_even_rows_vanish(self, capsys):
        code, out, _ = run_cli(
            [
                "table", "--p", "7", "--prec", "10", "ell-values",
                "--chars", "0..5", "--s-list", "0,2", "--format", "json",
            ],
            capsys,
        )
        assert code == 0
        rows = json.loads(out)
        assert len(rows) == 12
        for row in rows:
            k = int(row["char"].split(":")[1])
            value = from_json_dict(row["value_json"])
            if k % 2 == 0:
                assert value.is_zero()
            else:
                assert not value.is_zero()

    def test_json_values_round_trip(self, capsys):
        code, out, _ = run_cli(
            [
                "table", "--p", "5", "--prec", "8", "zeta-values",
                "--s-list", "2", "--x-list", "1/5", "--format", "json",
            ],
            capsys,
        )
        rows = json.loads(out)
        value = from_json_dict(rows[0]["value_json"])
        from padiczeta.zeta_czp import SeriesBudget, zeta_czp

        ctx = PadicContext(5, 8)
        assert value == zeta_czp(ctx, 2, Fraction(1, 5), SeriesBudget(target_prec=8))


class TestInstalledEntryPoint:
    def test_console_script_runs(self):
        proc = subprocess.run(
            [sys.executable, "-m", "padiczeta.cli", "compute", "--p", "5",
             "euler-number", "--m", "6"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip() == "-61"


class TestReportRendering:
    def test_json_line_stable(self, ctx5):
        rep = compare_values(
            "demo", {"p": 5, "x": Fraction(1, 5)}, ctx5.one(), ctx5.one()
        )
        obj = json.loads(report_to_json_line(rep))
        assert obj["identity"] == "demo" and obj["status"] == "pass"
        assert obj["params"] == {"p": "5", "x": "1/5"}

    def test_exact_report(self):
        rep = compare_exact("demo-exact", {"m": 3}, Fraction(1, 2), Fraction(1, 2))
        assert rep.status == "pass" and rep.agreement_depth is None

    def test_csv_rendering(self, ctx5):
        reps = [
            compare_values("a", {"p": 5}, ctx5.one(), ctx5.one()),
            compare_exact("b", {}, Fraction(0), Fraction(1)),
        ]
        text = reports_to_csv(reps)
        lines = text.splitlines()
        assert lines[0].startswith("identity,status")
        assert len(lines) == 3
        assert ",fail," in lines[2]

    def test_required_depth_slack_rule(self, ctx5):
        a = ctx5.from_int(1, relprec=10)
        b = ctx5.from_int(1 + 5**8, relprec=10)
        rep = compare_values("slack", {}, a, b)
        assert rep.status == "fail" and rep.agreement_depth == 8
        rep2 = compare_values("slack", {}, a, b, slack=2)
        assert rep2.status == "pass"
