import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest
from scipy import integrate

from gst import catalog, cli, verify
from gst.transform import CutPlaneFunction


def run(*argv):
    """The CLI in a subprocess, as a user would call it."""
    proc = subprocess.run([sys.executable, "-m", "gst.cli", *argv], capture_output=True, text=True, timeout=300)
    return proc.returncode, proc.stdout, proc.stderr


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestForward:
    def test_power_pair(self):
        code, out, _ = run("forward", "--pair", "power:nu=0.5,rho=1.5", "--grid", "1")
        assert code == 0
        (row,) = rows(out)
        assert list(row) == ["z_re", "z_im", "G_re", "G_im", "err_estimate"]
        assert float(row["G_re"]) == pytest.approx(2.0, rel=1e-12)
        assert float(row["G_im"]) == 0.0

    def test_point_pair(self):
        code, out, _ = run("forward", "--pair", "point:t=2,rho=1.5", "--grid", "1")
        assert code == 0
        assert float(rows(out)[0]["G_re"]) == pytest.approx(0.19245009, rel=1e-8)

    def test_complex_points_and_rho_flag(self):
        code, out, _ = run("forward", "--pair", "power:nu=0.5", "--rho", "1.5", "--point", "1+1i", "--point=-2+0.5i")
        assert code == 0
        got = [complex(float(r["G_re"]), float(r["G_im"])) for r in rows(out)]
        want = [2 * z**-1 for z in (1 + 1j, -2 + 0.5j)]
        np.testing.assert_allclose(got, want, rtol=1e-10)

    def test_log_grid(self):
        code, out, _ = run("forward", "--pair", "power:nu=0.5,rho=1.5", "--grid", "0.1:10:5:log")
        assert code == 0
        zs = [float(r["z_re"]) for r in rows(out)]
        np.testing.assert_allclose(zs, np.geomspace(0.1, 10, 5), rtol=1e-15)

    def test_tabulated_against_scipy(self, tmp_path):
        ys = np.linspace(0.2, 4.0, 30)
        fs = np.exp(-ys) * ys
        path = tmp_path / "f.csv"
        path.write_text("y,F\n" + "".join(f"{float(a)!r},{float(b)!r}\n" for a, b in zip(ys, fs)))
        code, out, _ = run("forward", "--tabulated", str(path), "--rho", "1.5", "--alpha", "0.5", "--grid", "0.5:2:3")
        assert code == 0
        for r in rows(out):
            z = float(r["z_re"])
            want = sum(
                integrate.quad(lambda y: (y + z) ** -1.5 * np.interp(y, ys, fs), a, b, epsabs=0, epsrel=1e-13)[0]
                for a, b in zip(ys[:-1], ys[1:])
            )
            assert float(r["G_re"]) == pytest.approx(want, rel=1e-11)

    def test_json_mirrors_csv(self):
        args = ("forward", "--pair", "hyper:nu=0.5,lambda=1,rho=1.5", "--grid", "0.5:2:4")
        _, out_csv, _ = run(*args)
        _, out_json, _ = run(*args, "--format", "json")
        recs = json.loads(out_json)
        assert [list(r) for r in recs] == [list(rows(out_csv)[0])] * 4
        for rec, row in zip(recs, rows(out_csv)):
            assert all(rec[k] == float(row[k]) for k in row)

    def test_deterministic_and_parallel_identical(self, tmp_path):
        args = ("forward", "--pair", "hyper:nu=0.5,lambda=1,rho=1.5", "--grid", "0.25:4:6:log")
        outs = []
        for extra in ((), (), ("--jobs", "2")):
            target = tmp_path / f"out{len(outs)}.csv"
            assert run(*args, "--out", str(target), *extra)[0] == 0
            outs.append(target.read_bytes())
        assert outs[0] == outs[1] == outs[2]

    def test_seventeen_digits(self):
        _, out, _ = run("forward", "--pair", "point:t=2,rho=1.5", "--grid", "1")
        assert rows(out)[0]["G_re"] == format(3**-1.5, ".17g")


class TestInverse:
    def test_eq9(self):
        code, out, _ = run("inverse", "--pair", "power:nu=0.5,rho=1.5", "--grid", "4")
        assert code == 0
        (row,) = rows(out)
        assert list(row) == ["y", "F", "err_estimate", "form"]
        assert float(row["F"]) == pytest.approx(0.5, rel=1e-12)
        assert row["form"] == "eq9"

    @pytest.mark.parametrize("form", ["eq14", "eq15", "abel"])
    def test_other_forms(self, form):
        code, out, _ = run("inverse", "--pair", "power:nu=0.75,rho=1.5", "--grid", "0.5:2:3", "--form", form)
        assert code == 0
        for r in rows(out):
            assert float(r["F"]) == pytest.approx(float(r["y"]) ** -0.25, rel=1e-9)

    def test_abel_existence_condition(self):
        # rho = nu + 1: the jump is t**(-1), not integrable at 0
        code, _, err = run("inverse", "--pair", "power:nu=0.5,rho=1.5", "--grid", "1", "--form", "abel")
        assert code == 2
        assert "rho < nu + 1" in err

    def test_disc_rho1(self):
        code, out, _ = run("inverse", "--pair", "power:nu=0.5,rho=1.0", "--grid", "1", "--form", "disc-rho1")
        assert code == 0
        assert float(rows(out)[0]["F"]) == pytest.approx(1.0, rel=1e-8)

    def test_eq15_precondition(self):
        code, _, err = run("inverse", "--pair", "power:nu=0.5", "--rho", "0.9", "--grid", "1", "--form", "eq15")
        assert code == 2
        assert "rho > 1" in err

    def test_tabulated_refused(self, tmp_path):
        path = tmp_path / "g.csv"
        path.write_text("y,F\n1,1\n2,2\n")
        code, _, err = run("inverse", "--tabulated", str(path), "--rho", "1.5", "--grid", "1")
        assert code == 2
        assert "refused" in err


class TestDisc:
    def test_power(self):
        code, out, _ = run("disc", "--pair", "power:nu=0.3,rho=1.5", "--grid", "1:2:2")
        assert code == 0
        pair = catalog.pair_power(0.3, 1.5)
        for r in rows(out):
            assert float(r["Delta"]) == pytest.approx(pair.delta(float(r["t"])), rel=1e-8)


class TestExitCodes:
    @pytest.mark.parametrize(
        "argv",
        [
            ("forward", "--pair", "bogus:nu=1", "--grid", "1"),
            ("forward", "--pair", "power:nu=0.5,rho=1.5", "--grid", "1:2"),
            ("forward", "--pair", "power:nu=0.5,rho=1.5", "--grid", "-1"),
            ("forward", "--pair", "power:nu=2,rho=1.5", "--grid", "1"),
            ("forward", "--pair", "power:nu=0.5,rho=1.5"),
            ("inverse", "--pair", "power:nu=0.5,rho=1.5", "--grid", "0"),
            ("inverse", "--pair", "power:nu=0.5,rho=1.5", "--grid", "1", "--form", "disc-rho1"),
            ("verify", "--suite", "nonsense"),
            ("forward", "--jobs", "0", "--pair", "power:nu=0.5,rho=1.5", "--grid", "1"),
        ],
    )
    def test_usage_errors(self, argv):
        code, out, err = run(*argv)
        assert code == 2
        assert out == ""
        assert err

    def test_numerical_failure(self):
        # next to the cut the forward integrand is too sharply peaked
        code, out, err = run("forward", "--pair", "hyper:nu=0.5,lambda=1,rho=1.5", "--point=-1+1e-12i")
        assert code == 3
        assert "numerical failure" in err and out == ""

    def test_best_effort(self):
        code, out, err = run("forward", "--pair", "hyper:nu=0.5,lambda=1,rho=1.5", "--point=-1+1e-12i", "--best-effort")
        assert code == 0
        assert "warning" in err
        (row,) = rows(out)
        assert math.isfinite(float(row["G_re"])) and float(row["err_estimate"]) > 1e-6

    def test_imaginary_residue(self, monkeypatch, capsys):
        real_parse = catalog.parse_pair

        def bad_parse(text, rho=None):
            pair = real_parse(text, rho)
            G = CutPlaneFunction(lambda z: 1j * pair.G.func(z), lambda z: 1j * pair.G.deriv(z))
            return catalog.TransformPair(pair.name, pair.F, G, pair.params)

        monkeypatch.setattr(cli, "parse_pair", bad_parse)
        assert cli.main(["inverse", "--pair", "power:nu=0.5,rho=1.5", "--grid", "1"]) == 4
        assert "imaginary" in capsys.readouterr().err


class TestVerify:
    def test_kernel_suite_integer_rho(self, tmp_path):
        out = tmp_path / "r.json"
        code, _, err = run("verify", "--suite", "kernel", "--rho", "1.0", "--out", str(out))
        assert code == 0
        report = json.loads(out.read_text())
        assert report["n_failed"] == 0 and report["n_checks"] > 0
        assert any(r["check"] == "chi_laplace" and r["params"]["rho"] == 1.0 for r in report["records"])
        rec = report["records"][0]
        assert {"check", "params", "lhs", "rhs", "abs_err", "rel_err", "pass", "tol"} <= set(rec)
        assert "checks passed" in err

    def test_roundtrip_suite(self):
        code, out, _ = run("verify", "--suite", "roundtrip")
        assert code == 0
        assert all(r["pass"] for r in json.loads(out)["records"])

    def test_failed_check_exit_1(self, monkeypatch, capsys):
        monkeypatch.setattr(verify, "build_suite", lambda name, rho=None: [(verify.chk_rho1, dict(nu=0.5, y=1.0))])
        real = verify._compare
        monkeypatch.setattr(verify, "_compare", lambda check, params, lhs, rhs, **kw: real(check, params, lhs, rhs + 1.0, **kw))
        assert cli.main(["verify"]) == 1
        assert "FAIL" in capsys.readouterr().err

    def test_erroring_check_exit_3(self, monkeypatch, capsys):
        # a precondition violated inside a check is a failed run, not a failed check
        monkeypatch.setattr(verify, "build_suite", lambda name, rho=None: [(verify.chk_rho1, dict(nu=0.5, y=-1.0))])
        assert cli.main(["verify"]) == 3
        report = json.loads(capsys.readouterr().out)
        assert report["records"][0]["error"].startswith("DomainError")


def test_pairs_listing():
    code, out, _ = run("pairs", "--format", "json")
    assert code == 0
    assert [r["name"] for r in json.loads(out)] == list(catalog.PAIR_NAMES)


@pytest.mark.parametrize(
    "text,want",
    [("1", [1.0]), ("0:1:3", [0.0, 0.5, 1.0]), ("1:100:3:log", [1.0, 10.0, 100.0])],
)
def test_parse_grid(text, want):
    np.testing.assert_allclose(cli.parse_grid(text), want, rtol=1e-15)


@pytest.mark.parametrize("text", ["", "a:b:c", "1:2:0", "0:1:3:log", "1:2:3:cubic", "nan"])
def test_parse_grid_errors(text):
    with pytest.raises(cli.UsageError):
        cli.parse_grid(text)


def test_parse_point():
    assert cli.parse_point("1+0.5i") == 1 + 0.5j
    assert cli.parse_point("-2") == -2
    with pytest.raises(cli.UsageError):
        cli.parse_point("one")
