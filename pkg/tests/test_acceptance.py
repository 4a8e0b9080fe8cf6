"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Every numeric target is compared against an oracle computed here (closed
forms through mpmath, recursions written out afresh), never against the
package's own helpers for the same quantity. Run directly with
``python tests/test_acceptance.py`` or as part of ``pytest``.
"""

import math
import subprocess
import sys
import time

import mpmath
import numpy as np
import pytest

from gst.catalog import pair_point_mass, pair_power, pair_power_hyper
from gst.kernelcheck import (
    KernelParams,
    chi_contour,
    chi_laplace_check,
    chi_symmetry_residual,
    contour_beta_identity,
)
from gst.branchfn import principal_pow
from gst.transform import (
    CutPlaneFunction,
    TransformParams,
    abel_inverse_from_delta,
    delta_from_f,
    discontinuity,
    forward_gst,
    inverse_gst,
    inverse_gst_ibp,
    inverse_gst_laplace,
    inverse_gst_zplane,
    iterated_laplace_forward,
    radial_inverse,
    stieltjes_disc_inverse,
)


def relerr(a, b):
    return abs(a - b) / abs(b)


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


def power_g_oracle(nu, rho, z):
    return complex(mpmath.beta(nu, rho - nu) * mpmath.power(mpmath.mpc(z), nu - rho))


def test_criterion_01_power_forward(report):
    worst, slowest = 0.0, 0.0
    for rho in (0.5, 1.0, 1.5, 2.5):
        nu = rho / 2
        F = pair_power(nu, rho).F
        for z in (0.5, 1.0, 2 + 1j):
            got, dt = timed(forward_gst, F, TransformParams(rho), z)
            worst = max(worst, relerr(got, power_g_oracle(nu, rho, z)))
            slowest = max(slowest, dt)
    ok = worst <= 1e-7 and slowest < 1.0
    report(1, ok, f"power forward: max rel err {worst:.2e} (tol 1e-7), slowest point {slowest:.3f}s (< 1s)")
    assert ok


def test_criterion_02_inverse_round_trip(report):
    cases = [pair_power(rho / 2, rho) for rho in (0.5, 1.0, 1.5, 2.5)]
    cases += [pair_power(0.5, 1.5), pair_power_hyper(0.5, 1.0, 1.5)]
    worst, slowest = 0.0, 0.0
    for pair in cases:
        nu = pair.params["nu"]
        lam = pair.params.get("lambda", 0.0)
        for y in (0.25, 1.0, 4.0):
            got, dt = timed(inverse_gst, pair.G, TransformParams(pair.rho), y)
            want = y ** (nu - 1.0) * (1.0 + y) ** (-lam)
            worst = max(worst, relerr(got, want))
            slowest = max(slowest, dt)
    ok = worst <= 1e-6 and slowest < 5.0
    report(2, ok, f"inverse round trip (power, power-hyper pairs): max rel err {worst:.2e} (tol 1e-6), slowest {slowest:.2f}s (< 5s)")
    assert ok


def test_criterion_03_point_mass_sifting(report):
    t, rho = 1.0, 1.5
    pair = pair_point_mass(t, rho)
    # int_0^inf exp(-y) F(y) dy with F the inverse of (t + z)**(-rho)
    got = inverse_gst_laplace(pair.G, TransformParams(rho), s=1.0)
    err = relerr(got, math.exp(-t))
    ok = err <= 1e-3
    report(3, ok, f"point-mass sifting against exp(-y): {got:.12f} vs e^-1, rel err {err:.2e} (tol 1e-3)")
    assert ok


def test_criterion_04_kernel_laplace(report):
    worst, slowest = 0.0, 0.0
    for rho in (0.5, 1.5, 2.5, 1.0, 2.0):
        kp = KernelParams(rho=rho)
        for x in (0.5, 1.0, 2.0):
            for y in (0.5, 1.0):
                (lhs, _), dt = timed(chi_laplace_check, rho, x, y, kp)
                rhs = x ** (-rho) * math.exp(-x * y)
                worst = max(worst, abs(lhs - rhs) / rhs)
                slowest = max(slowest, dt)
    ok = worst <= 1e-4 and slowest < 30.0
    report(4, ok, f"kernel Laplace identity (rho 0.5,1.5,2.5 + integer 1,2): max rel err {worst:.2e} (tol 1e-4), slowest {slowest:.2f}s (< 30s)")
    assert ok


def test_criterion_05_off_diagonal_and_symmetry(report):
    grid = (0.5, 1.0, 2.0, 4.0)
    worst_ratio, worst_sym = 0.0, 0.0
    for rho in (0.5, 1.5, 2.5):
        for x in grid:
            for t in grid:
                if abs(x - t) < 0.1 * max(x, t):
                    continue
                bound = 1e-8 * max(x, t) ** (-rho - 1.0)
                worst_ratio = max(worst_ratio, abs(chi_contour(rho, x, t)) / bound)
                worst_sym = max(worst_sym, chi_symmetry_residual(rho, x, t))
    ok = worst_ratio <= 1.0 and worst_sym <= 2e-8
    report(5, ok, f"chi off-diagonal: max |chi|/bound {worst_ratio:.2e} (<= 1), symmetry residual {worst_sym:.2e} (<= 2e-8)")
    assert ok


def test_criterion_06_contour_beta(report):
    worst = 0.0
    for rho in (0.3, 0.7, 1.4, 2.6):
        c = 1.0 / rho
        for n in range(11):
            if n > 0:
                c = c / (n - rho)  # (n + 1 - rho) c_{n+1} = c_n, shifted index
            lhs, _ = contour_beta_identity(n, rho)
            recursion = (-1) ** n / (rho * c * math.factorial(n))
            beta_form = float(-mpmath.sin(mpmath.pi * (n - rho)) / mpmath.pi * mpmath.beta(n - rho + 1, rho))
            assert relerr(recursion, beta_form) < 1e-12
            worst = max(worst, relerr(lhs.real, recursion), abs(lhs.imag) / abs(recursion))
    ok = worst <= 1e-8
    report(6, ok, f"contour-beta identity n <= 10: max rel err {worst:.2e} (tol 1e-8)")
    assert ok


def test_criterion_07_form_equivalence(report):
    pairs = [
        pair_power(0.5, 1.5),
        pair_power(1.0, 1.5),
        pair_power_hyper(0.5, 1.0, 1.5),
        pair_power_hyper(1.0, 1.0, 1.5),
    ]
    worst = 0.0
    n_abel = 0
    for pair in pairs:
        p = TransformParams(pair.rho)
        nu = pair.params["nu"]
        for y in (0.5, 1.0, 2.0):
            vals = [inverse_gst(pair.G, p, y), inverse_gst_zplane(pair.G, p, y), inverse_gst_ibp(pair.G, p, y)]
            if pair.rho < nu + 1:
                delta = pair.delta or (lambda t, G=pair.G: discontinuity(G, p, t))
                vals.append(abel_inverse_from_delta(delta, p, y))
                n_abel += 1
            for i in range(len(vals)):
                for j in range(i + 1, len(vals)):
                    worst = max(worst, relerr(vals[i], vals[j]))
    ok = worst <= 1e-6 and n_abel == 6
    report(7, ok, f"inverse forms eq9/eq14/eq15/abel pairwise: max rel diff {worst:.2e} (tol 1e-6), {n_abel} Abel comparisons")
    assert ok


def test_criterion_08_rho1_consistency(report):
    worst = 0.0
    p = TransformParams(1.0)
    for nu in (0.25, 0.5, 0.75):
        pair = pair_power(nu, 1.0)
        for y in (0.5, 1.0, 2.0):
            worst = max(worst, relerr(inverse_gst(pair.G, p, y), stieltjes_disc_inverse(pair.G, p, y)))
    ok = worst <= 1e-6
    report(8, ok, f"rho = 1 contour inverse vs discontinuity: max rel diff {worst:.2e} (tol 1e-6)")
    assert ok


def test_criterion_09_iterated_laplace(report):
    worst = 0.0
    for pair in (pair_power(0.5, 1.5), pair_point_mass(2.0, 1.5), pair_power_hyper(0.5, 1.0, 1.5)):
        p = TransformParams(pair.rho)
        for z in (0.5, 1.0, 2.0):
            worst = max(worst, relerr(iterated_laplace_forward(pair.F, p, z), forward_gst(pair.F, p, z).real))
    ok = worst <= 1e-4
    report(9, ok, f"iterated Laplace vs forward on all pairs: max rel diff {worst:.2e} (tol 1e-4)")
    assert ok


def _numeric_g(F, p):
    return CutPlaneFunction(lambda z: np.vectorize(lambda q: forward_gst(F, p, complex(q)))(z))


def test_criterion_10_inverse_abel(report):
    worst = 0.0
    nu = 1.5
    for rho in (1.2, 1.8):
        F = pair_power(nu, rho, continued=True).F
        if nu < rho:
            # the forward integral exists: take the jump of the computed transform
            p = TransformParams(rho, disc_offset=1e-4)
            G = _numeric_g(F, p)
        else:
            # it diverges; the jump belongs to the continuation in nu
            p = TransformParams(rho)
            G = pair_power(nu, rho, continued=True).G
        for t in (0.5, 1.0, 2.0):
            worst = max(worst, relerr(delta_from_f(F, p, t), discontinuity(G, p, t)))
    F = pair_power(0.5, 1.0).F
    rho1 = max(relerr(delta_from_f(F, TransformParams(1.0), t), t ** -0.5) for t in (0.5, 1.0, 2.0))
    ok = worst <= 1e-4 and rho1 == 0.0
    report(10, ok, f"inverse Abel vs discontinuity: max rel diff {worst:.2e} (tol 1e-4); rho = 1 gives F exactly: {rho1 == 0.0}")
    assert ok


def test_criterion_11_radial(report):
    worst = 0.0
    rho = 1.5
    for nu in (0.5, 0.75, 1.0):
        coef = float(mpmath.beta(nu, rho - nu))

        def g(zeta, coef=coef, e=2 * (nu - rho)):
            return coef * principal_pow(zeta, e)

        for mu in (0.5, 1.0, 2.0):
            worst = max(worst, relerr(radial_inverse(g, mu), 2 * mu * (mu * mu) ** (nu - 1)))
    ok = worst <= 1e-6
    report(11, ok, f"radial rho = 3/2 form: max rel err {worst:.2e} (tol 1e-6)")
    assert ok


@pytest.mark.slow
def test_criterion_12_full_verify(report, tmp_path):
    out = tmp_path / "report.json"
    t0 = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "gst.cli", "verify", "--suite", "all", "--out", str(out)],
        capture_output=True, text=True, timeout=900,
    )
    dt = time.perf_counter() - t0
    summary = proc.stderr.strip().splitlines()[-1] if proc.stderr.strip() else ""
    ok = proc.returncode == 0 and dt < 600
    report(12, ok, f"gst verify --suite all: exit {proc.returncode}, {dt:.1f}s (< 600s); {summary}")
    assert ok, proc.stderr


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
