"""Verification suites behind ``gst verify``.

Every check is a top-level function returning one :class:`Record`, so a
suite is just a list of ``(function, kwargs)`` tasks. That keeps the tasks
picklable for process-parallel runs and lets results come back in task
order whatever the execution order was.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import kernelcheck as kc
from .branchfn import principal_pow
from .catalog import pair_point_mass, pair_power, pair_power_hyper
from .errors import DomainError, GSTError
from .quadrature import QuadConfig
from .transform import (
    CutPlaneFunction,
    TransformParams,
    abel_inverse_from_delta,
    abel_inverse_from_delta_prime,
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

__all__ = ["Record", "SUITES", "build_suite", "run_tasks"]


@dataclass
class Record:
    check: str
    params: dict
    lhs: float | None
    rhs: float | None
    abs_err: float | None
    rel_err: float | None
    passed: bool
    tol: dict = field(default_factory=dict)
    error: str | None = None

    def as_json(self) -> dict:
        out = {
            "check": self.check,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "pass": self.passed,
            "tol": self.tol,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


def _compare(check, params, lhs, rhs, rel_tol=None, abs_tol=None) -> Record:
    lhs, rhs = float(np.real(lhs)), float(np.real(rhs))
    abs_err = abs(lhs - rhs)
    rel_err = abs_err / abs(rhs) if rhs != 0 else None
    ok = False
    if rel_tol is not None and rel_err is not None:
        ok = rel_err <= rel_tol
    if abs_tol is not None:
        ok = ok or abs_err <= abs_tol
    tol = {k: v for k, v in (("rel", rel_tol), ("abs", abs_tol)) if v is not None}
    return Record(check, params, lhs, rhs, abs_err, rel_err, bool(ok), tol)


def _quad(rel_tol):
    return QuadConfig(rel_tol=rel_tol) if rel_tol else QuadConfig()


# Individual checks.  Each takes plain keyword arguments plus ``rel_tol`` (a
# quadrature override, or None) and returns a Record.


def chk_chi_vanishing(rho, x, t, rel_tol=None):
    val = abs(kc.chi_contour(rho, x, t, _quad(rel_tol)))
    return _compare("chi_vanishing", dict(rho=rho, x=x, t=t), val, 0.0,
                    abs_tol=1e-8 * max(x, t) ** (-rho - 1.0))


def chk_chi_symmetry(rho, x, t, rel_tol=None):
    val = kc.chi_symmetry_residual(rho, x, t, _quad(rel_tol))
    return _compare("chi_symmetry", dict(rho=rho, x=x, t=t), val, 0.0, abs_tol=2e-8)


def chk_chi_laplace(rho, x, y, rel_tol=None):
    kp = kc.KernelParams(rho=rho, quad=_quad(rel_tol))
    lhs, rhs = kc.chi_laplace_check(rho, x, y, kp)
    path = "quadrature" if float(rho).is_integer() else "series"
    return _compare("chi_laplace", dict(rho=rho, x=x, y=y, path=path), lhs, rhs, rel_tol=1e-4)


def chk_i2_ode(rho, modulus, theta, rel_tol=None):
    u = modulus * complex(math.cos(theta), math.sin(theta))
    res = kc.i2_ode_residual(u, rho)
    return _compare("i2_ode", dict(rho=rho, modulus=modulus, theta=theta), res, 0.0, abs_tol=1e-10)


def chk_contour_beta(n, rho, rel_tol=None):
    lhs, rhs = kc.contour_beta_identity(n, rho, _quad(rel_tol))
    return _compare("contour_beta", dict(n=n, rho=rho), lhs.real, rhs, rel_tol=1e-8)


def chk_termwise(rho, x, y, n_max, rel_tol=None):
    sums = kc.termwise_partial_sums(rho, x, y, n_max, _quad(rel_tol))
    rhs = x ** (-rho) * math.exp(-x * y)
    return _compare("termwise_sum", dict(rho=rho, x=x, y=y, n_max=n_max), sums[-1], rhs, rel_tol=1e-8)


def chk_exp_remainder(rho, x, y, n, rel_tol=None):
    # alternating series with decreasing terms: remainder below the first omitted term
    s = kc.exp_partial_sums(rho, x, y, n)[-1]
    rhs = x ** (-rho) * math.exp(-x * y)
    bound = x ** (-rho) * (x * y) ** (n + 1) / math.factorial(n + 1)
    return _compare("exp_remainder", dict(rho=rho, x=x, y=y, n=n), s, rhs, abs_tol=bound)


def chk_forward_power(nu, rho, z_re, z_im, rel_tol=None):
    pair = pair_power(nu, rho)
    p = TransformParams(rho, _quad(rel_tol))
    z = complex(z_re, z_im)
    got = forward_gst(pair.F, p, z)
    want = complex(pair.G(z))
    rec = _compare("forward_power", dict(nu=nu, rho=rho, z_re=z_re, z_im=z_im),
                   abs(got - want), 0.0, abs_tol=1e-7 * abs(want))
    rec.rel_err = abs(got - want) / abs(want)
    rec.lhs, rec.rhs = abs(got), abs(want)
    return rec


def _pair(name, **kw):
    if name == "power":
        return pair_power(kw["nu"], kw["rho"], continued=kw.get("continued", False))
    if name == "point":
        return pair_point_mass(kw["t"], kw["rho"])
    return pair_power_hyper(kw["nu"], kw["lam"], kw["rho"])


def chk_forward_pair(name, z_re, z_im, rel_tol=None, **kw):
    pair = _pair(name, **kw)
    p = TransformParams(pair.rho, _quad(rel_tol))
    z = complex(z_re, z_im)
    got = forward_gst(pair.F, p, z)
    want = complex(pair.G(z))
    rec = _compare("forward_pair", dict(pair=pair.label(), z_re=z_re, z_im=z_im),
                   abs(got - want), 0.0, abs_tol=1e-7 * abs(want))
    rec.rel_err = abs(got - want) / abs(want)
    rec.lhs, rec.rhs = abs(got), abs(want)
    return rec


def chk_disc_closed_form(nu, rho, t, rel_tol=None):
    pair = pair_power(nu, rho)
    got = discontinuity(pair.G, TransformParams(rho, _quad(rel_tol)), t)
    return _compare("disc_closed_form", dict(nu=nu, rho=rho, t=t), got, pair.delta(t), rel_tol=1e-5)


def chk_disc_rho1_identity(nu, t, rel_tol=None):
    pair = pair_power(nu, 1.0)
    return _compare("disc_equals_f_rho1", dict(nu=nu, t=t), pair.delta(t), pair.F(t), rel_tol=1e-12)


def chk_roundtrip(name, y, analytic=True, rel_tol=None, **kw):
    pair = _pair(name, **kw)
    p = TransformParams(pair.rho, _quad(rel_tol))
    G = pair.G if analytic else CutPlaneFunction(pair.G.func)
    got = inverse_gst(G, p, y)
    return _compare("roundtrip_eq9", dict(pair=pair.label(), y=y, analytic_derivative=analytic),
                    got, pair.F(y), rel_tol=1e-6)


def chk_point_sifting(t, rho, rel_tol=None):
    pair = pair_point_mass(t, rho)
    got = inverse_gst_laplace(pair.G, TransformParams(rho, _quad(rel_tol)), s=1.0)
    return _compare("point_mass_sifting", dict(t=t, rho=rho, test_function="exp(-y)"),
                    got, math.exp(-t), rel_tol=1e-3)


def _form_value(form, pair, p, y):
    if form == "eq9":
        return inverse_gst(pair.G, p, y)
    if form == "eq14":
        return inverse_gst_zplane(pair.G, p, y)
    if form == "eq15":
        return inverse_gst_ibp(pair.G, p, y)
    if form == "abel":
        delta = pair.delta or (lambda t: discontinuity(pair.G, p, t))
        return abel_inverse_from_delta(delta, p, y)
    raise ValueError(form)


def chk_forms(name, form_a, form_b, y, rel_tol=None, **kw):
    pair = _pair(name, **kw)
    p = TransformParams(pair.rho, _quad(rel_tol))
    a = _form_value(form_a, pair, p, y)
    b = _form_value(form_b, pair, p, y)
    return _compare(f"forms_{form_a}_{form_b}", dict(pair=pair.label(), y=y), a, b, rel_tol=1e-6)


def chk_rho1(nu, y, rel_tol=None):
    pair = pair_power(nu, 1.0)
    p = TransformParams(1.0, _quad(rel_tol))
    return _compare("rho1_disc_vs_eq9", dict(nu=nu, y=y),
                    inverse_gst(pair.G, p, y), stieltjes_disc_inverse(pair.G, p, y), rel_tol=1e-6)


def chk_iterated_laplace(name, z, rel_tol=None, **kw):
    pair = _pair(name, **kw)
    p = TransformParams(pair.rho, _quad(rel_tol))
    got = iterated_laplace_forward(pair.F, p, z)
    want = forward_gst(pair.F, p, z).real
    return _compare("iterated_laplace", dict(pair=pair.label(), z=z), got, want, rel_tol=1e-4)


def chk_delta_from_f(rho, nu, t, rel_tol=None):
    # The forward integral of y**(nu-1) diverges for nu >= rho; the
    # continued power pair supplies G (and forward_gst = G is checked in
    # the catalog suite wherever the integral exists).
    pair = pair_power(nu, rho, continued=True)
    p = TransformParams(rho, _quad(rel_tol))
    got = delta_from_f(pair.F, p, t)
    want = discontinuity(pair.G, p, t)
    return _compare("delta_from_f", dict(rho=rho, nu=nu, t=t), got, want, rel_tol=1e-4)


def chk_delta_from_f_rho1(nu, t, rel_tol=None):
    pair = pair_power(nu, 1.0, continued=True)
    got = delta_from_f(pair.F, TransformParams(1.0, _quad(rel_tol)), t)
    return _compare("delta_from_f_rho1", dict(nu=nu, t=t), got, pair.F(t), rel_tol=1e-12)


def chk_abel_delta(rho, nu, y, rel_tol=None):
    pair = pair_power(nu, rho, continued=True)
    got = abel_inverse_from_delta(pair.delta, TransformParams(rho, _quad(rel_tol)), y)
    return _compare("abel_delta", dict(rho=rho, nu=nu, y=y), got, pair.F(y), rel_tol=1e-6)


def chk_abel_delta_prime(rho, nu, y, rel_tol=None):
    pair = pair_power(nu, rho, continued=True)
    got = abel_inverse_from_delta_prime(pair.delta_prime, TransformParams(rho, _quad(rel_tol)), y)
    return _compare("abel_delta_prime", dict(rho=rho, nu=nu, y=y), got, pair.F(y), rel_tol=1e-6)


def _radial_g(name, **kw):
    """g(zeta) = G(zeta**2) continued from Re zeta > 0.

    On the imaginary axis zeta**2 lies on the cut of G, so the power factor
    is written as zeta**(2(nu - rho)) to take the boundary value from the
    right half plane. The hyper pair's 2F1 has its own cut there and is
    only usable on the arc path.
    """
    rho = 1.5
    if name == "power":
        pair = pair_power(kw["nu"], rho)
        coef = float(pair.G(1.0).real)
        e = 2.0 * (kw["nu"] - rho)
        return pair, lambda zeta: coef * principal_pow(zeta, e)
    pair = pair_power_hyper(kw["nu"], kw["lam"], rho)
    return pair, lambda zeta: pair.G(np.asarray(zeta, dtype=complex) ** 2)


def chk_radial(name, mu, path="arc", rel_tol=None, **kw):
    pair, g = _radial_g(name, **kw)

    got = radial_inverse(g, mu, _quad(rel_tol), path=path)
    return _compare("radial", dict(pair=pair.label(), mu=mu, path=path),
                    got, 2.0 * mu * pair.F(mu * mu), rel_tol=1e-6)


# Suites.


def _rhos(default, rho):
    return list(default) if rho is None else [rho]


def _non_integer(rs):
    return [r for r in rs if not float(r).is_integer()]


def suite_kernel(rho=None):
    tasks = []
    rhos = _rhos((0.5, 1.5, 2.5), rho)
    grid = (0.5, 1.0, 2.0, 4.0)
    for r in rhos:
        for x in grid:
            for t in grid:
                if abs(x - t) >= 0.1 * max(x, t):
                    tasks.append((chk_chi_vanishing, dict(rho=r, x=x, t=t)))
                    if x < t:
                        tasks.append((chk_chi_symmetry, dict(rho=r, x=x, t=t)))
    lap_rhos = _rhos((0.5, 1.5, 2.5, 1.0, 2.0), rho)
    for r in lap_rhos:
        for x in (0.5, 1.0, 2.0):
            for y in (0.5, 1.0):
                tasks.append((chk_chi_laplace, dict(rho=r, x=x, y=y)))
    for r in _non_integer(rhos):
        for m in (0.1, 1.0, 5.0):
            for th in (0.0, math.pi / 3):
                tasks.append((chk_i2_ode, dict(rho=r, modulus=m, theta=th)))
    for r in _non_integer(_rhos((0.3, 0.7, 1.4, 2.6), rho)):
        for n in range(11):
            tasks.append((chk_contour_beta, dict(n=n, rho=r)))
        tasks.append((chk_termwise, dict(rho=r, x=1.0, y=1.0, n_max=20)))
    for r in rhos:
        for n in (2, 5, 8):
            tasks.append((chk_exp_remainder, dict(rho=r, x=1.0, y=0.5, n=n)))
    return tasks


def suite_catalog(rho=None):
    tasks = []
    for r in _rhos((0.5, 1.0, 1.5, 2.5), rho):
        for z in ((0.5, 0.0), (1.0, 0.0), (2.0, 1.0)):
            tasks.append((chk_forward_power, dict(nu=r / 2, rho=r, z_re=z[0], z_im=z[1])))
    r = 1.5 if rho is None else rho
    pairs = [
        ("power", dict(nu=r / 2, rho=r)),
        ("point", dict(t=2.0, rho=r)),
        ("hyper", dict(nu=0.5, lam=1.0, rho=r)),
    ]
    for name, kw in pairs:
        for z in ((0.5, 0.0), (1.0, 0.0), (1.0, 0.5)):
            tasks.append((chk_forward_pair, dict(name=name, z_re=z[0], z_im=z[1], **kw)))
    for nu in (0.25 * r, 0.5 * r, 0.75 * r):
        if not float(r - nu).is_integer():
            for t in (0.5, 1.0, 2.0):
                tasks.append((chk_disc_closed_form, dict(nu=nu, rho=r, t=t)))
    for nu in (0.25, 0.5, 0.75):
        for t in (0.5, 1.0, 2.0):
            tasks.append((chk_disc_rho1_identity, dict(nu=nu, t=t)))
    return tasks


def suite_roundtrip(rho=None):
    tasks = []
    ys = (0.25, 1.0, 4.0)
    for r in _rhos((0.5, 1.0, 1.5, 2.5), rho):
        for y in ys:
            tasks.append((chk_roundtrip, dict(name="power", nu=r / 2, rho=r, y=y)))
            tasks.append((chk_roundtrip, dict(name="power", nu=r / 2, rho=r, y=y, analytic=False)))
    for r in _rhos((1.5,), rho):
        for y in ys:
            tasks.append((chk_roundtrip, dict(name="hyper", nu=0.5, lam=1.0, rho=r, y=y)))
        tasks.append((chk_point_sifting, dict(t=1.0, rho=r)))
    return tasks


def suite_forms(rho=None):
    tasks = []
    r = 1.5 if rho is None else rho
    pairs = [
        ("power", dict(nu=r / 3, rho=r)),
        ("power", dict(nu=2 * r / 3, rho=r)),
        ("hyper", dict(nu=0.5, lam=1.0, rho=r)),
        ("hyper", dict(nu=1.0, lam=1.0, rho=r)),
    ]
    for name, kw in pairs:
        others = ["eq14"]
        if r > 1:
            others.append("eq15")
            # the Abel form needs Delta integrable at 0, i.e. rho < nu + 1
            if r < kw["nu"] + 1:
                others.append("abel")
        for y in (0.5, 1.0, 2.0):
            for form in others:
                tasks.append((chk_forms, dict(name=name, form_a="eq9", form_b=form, y=y, **kw)))
    if rho is None or rho == 1.0:
        for nu in (0.25, 0.5, 0.75):
            for y in (0.5, 1.0, 2.0):
                tasks.append((chk_rho1, dict(nu=nu, y=y)))
    return tasks


def suite_laplace(rho=None):
    tasks = []
    r = 1.5 if rho is None else rho
    pairs = [
        ("power", dict(nu=r / 3, rho=r)),
        ("point", dict(t=2.0, rho=r)),
        ("hyper", dict(nu=0.5, lam=1.0, rho=r)),
    ]
    for name, kw in pairs:
        for z in (0.5, 1.0, 2.0):
            tasks.append((chk_iterated_laplace, dict(name=name, z=z, **kw)))
    return tasks


def _continued_ok(rho, nu):
    return 0 < nu < rho + 1 and not float(rho - nu).is_integer()


def suite_abel(rho=None):
    tasks = []
    nu = 1.5
    for r in _rhos((1.2, 1.8), rho):
        if r < 2 and r != 1.0 and _continued_ok(r, nu):
            for t in (0.5, 1.0, 2.0):
                tasks.append((chk_delta_from_f, dict(rho=r, nu=nu, t=t)))
        # Delta ~ t**(nu - rho) must be integrable at 0: rho < nu + 1
        if 1 < r < nu + 1 and _continued_ok(r, nu):
            for y in (1.0, 4.0):
                tasks.append((chk_abel_delta, dict(rho=r, nu=nu, y=y)))
    if rho is None or rho == 1.0:
        for t in (0.5, 1.0, 2.0):
            tasks.append((chk_delta_from_f_rho1, dict(nu=nu, t=t)))
    # Delta' ~ t**(nu - rho - 1) is integrable at 0 only for rho < nu
    cases = ((0.5, 1.2), (0.8, 1.5)) if rho is None else ((rho, rho + 0.7),)
    for r, n in cases:
        for y in (1.0, 4.0):
            tasks.append((chk_abel_delta_prime, dict(rho=r, nu=n, y=y)))
    return tasks


def suite_radial(rho=None):
    tasks = []
    if rho is not None and rho != 1.5:
        return tasks  # the radial form is specific to rho = 3/2
    for nu in (0.5, 0.75, 1.0):
        for mu in (0.5, 1.0, 2.0):
            tasks.append((chk_radial, dict(name="power", nu=nu, mu=mu)))
            if nu > 0.5:
                tasks.append((chk_radial, dict(name="power", nu=nu, mu=mu, path="segment")))
    tasks.append((chk_radial, dict(name="hyper", nu=0.5, lam=1.0, mu=1.0)))
    return tasks


SUITES: dict[str, Callable] = {
    "kernel": suite_kernel,
    "catalog": suite_catalog,
    "roundtrip": suite_roundtrip,
    "forms": suite_forms,
    "laplace": suite_laplace,
    "abel": suite_abel,
    "radial": suite_radial,
}


def build_suite(name: str, rho: float | None = None) -> list:
    if name == "all":
        return [t for fn in SUITES.values() for t in fn(rho)]
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    return SUITES[name](rho)


def _run_one(task, rel_tol):
    fn, kw = task
    try:
        return fn(rel_tol=rel_tol, **kw)
    except (GSTError, ArithmeticError) as exc:
        name = fn.__name__.removeprefix("chk_")
        return Record(name, dict(kw), None, None, None, None, False,
                      error=f"{type(exc).__name__}: {exc}")


def run_tasks(tasks, rel_tol=None, jobs: int = 1) -> list[Record]:
    """Run tasks, returning records in task order."""
    if jobs <= 1:
        return [_run_one(t, rel_tol) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_one, tasks, [rel_tol] * len(tasks)))
