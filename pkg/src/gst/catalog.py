"""Closed-form transform pairs used as oracles.

Three pairs ship:

* ``power``:  F = y**(nu-1),                   G = B(nu, rho-nu) z**(nu-rho)
* ``point``:  F = delta(y - t),                G = (t + z)**(-rho)
* ``hyper``:  F = y**(nu-1) (1+y)**(-lambda),  G = B(nu, rho+lambda-nu) z**(nu-rho)
                                                   2F1(nu, lambda; rho+lambda; 1-z)

Pairs are immutable. Parameters outside a pair's validity range are
rejected, never clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .branchfn import beta_fn, gamma_fn, hyp2f1, principal_pow
from .errors import DomainError, PoleError
from .transform import CutPlaneFunction, SourceFunction

__all__ = [
    "TransformPair",
    "pair_power",
    "pair_point_mass",
    "pair_power_hyper",
    "parse_pair",
    "PAIR_NAMES",
]


@dataclass(frozen=True)
class TransformPair:
    name: str
    F: SourceFunction
    G: CutPlaneFunction
    params: Mapping[str, float] = field(default_factory=dict)
    delta: Callable | None = None
    delta_prime: Callable | None = None

    @property
    def rho(self) -> float:
        return self.params["rho"]

    def f_value(self, y):
        """F evaluated pointwise (density part only)."""
        return self.F(y)

    def label(self) -> str:
        args = ",".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.name}:{args}"


def pair_power(nu: float, rho: float, continued: bool = False) -> TransformPair:
    """``F = y**(nu - 1)`` with ``G = B(nu, rho - nu) z**(nu - rho)``, ``0 < nu < rho``.

    ``continued=True`` also admits ``rho <= nu < rho + 1`` (non-integer
    ``rho - nu``). The forward integral diverges there, but G, taken as the
    analytic continuation in nu, still has the closed-form discontinuity
    below, and the Abel formulas hold for it.
    """
    nu, rho = float(nu), float(rho)
    if not (0 < nu < rho):
        ok = continued and 0 < nu < rho + 1 and not float(rho - nu).is_integer()
        if not ok:
            raise DomainError(f"power pair needs 0 < nu < rho (nu={nu}, rho={rho})")
    coef = beta_fn(nu, rho - nu)
    # B(nu, rho-nu) sin(pi(rho-nu))/pi after reflection; finite on the continued range too.
    try:
        jump = gamma_fn(nu) / (gamma_fn(rho) * gamma_fn(1.0 + nu - rho))
    except PoleError:
        # integer rho - nu: G is a pure pole power with no jump across the cut
        jump = 0.0
    e = nu - rho

    def G(z):
        return coef * principal_pow(z, e)

    def dG(z):
        return coef * e * principal_pow(z, e - 1.0)

    def delta(t):
        return jump * np.power(t, e)

    def delta_prime(t):
        return jump * e * np.power(t, e - 1.0)

    return TransformPair(
        name="power",
        F=SourceFunction.power_law(nu),
        G=CutPlaneFunction(G, dG, beta=rho - nu),
        params={"nu": nu, "rho": rho},
        delta=delta,
        delta_prime=delta_prime,
    )


def pair_point_mass(t: float, rho: float) -> TransformPair:
    """``F = delta(y - t)`` with ``G = (t + z)**(-rho)``."""
    t, rho = float(t), float(rho)
    if not t > 0:
        raise DomainError(f"point-mass pair needs t > 0 (t={t})")
    if not rho > 0:
        raise DomainError("rho must be positive")

    def G(z):
        return principal_pow(t + np.asarray(z), -rho)

    def dG(z):
        return -rho * principal_pow(t + np.asarray(z), -rho - 1.0)

    return TransformPair(
        name="point",
        F=SourceFunction.point_mass(t),
        G=CutPlaneFunction(G, dG, beta=rho),
        params={"t": t, "rho": rho},
    )


def pair_power_hyper(nu: float, lam: float, rho: float) -> TransformPair:
    """``F = y**(nu-1) (1+y)**(-lambda)``, valid for ``0 < nu < rho + lambda``.

    G involves ``2F1(nu, lambda; rho+lambda; 1-z)``: the Gauss series inside
    ``|1 - z| < 0.95`` and the analytic continuation (cut ``z <= 0``) outside.
    """
    nu, lam, rho = float(nu), float(lam), float(rho)
    if not rho > 0:
        raise DomainError("rho must be positive")
    if not 0 < nu < rho + lam:
        raise DomainError(f"power_hyper pair needs 0 < nu < rho + lambda (nu={nu})")
    c = rho + lam
    coef = beta_fn(nu, c - nu)
    e = nu - rho
    dcoef = nu * lam / c

    def G(z):
        z = np.asarray(z, dtype=complex)
        return coef * principal_pow(z, e) * hyp2f1(nu, lam, c, 1.0 - z)

    def dG(z):
        z = np.asarray(z, dtype=complex)
        zp = principal_pow(z, e - 1.0)
        x = 1.0 - z
        return coef * zp * (e * hyp2f1(nu, lam, c, x) - z * dcoef * hyp2f1(nu + 1, lam + 1, c + 1, x))

    return TransformPair(
        name="hyper",
        F=SourceFunction.power_hyper(nu, lam),
        G=CutPlaneFunction(G, dG, beta=rho - nu + min(nu, lam)),
        params={"nu": nu, "lambda": lam, "rho": rho},
    )


_BUILDERS = {
    "power": (pair_power, ("nu", "rho")),
    "point": (pair_point_mass, ("t", "rho")),
    "hyper": (pair_power_hyper, ("nu", "lambda", "rho")),
}
PAIR_NAMES = tuple(_BUILDERS)


def parse_pair(text: str, rho: float | None = None) -> TransformPair:
    """Build a pair from ``name:key=value,...``, e.g. ``power:nu=0.5,rho=1.5``.

    ``rho`` fills in a missing ``rho`` key; a conflicting value is an error.
    """
    name, _, rest = text.strip().partition(":")
    name = name.strip().lower()
    if name not in _BUILDERS:
        raise DomainError(f"unknown pair {name!r}; choose from {', '.join(PAIR_NAMES)}")
    builder, keys = _BUILDERS[name]
    values: dict[str, float] = {}
    if rest.strip():
        for item in rest.split(","):
            key, sep, raw = item.partition("=")
            key = key.strip().lower()
            if not sep or key not in keys:
                raise DomainError(f"bad pair parameter {item!r} for {name}")
            try:
                values[key] = float(raw)
            except ValueError:
                raise DomainError(f"bad number in {item!r}") from None
            if not math.isfinite(values[key]):
                raise DomainError(f"non-finite value in {item!r}")
    if rho is not None:
        if "rho" in values and values["rho"] != rho:
            raise DomainError(f"pair rho={values['rho']} conflicts with --rho {rho}")
        values["rho"] = float(rho)
    missing = [k for k in keys if k not in values]
    if missing:
        raise DomainError(f"pair {name} is missing {', '.join(missing)}")
    return builder(*(values[k] for k in keys))
