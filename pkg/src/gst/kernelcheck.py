"""Numerical certification of the delta-function kernel.

The inverse transform works because the kernel

    chi_rho(x, t) = (rho / 2 pi i) int_C (1 + w)**(rho - 1) (x + t w)**(-rho - 1) dw

(unit circle, from ``w = -1`` back to ``w = -1``) acts as ``delta(x - t)``.
This module checks that claim three ways:

* off the diagonal ``chi`` vanishes and is symmetric in ``(x, t)``;
* its Laplace transform in ``t`` is ``x**(-rho) exp(-x y)``, evaluated by
  doing the ``t`` integral first, which leaves

      lhs = (rho / 2 pi i) y**rho int_C (1 + w)**(rho - 1) I(x y w) dw,
      I(u) = exp(u) int_u^inf exp(-v) v**(-rho - 1) dv;

* termwise, through ``I(u) = Gamma(-rho) exp(u) + u**(-rho) I2(u)`` with
  ``I2 = sum c_n u**n``, ``c_0 = 1/rho``, ``(n + 1 - rho) c_{n+1} = c_n``, and
  the contour-beta integral of ``(1 + w)**(rho - 1) w**(n - rho)``.

At integer ``rho`` the series split breaks down (``Gamma(-rho)`` has a pole),
so :func:`chi_laplace_check` computes ``I(u)`` by quadrature instead.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from .branchfn import gamma_fn, principal_pow
from .errors import DomainError, SeriesTruncationError
from .quadrature import (
    ContourSpec,
    QuadConfig,
    integrate_contour,
    integrate_finite,
    integrate_semi_infinite,
)
from .transform import check_real

__all__ = [
    "KernelParams",
    "chi_contour",
    "chi_symmetry_residual",
    "chi_laplace_check",
    "cn_coefficients",
    "i2_eval",
    "i2_ode_residual",
    "incomplete_i",
    "contour_beta_identity",
    "contour_beta_closed_form",
    "termwise_partial_sums",
    "exp_partial_sums",
]

TWO_PI_I = 2j * math.pi
# Relative size of the first omitted I2 term (with its geometric tail) that
# still counts as a converged series.
_SERIES_TOL = 1e-16
# Closest approach to the diagonal that chi_contour accepts.
_DIAGONAL_GAP = 0.05


@dataclass(frozen=True)
class KernelParams:
    """Settings for the kernel checks.

    ``series_terms`` caps the number of ``I2`` terms. ``laplace_cutoff``
    replaces the infinite upper ``t`` limit on the quadrature path; it must
    be large enough that ``exp(-cutoff * y)`` is below 1e-16.
    """

    rho: float = 1.5
    quad: QuadConfig = field(default_factory=QuadConfig)
    series_terms: int = 200
    laplace_cutoff: float = 200.0

    def __post_init__(self):
        if not self.rho > 0:
            raise DomainError("KernelParams.rho must be positive")
        if self.series_terms < 10:
            raise DomainError("KernelParams.series_terms must be >= 10")
        if not self.laplace_cutoff > 0:
            raise DomainError("KernelParams.laplace_cutoff must be positive")


def _is_integer(rho: float) -> bool:
    return float(rho).is_integer()


def _check_positive(**kw):
    for name, v in kw.items():
        if not v > 0:
            raise DomainError(f"{name} must be positive, got {v}")


# chi_rho itself.


def chi_contour(rho: float, x: float, t: float, quad: QuadConfig | None = None) -> complex:
    """Pointwise ``chi_rho(x, t)`` by contour quadrature; ~0 off the diagonal.

    Raises
    ------
    DomainError
        if ``|x - t| < 0.05 max(x, t)``; near the diagonal the integrand
        concentrates at ``w = -1`` and only the Laplace check is meaningful.
    """
    _check_positive(rho=rho, x=x, t=t)
    scale = max(x, t)
    if abs(x - t) < _DIAGONAL_GAP * scale:
        raise DomainError(f"chi_contour: (x, t) = ({x}, {t}) too close to the diagonal")
    quad = quad or QuadConfig()
    # The exact value is 0, so the tolerance is anchored to the natural scale.
    cfg = dataclasses.replace(quad, abs_tol=max(quad.abs_tol, 1e-11 * scale ** (-rho - 1.0)))

    def g(w):
        return principal_pow(1.0 + w, rho - 1.0) * principal_pow(x + t * w, -rho - 1.0)

    res = integrate_contour(g, ContourSpec.unit_circle(), cfg)
    return complex(rho * res.value / TWO_PI_I)


def chi_symmetry_residual(rho: float, x: float, t: float, quad: QuadConfig | None = None) -> float:
    """``|chi(x, t) - chi(t, x)|``."""
    return abs(chi_contour(rho, x, t, quad) - chi_contour(rho, t, x, quad))


# The I2 series.


def cn_coefficients(rho: float, n_terms: int) -> np.ndarray:
    """``c_0 .. c_{n_terms-1}`` from ``c_0 = 1/rho``, ``(n + 1 - rho) c_{n+1} = c_n``."""
    _check_positive(rho=rho)
    if _is_integer(rho):
        raise DomainError("c_n recursion needs non-integer rho")
    c = np.empty(n_terms)
    c[0] = 1.0 / rho
    for n in range(n_terms - 1):
        c[n + 1] = c[n] / (n + 1.0 - rho)
    return c


def _series_length(rho: float, umax: float, kp: KernelParams) -> int:
    """Smallest N whose tail bound is below tolerance for all ``|u| <= umax``."""
    c = cn_coefficients(rho, kp.series_terms + 1)
    abs_c = np.abs(c)
    powers = umax ** np.arange(kp.series_terms + 1)
    running = np.cumsum(abs_c * powers)
    for n in range(1, kp.series_terms + 1):
        ratio = umax / abs(n + 1.0 - rho)
        if ratio >= 1.0:
            continue
        tail = abs_c[n] * powers[n] / (1.0 - ratio)
        if tail <= _SERIES_TOL * running[n - 1]:
            return n
    raise SeriesTruncationError(
        f"I2 series for |u| = {umax:g} needs more than {kp.series_terms} terms",
        float(running[-1]),
    )


def _i2_series(u, rho: float, kp: KernelParams, derivative: bool = False):
    u = np.asarray(u, dtype=complex)
    umax = float(np.max(np.abs(u))) if u.size else 0.0
    n = _series_length(rho, umax, kp)
    c = cn_coefficients(rho, n)
    if derivative:
        c = c[1:] * np.arange(1, n)
    acc = np.zeros_like(u)
    for coef in c[::-1]:
        acc = acc * u + coef
    return acc


def i2_eval(u, rho: float, kp: KernelParams | None = None):
    """``I2(u) = sum_n c_n u**n`` (entire in u).

    Raises
    ------
    SeriesTruncationError
        if ``kp.series_terms`` terms cannot bring the tail bound below 1e-16
        of the absolute series.
    """
    kp = kp or KernelParams(rho=rho)
    out = _i2_series(u, rho, kp)
    return complex(out) if out.ndim == 0 else out


def i2_ode_residual(u, rho: float, kp: KernelParams | None = None) -> float:
    """``|u I2'(u) - (u + rho) I2(u) + 1|``, which vanishes identically."""
    kp = kp or KernelParams(rho=rho)
    i2 = _i2_series(u, rho, kp)
    d = _i2_series(u, rho, kp, derivative=True)
    u = np.asarray(u, dtype=complex)
    return float(np.max(np.abs(u * d - (u + rho) * i2 + 1.0)))


# I(u) by its defining integral.


def incomplete_i(u: complex, rho: float, quad: QuadConfig | None = None, s_max: float = math.inf) -> complex:
    """``I(u) = exp(u) int_u^inf exp(-v) v**(-rho-1) dv`` by quadrature.

    The path leaves ``u`` in the real direction, ``v = u + s``. When
    ``Re u < 0`` it first steps a distance ``|u|`` vertically away from the
    real axis so it never passes close to ``v = 0``; the integrand is
    holomorphic between the two paths, so the value is unchanged. Only the
    real ``s`` range is truncated at ``s_max``.
    """
    u = complex(u)
    if u.imag == 0.0 and u.real <= 0.0:
        raise DomainError(f"incomplete_i: u={u} on the branch cut")
    quad = quad or QuadConfig()
    e = -rho - 1.0
    total = 0j
    start = u
    if u.real < 0.0:
        sigma = 1.0 if u.imag > 0 else -1.0
        h = abs(u)

        def vertical(tau):
            return np.exp(-1j * sigma * tau) * principal_pow(u + 1j * sigma * tau, e) * 1j * sigma

        total += integrate_finite(vertical, 0.0, h, quad).value
        start = u + 1j * sigma * h
    shift = start - u

    def horizontal(s):
        return np.exp(-s) * principal_pow(start + s, e)

    if math.isinf(s_max):
        ray = integrate_semi_infinite(horizontal, quad, split=max(1.0, abs(start))).value
    else:
        ray = integrate_finite(horizontal, 0.0, s_max, quad).value
    return complex(total + np.exp(-shift) * ray)


# The Laplace identity.


def _i_series(u, rho, kp):
    """``I(u) = Gamma(-rho) exp(u) + u**(-rho) I2(u)`` (non-integer rho)."""
    return gamma_fn(-rho) * np.exp(u) + principal_pow(u, -rho) * _i2_series(u, rho, kp)


def chi_laplace_check(rho: float, x: float, y: float, kp: KernelParams | None = None):
    """Laplace transform in ``t`` of ``chi_rho(x, t)`` against ``x**(-rho) exp(-x y)``.

    Returns ``(lhs, rhs)``. For non-integer rho, ``I`` comes from the series
    split and the ``t`` range is infinite. For integer rho, ``I`` is
    computed by :func:`incomplete_i` with the ``t`` range cut at
    ``kp.laplace_cutoff``.
    """
    _check_positive(rho=rho, x=x, y=y)
    kp = kp or KernelParams(rho=rho)
    quad = kp.quad
    rhs = x ** (-rho) * math.exp(-x * y)
    if _is_integer(rho):
        if math.exp(-kp.laplace_cutoff * y) >= 1e-16:
            raise DomainError(
                f"laplace_cutoff={kp.laplace_cutoff} too small for y={y}: exp(-cutoff*y) >= 1e-16"
            )
        s_max = kp.laplace_cutoff * y

        def i_of(u):
            return np.array([incomplete_i(v, rho, quad, s_max) for v in np.ravel(u)]).reshape(np.shape(u))
    else:
        def i_of(u):
            return _i_series(u, rho, kp)

    def g(w):
        return principal_pow(1.0 + w, rho - 1.0) * i_of(x * y * w)

    res = integrate_contour(g, ContourSpec.unit_circle(), quad)
    lhs = check_real(rho * y**rho * res.value / TWO_PI_I, "chi_laplace_check")
    return lhs, rhs


# Contour-beta identity and the termwise sum.


def contour_beta_closed_form(n: int, rho: float) -> float:
    """``(-1)**n / (rho c_n n!)``."""
    c = cn_coefficients(rho, n + 1)[n]
    return (-1.0) ** n / (rho * c * math.factorial(n))


def contour_beta_identity(n: int, rho: float, quad: QuadConfig | None = None):
    """``(1/2 pi i) int_C (1 + w)**(rho-1) w**(n-rho) dw`` and its closed form.

    Returns ``(lhs, rhs)`` with ``rhs = (-1)**n / (rho c_n n!)``, which equals
    ``-sin(pi (n - rho)) / pi * B(n - rho + 1, rho)``.
    """
    if not (isinstance(n, (int, np.integer)) and 0 <= n <= 20):
        raise DomainError(f"contour_beta_identity: need integer 0 <= n <= 20, got {n!r}")
    _check_positive(rho=rho)
    if _is_integer(rho):
        raise DomainError("contour_beta_identity needs non-integer rho")

    def g(w):
        return principal_pow(1.0 + w, rho - 1.0) * principal_pow(w, n - rho)

    res = integrate_contour(g, ContourSpec.unit_circle(), quad or QuadConfig())
    return complex(res.value / TWO_PI_I), contour_beta_closed_form(int(n), rho)


def termwise_partial_sums(rho: float, x: float, y: float, n_max: int, quad: QuadConfig | None = None) -> np.ndarray:
    """Partial sums of ``rho y**rho sum_n c_n (x y)**(n - rho) beta_n``.

    ``beta_n`` is the *quadrature* left side of :func:`contour_beta_identity`,
    so the sums are an independent route to ``x**(-rho) exp(-x y)``.
    """
    c = cn_coefficients(rho, n_max + 1)
    u = x * y
    terms = []
    for n in range(n_max + 1):
        lhs, _ = contour_beta_identity(n, rho, quad)
        terms.append(rho * y**rho * c[n] * u ** (n - rho) * lhs.real)
    return np.cumsum(terms)


def exp_partial_sums(rho: float, x: float, y: float, n_max: int) -> np.ndarray:
    """Partial sums of ``x**(-rho) sum_n (-x y)**n / n!``."""
    u = x * y
    terms = [(-u) ** n / math.factorial(n) for n in range(n_max + 1)]
    return x ** (-rho) * np.cumsum(terms)
