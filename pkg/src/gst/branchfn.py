"""Principal-branch elementary and special functions.

Every fractional power in the package goes through :func:`principal_pow`,
which uses ``arg z in (-pi, pi)`` and refuses points on the closed negative
real axis instead of silently picking a side.
"""

from __future__ import annotations

import cmath
import math

import mpmath
import numpy as np

from .errors import DomainError, NonConvergence, PoleError

__all__ = [
    "on_cut",
    "principal_pow",
    "gamma_fn",
    "beta_fn",
    "gauss_2f1",
    "hyp2f1",
]

# Lanczos approximation, g = 7, n = 9 (double precision).
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

HYP2F1_SERIES_RADIUS = 0.95


def on_cut(z):
    """Boolean mask of points on the closed negative real axis (including 0)."""
    z = np.asarray(z, dtype=complex)
    return (z.imag == 0.0) & (z.real <= 0.0)


def principal_pow(z, a):
    """Return ``z**a`` on the principal branch, ``exp(a * Log z)``.

    Works elementwise on arrays. ``z = 0`` is accepted only for ``a > 0``
    (the value is then 0); any other point of the closed negative real axis
    raises :class:`DomainError`.
    """
    zz = np.asarray(z, dtype=complex)
    bad = on_cut(zz)
    if np.any(bad):
        zero = bad & (zz.real == 0.0)
        if np.any(bad & ~zero) or (np.real(a) <= 0):
            raise DomainError(f"principal_pow: argument on the branch cut (a={a})")
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.exp(a * np.log(zz))
    if np.any(bad):
        out = np.where(bad, 0.0 + 0.0j, out)
    if out.ndim == 0:
        return complex(out)
    return out


def _is_nonpositive_integer(x) -> bool:
    return np.imag(x) == 0 and np.real(x) <= 0 and float(np.real(x)).is_integer()


def _lanczos(z):
    z = z - 1.0
    acc = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    if isinstance(t, complex):
        return _SQRT_2PI * cmath.exp((z + 0.5) * cmath.log(t) - t) * acc
    return _SQRT_2PI * math.exp((z + 0.5) * math.log(t) - t) * acc


def gamma_fn(x):
    """Euler gamma function for real or complex ``x``.

    Positive integers up to 20 are returned exactly as factorials; other
    arguments use a Lanczos approximation with reflection for
    ``Re x < 1/2``. Raises :class:`PoleError` at non-positive integers.
    """
    if isinstance(x, (np.generic,)):
        x = x.item()
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma_fn: pole at {x!r}")
    is_complex = isinstance(x, complex) and x.imag != 0.0
    if not is_complex:
        x = float(np.real(x))
        if x.is_integer() and 0 < x <= 21:
            return float(math.factorial(int(x) - 1))
    if np.real(x) < 0.5:
        if is_complex:
            return math.pi / (cmath.sin(math.pi * x) * gamma_fn(1.0 - x))
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    return _lanczos(x)


def beta_fn(u, v):
    """Euler beta function ``Gamma(u) Gamma(v) / Gamma(u + v)``.

    Negative non-integer arguments are allowed through the gamma ratio; a
    pole in either numerator factor raises :class:`PoleError`. If ``u + v``
    is a non-positive integer the ratio vanishes and 0 is returned.
    """
    gu = gamma_fn(u)
    gv = gamma_fn(v)
    try:
        guv = gamma_fn(u + v)
    except PoleError:
        return 0.0
    return gu * gv / guv


def gauss_2f1(a, b, c, x, rel_tol: float = 1e-12, max_terms: int = 10_000):
    """Gauss hypergeometric series ``2F1(a, b; c; x)`` for ``|x| < 0.95``.

    Terms are accumulated until the geometric tail estimate drops below
    ``rel_tol`` times the running sum. Real ``a, b, c`` only.
    """
    if _is_nonpositive_integer(c):
        raise PoleError(f"gauss_2f1: c={c} is a non-positive integer")
    x = complex(x)
    r = abs(x)
    if r >= HYP2F1_SERIES_RADIUS:
        raise DomainError(f"gauss_2f1: |x|={r:.3g} outside the series disk")
    total = 1.0 + 0j
    term = 1.0 + 0j
    if x == 0:
        return total
    tail_factor = 1.0 / (1.0 - r)
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x
        total += term
        if term == 0:
            return total
        if abs(term) * tail_factor <= rel_tol * abs(total) and n > 2:
            return total
    raise NonConvergence(f"gauss_2f1: no convergence in {max_terms} terms", total)


def _hyp2f1_scalar(a, b, c, x):
    if abs(x) < HYP2F1_SERIES_RADIUS:
        return gauss_2f1(a, b, c, x, rel_tol=1e-16)
    if x.imag == 0.0 and x.real >= 1.0:
        raise DomainError("hyp2f1: argument on the cut [1, inf)")
    return complex(mpmath.hyp2f1(a, b, c, x))


def hyp2f1(a, b, c, x):
    """``2F1(a, b; c; x)`` on the whole plane cut along ``[1, inf)``.

    Inside the series disk this is :func:`gauss_2f1`; outside it defers to
    mpmath's analytically continued implementation. Vectorized over ``x``.
    """
    xs = np.asarray(x, dtype=complex)
    if xs.ndim == 0:
        return _hyp2f1_scalar(a, b, c, complex(xs))
    out = np.empty(xs.shape, dtype=complex)
    for idx, val in np.ndenumerate(xs):
        out[idx] = _hyp2f1_scalar(a, b, c, complex(val))
    return out
