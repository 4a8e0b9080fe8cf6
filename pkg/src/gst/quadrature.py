"""Double-exponential (tanh-sinh) quadrature.

Three entry points share one node table:

* :func:`integrate_finite` on ``(a, b)``,
* :func:`integrate_semi_infinite` on ``(lower, inf)`` by splitting the range
  and mapping the tail with ``y -> 1/y``,
* :func:`integrate_contour` along a circle ``w = r exp(i theta)`` with
  ``theta in (-pi, pi)``, i.e. a path that starts and ends at ``w = -r``.

Integrands are called with numpy arrays of abscissas and must return an
array of the same shape (a scalar is broadcast). Abscissas next to an
endpoint are formed from their *distance* to that endpoint, so an
algebraic endpoint singularity at ``a = 0`` or at ``theta = +-pi`` sees
accurate arguments all the way down to ``min_dist``.
"""

from __future__ import annotations

import dataclasses
import functools
import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, EvaluationError, NonConvergence

__all__ = [
    "QuadConfig",
    "QuadResult",
    "ContourSpec",
    "NonConvergenceWarning",
    "integrate_finite",
    "integrate_semi_infinite",
    "integrate_contour",
]

# Largest t on the trapezoid grid. Beyond it exp(-2u) underflows.
_T_MAX = 7.0
_MIN_LEVEL = 3
_ROUNDOFF = 32 * np.finfo(float).eps
DEFAULT_MIN_DIST = 1e-200
TAIL_MIN_DIST = 1e-150


class NonConvergenceWarning(RuntimeWarning):
    """Issued instead of :class:`NonConvergence` when ``best_effort`` is set."""


@dataclass(frozen=True)
class QuadConfig:
    """Quadrature settings.

    With ``best_effort=True`` a missed tolerance returns the best estimate
    (its ``err_estimate`` tells the truth) and issues a
    :class:`NonConvergenceWarning` instead of raising. ``noise_floor`` is the
    relative accuracy of the integrand values themselves (e.g. a finite
    difference); level differences below ``noise_floor * integral of |f|``
    count as converged.
    """

    rel_tol: float = 1e-12
    abs_tol: float = 0.0
    max_level: int = 9
    max_evals: int = 400_000
    best_effort: bool = False
    noise_floor: float = 0.0

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("QuadConfig.rel_tol must be positive")
        if self.abs_tol < 0:
            raise DomainError("QuadConfig.abs_tol must be non-negative")
        if not 0 <= self.noise_floor < 1:
            raise DomainError("QuadConfig.noise_floor must lie in [0, 1)")
        if self.max_level < _MIN_LEVEL:
            raise DomainError(f"QuadConfig.max_level must be >= {_MIN_LEVEL}")

    def tolerance(self, value) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


@dataclass(frozen=True)
class QuadResult:
    value: complex
    err_estimate: float
    evals: int

    def __add__(self, other: "QuadResult") -> "QuadResult":
        return QuadResult(
            self.value + other.value,
            self.err_estimate + other.err_estimate,
            self.evals + other.evals,
        )

    def scaled(self, factor) -> "QuadResult":
        return QuadResult(self.value * factor, self.err_estimate * abs(factor), self.evals)


@dataclass(frozen=True)
class ContourSpec:
    """Circle ``w = radius * exp(i theta)``, ``theta`` open on ``(-pi, pi)``."""

    radius: float = 1.0

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError("ContourSpec.radius must be positive")

    @classmethod
    def unit_circle(cls) -> "ContourSpec":
        return cls(1.0)

    @classmethod
    def circle(cls, radius: float) -> "ContourSpec":
        return cls(float(radius))


@functools.lru_cache(maxsize=None)
def _level_nodes(level: int):
    """Nodes added at ``level`` for ``t >= 0``.

    Returns ``(c, omega, has_centre)`` where ``c = 1 - tanh(pi/2 sinh t)`` is
    the normalized distance to the endpoint and ``omega`` the derivative of
    the tanh-sinh map. Level 0 includes ``t = 0``; later levels hold the odd
    multiples of ``h = 2**-level``.
    """
    h = 2.0**-level
    if level == 0:
        t = np.arange(1.0, _T_MAX + 0.5 * h, h)
    else:
        t = np.arange(h, _T_MAX, 2.0 * h)
    u = 0.5 * math.pi * np.sinh(t)
    e = np.exp(-2.0 * u)
    c = 2.0 * e / (1.0 + e)
    omega = 0.5 * math.pi * np.cosh(t) * 4.0 * e / (1.0 + e) ** 2
    keep = c > 0.0
    c, omega = c[keep], omega[keep]
    c.setflags(write=False)
    omega.setflags(write=False)
    return c, omega, level == 0


def _evaluate(f, x):
    vals = np.asarray(f(x))
    vals = np.broadcast_to(vals, np.shape(x))
    if not np.all(np.isfinite(vals)):
        bad = np.asarray(x)[~np.isfinite(vals)]
        raise EvaluationError(f"integrand not finite at {bad[:3]!r}")
    return vals


def _rounding(dist, vals, omega, delta):
    """Bound on ``sum omega |f(x + delta) - f(x)|`` for rounded abscissas.

    ``dist`` is the distance of each node to its endpoint (nodes of one side,
    ordered by ``t``) and ``delta`` the positional error of the stored
    abscissa. Near the endpoint ``f`` is modelled as a local power of
    ``dist``; the exponent comes from neighbouring nodes, so a smooth ``f``
    contributes next to nothing and an algebraic singularity its true slope.
    """
    if dist.size < 2:
        return 0.0
    mag = np.abs(vals)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        expo = np.abs(np.diff(np.log(mag))) / np.abs(np.diff(np.log(dist)))
        term = expo * mag[1:] / dist[1:] * np.broadcast_to(delta, dist.shape)[1:]
    term = np.where(np.isfinite(term), term, 0.0)
    return float(np.dot(term, omega[1:]))


def _tanh_sinh(sample, cfg: QuadConfig, what: str):
    """Run the level-refinement loop.

    ``sample(c, omega, has_centre)`` must return
    ``(weighted_sum, weighted_abs_sum, n_evals, rounding)`` for the new nodes
    of one level, with the Jacobian already applied. ``rounding`` bounds the
    error from abscissas that were rounded away from their exact position.
    Refinement cannot reduce it, so a level difference below it, or below
    ``_ROUNDOFF * integral of |f|``, counts as converged; this is what lets
    integrals whose exact value is 0 terminate. The same goes for
    ``cfg.noise_floor * integral of |f|``. The reported ``err_estimate`` is
    never smaller than these irreducible terms.
    """
    total = 0.0
    abs_total = 0.0
    round_total = 0.0
    evals = 0
    prev = None
    value = 0.0
    err = math.inf
    for level in range(cfg.max_level + 1):
        c, omega, centre = _level_nodes(level)
        s, sa, n, rnd = sample(c, omega, centre)
        total = total + s
        abs_total = abs_total + sa
        round_total = round_total + rnd
        evals += n
        value = total * 2.0**-level
        # errors refinement cannot remove: rounded abscissas, noisy values
        rounding = max(round_total, cfg.noise_floor * abs_total) * 2.0**-level
        floor = max(_ROUNDOFF * abs_total * 2.0**-level, rounding)
        if prev is not None:
            err = abs(value - prev)
            if level >= _MIN_LEVEL and err <= max(cfg.tolerance(value), floor):
                return QuadResult(_scalar(value), max(float(err), rounding), evals)
        prev = value
        if evals > cfg.max_evals:
            break
    result = QuadResult(_scalar(value), max(float(err), rounding), evals)
    msg = f"{what}: tolerance not met (value={value!r}, err={err:.3g}, evals={evals})"
    if cfg.best_effort:
        warnings.warn(msg, NonConvergenceWarning, stacklevel=3)
        return result
    raise NonConvergence(msg, result)


def _scalar(v):
    v = complex(v)
    return v.real if v.imag == 0.0 else v


def integrate_finite(
    f: Callable,
    a: float,
    b: float,
    cfg: QuadConfig | None = None,
    min_dist: float = DEFAULT_MIN_DIST,
) -> QuadResult:
    """Tanh-sinh quadrature of ``f`` over ``(a, b)``.

    Integrable algebraic endpoint singularities are fine; they are resolved
    best when the singular endpoint is at 0, where abscissas keep full
    relative accuracy. Nodes closer than ``min_dist`` to an endpoint, or
    that round onto it, are skipped.

    Raises
    ------
    NonConvergence
        if the tolerance is not met by ``cfg.max_level``; the best result is
        attached as ``exc.result``.
    EvaluationError
        if ``f`` returns NaN or infinity.
    """
    cfg = cfg or QuadConfig()
    a = float(a)
    b = float(b)
    if not a < b:
        raise DomainError(f"integrate_finite: need a < b, got ({a}, {b})")
    half = 0.5 * (b - a)
    mid = a + half

    def sample(c, omega, centre):
        d = half * c
        xl = a + d
        xr = b - d
        big = d >= min_dist
        okl = big & (xl > a)
        okr = big & (xr < b)
        x = np.concatenate([xl[okl], xr[okr]])
        vals = _evaluate(f, x)
        m = int(okl.sum())
        s = np.dot(vals[:m], omega[okl]) + np.dot(vals[m:], omega[okr])
        sa = np.dot(np.abs(vals[:m]), omega[okl]) + np.dot(np.abs(vals[m:]), omega[okr])
        rnd = 0.0
        if ulp_a:
            rnd += _rounding(d[okl], vals[:m], omega[okl], ulp_a)
        if ulp_b:
            rnd += _rounding(d[okr], vals[m:], omega[okr], ulp_b)
        n = x.size
        if centre:
            v0 = _evaluate(f, np.array([mid]))[0]
            s = s + 0.5 * math.pi * v0
            sa = sa + 0.5 * math.pi * abs(v0)
            n += 1
        return half * s, half * sa, n, half * rnd

    ulp_a = float(np.spacing(abs(a))) if a != 0.0 else 0.0
    ulp_b = float(np.spacing(abs(b))) if b != 0.0 else 0.0
    return _tanh_sinh(sample, cfg, "integrate_finite")


def integrate_semi_infinite(
    f: Callable,
    cfg: QuadConfig | None = None,
    split: float = 1.0,
    lower: float = 0.0,
    min_dist: float = DEFAULT_MIN_DIST,
) -> QuadResult:
    """Integrate ``f`` over ``(lower, inf)``.

    The range is cut at ``split``; the tail ``(split, inf)`` is mapped onto
    ``(0, 1/split)`` with ``y = 1/s``. Both pieces are tanh-sinh integrals
    with the awkward end at 0. ``min_dist`` applies to the head piece.
    """
    cfg = cfg or QuadConfig()
    lower = float(lower)
    split = float(split)
    if not split > lower:
        raise DomainError("integrate_semi_infinite: split must exceed lower limit")
    if not split > 0:
        raise DomainError("integrate_semi_infinite: split must be positive")
    part_cfg = dataclasses.replace(cfg, abs_tol=0.5 * cfg.abs_tol)

    if lower == 0.0:
        head_f = f
    else:
        def head_f(s):
            return f(lower + s)

    def tail_f(s):
        y = 1.0 / s
        return f(y) * y * y

    pieces = []
    try:
        pieces.append(integrate_finite(head_f, 0.0, split - lower, part_cfg, min_dist))
        pieces.append(integrate_finite(tail_f, 0.0, 1.0 / split, part_cfg, TAIL_MIN_DIST))
    except NonConvergence as exc:
        best = exc.result
        for p in pieces:
            best = best + p
        raise NonConvergence(f"integrate_semi_infinite: {exc}", best) from exc
    total = pieces[0] + pieces[1]
    return QuadResult(_scalar(total.value), total.err_estimate, total.evals)


def integrate_contour(
    g: Callable,
    contour: ContourSpec | None = None,
    cfg: QuadConfig | None = None,
    min_dist: float = DEFAULT_MIN_DIST,
) -> QuadResult:
    """Integrate ``g(w) dw`` along ``w = r exp(i theta)``, ``-pi < theta < pi``.

    The path runs counterclockwise from ``-r`` (just below the negative real
    axis) back to ``-r`` (just above it). Near the ends ``w`` is built from
    the angular distance ``d = pi - |theta|`` as ``-r exp(-+i d)``, so samples
    never land on the negative real axis and ``1 + w`` stays accurate when
    ``r = 1``.
    """
    contour = contour or ContourSpec()
    cfg = cfg or QuadConfig()
    r = contour.radius

    def sample(c, omega, centre):
        d = math.pi * c
        ok = d >= min_dist
        d = d[ok]
        om = omega[ok]
        upper = -r * np.exp(-1j * d)
        lower = -r * np.exp(1j * d)
        w = np.concatenate([upper, lower])
        vals = _evaluate(g, w) * (1j * w)
        m = d.size
        s = np.dot(vals[:m], om) + np.dot(vals[m:], om)
        sa = np.dot(np.abs(vals[:m]) + np.abs(vals[m:]), om)
        # -r exp(-+i d) is stored with error ~ulp(r), but never more than
        # the real-part offset r d^2 / 2 that the rounding can swallow
        raw = np.abs(vals / w)
        delta = np.minimum(ulp_r, 0.5 * r * d * d)
        rnd = r * (_rounding(r * d, raw[:m], om, delta) + _rounding(r * d, raw[m:], om, delta))
        n = 2 * m
        if centre:
            w0 = np.array([r + 0j])
            v0 = _evaluate(g, w0)[0] * 1j * w0[0]
            s = s + 0.5 * math.pi * v0
            sa = sa + 0.5 * math.pi * abs(v0)
            n += 1
        return math.pi * s, math.pi * sa, n, math.pi * rnd

    ulp_r = float(np.spacing(r))
    return _tanh_sinh(sample, cfg, "integrate_contour")
