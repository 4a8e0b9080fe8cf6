"""Forward generalized Stieltjes transform and its inversion formulas.

The transform of index ``rho > 0`` is

    G(z) = int_0^inf (y + z)**(-rho) F(y) dy,      |arg z| < pi,

and the primary inverse is the contour integral

    F(y) = -(1 / 2 pi i) y**rho int_C (1 + w)**(rho - 1) G'(y w) dw

over the unit circle traversed from ``w = -1`` back to ``w = -1``. The
module also carries the z-plane and integrated-by-parts versions, the
discontinuity across the cut, the Abel-type formulas built on it, the
radial ``rho = 3/2`` form, and the Laplace-transform route.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .branchfn import gamma_fn, principal_pow
from .errors import DomainError, ResidualImaginaryError
from .quadrature import (
    ContourSpec,
    QuadConfig,
    QuadResult,
    integrate_contour,
    integrate_finite,
    integrate_semi_infinite,
)

__all__ = [
    "Family",
    "TransformParams",
    "SourceFunction",
    "CutPlaneFunction",
    "forward_gst",
    "inverse_gst",
    "inverse_gst_zplane",
    "inverse_gst_ibp",
    "inverse_gst_laplace",
    "discontinuity",
    "stieltjes_disc_inverse",
    "abel_inverse_from_delta",
    "abel_inverse_from_delta_prime",
    "delta_from_f",
    "radial_inverse",
    "laplace",
    "iterated_laplace_forward",
    "numeric_derivative",
    "check_real",
]

TWO_PI_I = 2j * math.pi


class Family(enum.Enum):
    POWER_LAW = "power_law"
    POWER_HYPER = "power_hyper"
    POINT_MASS = "point_mass"
    TABULATED = "tabulated"
    CUSTOM = "custom"


@dataclass(frozen=True)
class TransformParams:
    rho: float
    quad: QuadConfig = field(default_factory=QuadConfig)
    derivative_step: float = 1e-5
    disc_offset: float = 1e-7

    def __post_init__(self):
        if not self.rho > 0:
            raise DomainError(f"rho must be positive, got {self.rho}")
        if not 0 < self.derivative_step < 0.1:
            raise DomainError("derivative_step must lie in (0, 0.1)")
        if not self.disc_offset > 0:
            raise DomainError("disc_offset must be positive")


@dataclass(frozen=True)
class SourceFunction:
    """The input F of the forward transform.

    ``density`` is a vectorized evaluator on ``y > 0``; ``point_masses`` is a
    sequence of ``(location, weight)`` Dirac components that are transformed
    exactly. ``alpha`` is the admissibility exponent; when it is ``None`` the
    family parameters decide convergence instead (see :meth:`check_admissible`).
    ``breakpoints`` are interior points where the density is not smooth and
    ``support`` bounds where it can be non-zero.
    """

    density: Callable | None = None
    point_masses: tuple[tuple[float, float], ...] = ()
    alpha: float | None = None
    family: Family = Family.CUSTOM
    params: Mapping[str, float] = field(default_factory=dict)
    derivative: Callable | None = None
    breakpoints: tuple[float, ...] = ()
    support: tuple[float, float] = (0.0, math.inf)

    def __post_init__(self):
        if self.density is None and not self.point_masses:
            raise DomainError("SourceFunction needs a density or point masses")
        for t, _ in self.point_masses:
            if not t > 0:
                raise DomainError(f"point mass location must be positive, got {t}")

    # Constructors for the families the package knows about.

    @classmethod
    def power_law(cls, nu: float) -> "SourceFunction":
        """``F(y) = y**(nu - 1)``."""
        nu = float(nu)
        if not nu > 0:
            raise DomainError("power law needs nu > 0")
        return cls(
            density=lambda y: np.power(y, nu - 1.0),
            derivative=lambda y: (nu - 1.0) * np.power(y, nu - 2.0),
            family=Family.POWER_LAW,
            params={"nu": nu},
        )

    @classmethod
    def power_hyper(cls, nu: float, lam: float) -> "SourceFunction":
        """``F(y) = y**(nu - 1) (1 + y)**(-lam)``."""
        nu, lam = float(nu), float(lam)
        if not nu > 0:
            raise DomainError("power_hyper needs nu > 0")

        def density(y):
            return np.power(y, nu - 1.0) * np.power(1.0 + y, -lam)

        def derivative(y):
            return density(y) * ((nu - 1.0) / y - lam / (1.0 + y))

        return cls(
            density=density,
            derivative=derivative,
            family=Family.POWER_HYPER,
            params={"nu": nu, "lambda": lam},
        )

    @classmethod
    def point_mass(cls, t: float, weight: float = 1.0) -> "SourceFunction":
        return cls(
            point_masses=((float(t), float(weight)),),
            family=Family.POINT_MASS,
            params={"t": float(t), "weight": float(weight)},
        )

    @classmethod
    def tabulated(cls, y: Sequence[float], values: Sequence[float], alpha: float) -> "SourceFunction":
        """Piecewise-linear density through ``(y, values)``, zero off the grid.

        ``alpha`` must be supplied; it is trusted, not verified.
        """
        ys = np.asarray(y, dtype=float)
        fs = np.asarray(values, dtype=float)
        if ys.ndim != 1 or ys.shape != fs.shape or ys.size < 2:
            raise DomainError("tabulated F needs matching 1-d y and F arrays of length >= 2")
        if ys[0] <= 0 or np.any(np.diff(ys) <= 0):
            raise DomainError("tabulated y-grid must be positive and strictly increasing")
        ys.setflags(write=False)
        fs.setflags(write=False)

        def density(x):
            return np.interp(x, ys, fs, left=0.0, right=0.0)

        return cls(
            density=density,
            alpha=float(alpha),
            family=Family.TABULATED,
            params={"n": int(ys.size)},
            breakpoints=tuple(float(v) for v in ys[1:-1]),
            support=(float(ys[0]), float(ys[-1])),
        )

    def __call__(self, y):
        if self.density is None:
            return np.zeros_like(np.asarray(y, dtype=float))
        return self.density(y)

    def check_admissible(self, rho: float) -> None:
        """Raise :class:`DomainError` unless the transform of index rho exists."""
        if self.alpha is not None:
            if not 0 < self.alpha < rho:
                raise DomainError(f"need 0 < alpha < rho, got alpha={self.alpha}, rho={rho}")
            return
        nu = self.params.get("nu")
        if self.family is Family.POWER_LAW and not 0 < nu < rho:
            raise DomainError(f"power law transform needs 0 < nu < rho (nu={nu}, rho={rho})")
        if self.family is Family.POWER_HYPER:
            lam = self.params["lambda"]
            if not 0 < nu < rho + lam:
                raise DomainError(f"power_hyper transform needs 0 < nu < rho + lambda (nu={nu})")
        if self.family is Family.CUSTOM and self.density is not None:
            raise DomainError("custom density needs an explicit alpha")


@dataclass(frozen=True)
class CutPlaneFunction:
    """G holomorphic on ``|arg z| < pi`` with optional analytic derivative."""

    func: Callable
    deriv: Callable | None = None
    beta: float = 1.0

    def __call__(self, z):
        return self.func(z)


def check_real(value: complex, what: str) -> float:
    """Drop a small imaginary residue or raise :class:`ResidualImaginaryError`."""
    value = complex(value)
    if abs(value.imag) > max(1e-8, 1e-6 * abs(value.real)):
        raise ResidualImaginaryError(
            f"{what}: imaginary residue {value.imag:.3g} for real part {value.real:.6g}",
            value,
        )
    return value.real


def _finish(value, res: QuadResult, what: str, full_output: bool):
    real = check_real(value, what)
    if full_output:
        return real, res
    return real


# Forward direction.


def _density_pieces(F: SourceFunction, split: float, extra: Sequence[float] = ()):
    lo, hi = F.support
    knots = [lo] + sorted({b for b in (*F.breakpoints, *extra) if lo < b < hi})
    if math.isinf(hi):
        return knots, max(split, knots[-1] * 2.0 if knots[-1] > 0 else split)
    return knots + [hi], None


def _integrate_density(
    integrand, F: SourceFunction, cfg: QuadConfig, split: float, extra: Sequence[float] = ()
) -> QuadResult:
    """Integrate ``integrand`` over the support of F, honouring breakpoints.

    ``extra`` adds knots, e.g. where the integrand is nearly singular.
    """
    knots, tail_split = _density_pieces(F, split, extra)
    total = QuadResult(0.0, 0.0, 0)
    for a, b in zip(knots[:-1], knots[1:]):
        total = total + integrate_finite(integrand, a, b, cfg)
    if tail_split is not None:
        total = total + integrate_semi_infinite(integrand, cfg, split=tail_split, lower=knots[-1])
    return total


def forward_gst(F: SourceFunction, p: TransformParams, z, full_output: bool = False):
    """``G(z) = int_0^inf (y + z)**(-rho) F(y) dy`` plus exact point-mass terms.

    The density part is split at ``max(1, |z|)``; the tail uses ``y -> 1/y``.
    For ``Re z < 0`` the point ``y = -Re z`` is an extra knot.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0:
        raise DomainError(f"forward_gst: z={z} on the branch cut")
    F.check_admissible(p.rho)
    rho = p.rho
    res = QuadResult(0.0, 0.0, 0)
    if F.density is not None:
        dens = F.density

        def integrand(y):
            return principal_pow(y + z, -rho) * dens(y)

        # Just off the cut, (y + z)**(-rho) peaks at y = -Re z; a knot there
        # puts the peak at piece endpoints where tanh-sinh resolves it.
        extra = (-z.real,) if z.real < 0 else ()
        res = _integrate_density(integrand, F, p.quad, max(1.0, abs(z)), extra)
    value = complex(res.value)
    for t, wt in F.point_masses:
        value += wt * principal_pow(t + z, -rho)
    res = QuadResult(value, res.err_estimate, res.evals)
    return (value, res) if full_output else value


def laplace(F: SourceFunction, x: float, cfg: QuadConfig | None = None) -> float:
    """``int_0^inf exp(-x y) F(y) dy`` plus ``sum w exp(-x t)`` over point masses.

    For ``x >= 1`` the integral is taken in ``u = x y`` so the exponential has
    unit scale. For ``x < 1`` the range up to ``y ~ 1/x`` stays in ``y`` with
    knots at ``1, 1e8, 1e16, ...`` (no piece spans more than eight decades
    beyond its left end) and the rest is taken in ``u``. This keeps the
    result accurate over the ``x ~ 1e-200 .. 1e150`` seen by an outer
    quadrature in :func:`iterated_laplace_forward`.
    """
    if not x > 0:
        raise DomainError("laplace: x must be positive")
    cfg = cfg or QuadConfig()
    value = 0.0
    if F.density is not None:
        dens = F.density
        knots, tail_split = _density_pieces(F, 1.0 / x)
        end = knots[-1] if tail_split is None else min(tail_split, 1.0 / x)

        def in_u(u):
            with np.errstate(all="ignore"):
                y = u / x
                good = (y > 0) & np.isfinite(y)
                v = np.exp(-u) * dens(np.where(good, y, 1.0))
            return np.where(good, v, 0.0)

        total = QuadResult(0.0, 0.0, 0)
        if x < 1.0:
            extra = []
            g = 1.0
            while g < end:
                if g > knots[0] and g not in knots:
                    extra.append(g)
                g *= 1e8
            knots = sorted(knots + extra)
            # y-space pieces are scaled by x to share the u-space normalization
            for a, b in zip(knots[:-1], knots[1:]):
                piece = integrate_finite(lambda y: np.exp(-x * y) * dens(y), a, b, cfg)
                total = total + piece.scaled(x)
        else:
            for a, b in zip(knots[:-1], knots[1:]):
                total = total + integrate_finite(in_u, a * x, b * x, cfg)
        if tail_split is not None:
            lower = knots[-1] * x
            total = total + integrate_semi_infinite(
                in_u, cfg, split=max(1.0, 2.0 * lower, tail_split * x), lower=lower
            )
        value = total.value / x
    for t, wt in F.point_masses:
        value += wt * math.exp(-x * t)
    return float(np.real(value))


def iterated_laplace_forward(F: SourceFunction, p: TransformParams, z: float) -> float:
    """``(1/Gamma(rho)) int_0^inf x**(rho-1) exp(-x z) L_x[F] dx`` by nested quadrature.

    Agrees with :func:`forward_gst` on the positive real axis. This is a
    cross-check, not a production path: both levels run at a relative
    tolerance of at least 1e-8, because the inner transform at the extreme
    outer abscissas (x far below 1e-100) converges no better than that.
    """
    z = float(z)
    if not z > 0:
        raise DomainError("iterated_laplace_forward: z must be positive")
    F.check_admissible(p.rho)
    rho = p.rho
    q = p.quad
    cfg = dataclasses.replace(q, rel_tol=max(q.rel_tol, 1e-8))

    def outer(xs):
        inner = np.array([laplace(F, x, cfg) for x in np.ravel(xs)])
        return np.power(xs, rho - 1.0) * np.exp(-xs * z) * inner.reshape(np.shape(xs))

    res = integrate_semi_infinite(outer, cfg, split=1.0 / z)
    return float(np.real(res.value)) / gamma_fn(rho)


# Inverse direction.


def numeric_derivative(func: Callable, step: float = 1e-5) -> Callable:
    """Fourth-order central difference of a holomorphic ``func``.

    Samples lie on the ray through ``z`` (``z * (1 +- k h / |z|)``), so they
    keep the argument of ``z`` and never cross the cut on the negative axis.
    """

    def deriv(z):
        z = np.asarray(z, dtype=complex)
        r = np.abs(z)
        h = np.minimum(step * np.maximum(r, 1.0), 0.25 * r)
        q = h / r
        f1 = func(z * (1.0 + q))
        f2 = func(z * (1.0 + 2.0 * q))
        g1 = func(z * (1.0 - q))
        g2 = func(z * (1.0 - 2.0 * q))
        dz = z * q
        return (8.0 * (f1 - g1) - (f2 - g2)) / (12.0 * dz)

    return deriv


def _derivative(G: CutPlaneFunction, p: TransformParams) -> tuple[Callable, QuadConfig]:
    """G' and the quadrature settings to integrate it with.

    A finite-difference G' carries relative noise ~eps/step, which the
    quadrature is told about so it does not chase it.
    """
    if G.deriv is not None:
        return G.deriv, p.quad
    noise = max(p.quad.noise_floor, 16.0 * np.finfo(float).eps / p.derivative_step)
    return numeric_derivative(G.func, p.derivative_step), dataclasses.replace(p.quad, noise_floor=noise)


def _check_y(y):
    y = float(y)
    if not y > 0:
        raise DomainError(f"inverse transform needs y > 0, got {y}")
    return y


def inverse_gst(G: CutPlaneFunction, p: TransformParams, y: float, full_output: bool = False):
    """``F(y) = -(1/2 pi i) y**rho int_C (1+w)**(rho-1) G'(y w) dw`` on the unit circle.

    Uses ``G.deriv`` when present, else :func:`numeric_derivative`. The
    result must be real up to ``max(1e-8, 1e-6 |Re|)``.
    """
    y = _check_y(y)
    rho = p.rho
    dG, cfg = _derivative(G, p)

    def integrand(w):
        return principal_pow(1.0 + w, rho - 1.0) * dG(y * w)

    res = integrate_contour(integrand, ContourSpec.unit_circle(), cfg)
    res = res.scaled(-(y**rho) / TWO_PI_I)
    return _finish(res.value, res, "inverse_gst", full_output)


def inverse_gst_zplane(G: CutPlaneFunction, p: TransformParams, y: float, full_output: bool = False):
    """``F(y) = -(1/2 pi i) int_{C_y} (y+z)**(rho-1) G'(z) dz`` on ``|z| = y``."""
    y = _check_y(y)
    rho = p.rho
    dG, cfg = _derivative(G, p)

    def integrand(z):
        return principal_pow(y + z, rho - 1.0) * dG(z)

    res = integrate_contour(integrand, ContourSpec.circle(y), cfg)
    res = res.scaled(-1.0 / TWO_PI_I)
    return _finish(res.value, res, "inverse_gst_zplane", full_output)


def inverse_gst_ibp(G: CutPlaneFunction, p: TransformParams, y: float, full_output: bool = False):
    """``F(y) = (rho-1)/(2 pi i) int_{C_y} (y+z)**(rho-2) G(z) dz``; needs ``rho > 1``."""
    rho = p.rho
    if not rho > 1:
        raise DomainError(f"inverse_gst_ibp is only defined for rho > 1 (rho={rho})")
    y = _check_y(y)

    def integrand(z):
        return principal_pow(y + z, rho - 2.0) * G.func(z)

    res = integrate_contour(integrand, ContourSpec.circle(y), p.quad)
    res = res.scaled((rho - 1.0) / TWO_PI_I)
    return _finish(res.value, res, "inverse_gst_ibp", full_output)


def inverse_gst_laplace(
    G: CutPlaneFunction,
    p: TransformParams,
    s: float = 1.0,
    ray_angle: float = math.pi / 4,
    full_output: bool = False,
):
    """Laplace transform ``int_0^inf exp(-s y) F(y) dy`` of the inverse of G.

    This is the weak form of :func:`inverse_gst` against the test function
    ``exp(-s y)``; it stays meaningful when F is a distribution (a point
    mass has a pointwise inverse of 0 away from its support). The order of
    integration is swapped: for every contour node ``w`` the y-integral

        H(w) = int_0^inf exp(-s y) y**rho G'(y w) dy

    is taken along the ray ``arg y = -+ray_angle`` (the sign opposite to
    ``Im w``), which keeps ``y w`` inside the cut plane and away from the
    near-singularity that the real y-axis would hit as ``w -> -1``.
    """
    if not s > 0:
        raise DomainError("inverse_gst_laplace: s must be positive")
    if not 0 < ray_angle < math.pi / 2:
        raise DomainError("ray_angle must lie in (0, pi/2)")
    rho = p.rho
    dG, cfg = _derivative(G, p)
    rot = {1: np.exp(-1j * ray_angle), -1: np.exp(1j * ray_angle)}

    def h_of_w(w):
        e = rot[1 if w.imag >= 0 else -1]

        def inner(r):
            yv = r * e
            # exp and y**rho combined so that neither overflows on its own
            return np.exp(rho * np.log(yv) - s * yv) * dG(yv * w) * e

        # G' may overflow for |y w| < 1e-150 although y**rho G' stays
        # integrable; an admissible F loses O(1e-100**nu) by skipping that
        return integrate_semi_infinite(inner, cfg, split=1.0 / s, min_dist=1e-100).value

    def integrand(ws):
        ws = np.asarray(ws, dtype=complex)
        hs = np.array([h_of_w(w) for w in ws.ravel()]).reshape(ws.shape)
        return principal_pow(1.0 + ws, rho - 1.0) * hs

    res = integrate_contour(integrand, ContourSpec.unit_circle(), cfg)
    res = res.scaled(-1.0 / TWO_PI_I)
    return _finish(res.value, res, "inverse_gst_laplace", full_output)


def discontinuity(G: CutPlaneFunction, p: TransformParams, t, full_output: bool = False):
    """Jump of G across the cut, ``(G(-t - i eps) - G(-t + i eps)) / (2 pi i)``.

    ``eps = disc_offset * t``; one Richardson step combines ``eps`` and
    ``eps/2`` to cancel the linear term. Accepts scalar or array ``t``.
    """
    ts = np.asarray(t, dtype=float)
    if np.any(ts <= 0):
        raise DomainError("discontinuity needs t > 0")
    eps = p.disc_offset * ts

    def jump(e):
        below = G.func(-ts - 1j * e)
        above = G.func(-ts + 1j * e)
        return (np.asarray(below) - np.asarray(above)) / TWO_PI_I

    d1 = jump(eps)
    d2 = jump(0.5 * eps)
    extrap = 2.0 * d2 - d1
    err = np.abs(extrap - d2)
    bad = np.abs(np.imag(extrap)) > np.maximum(1e-8, 1e-6 * np.abs(np.real(extrap)))
    if np.any(bad):
        worst = complex(np.ravel(extrap)[np.argmax(np.ravel(bad))])
        raise ResidualImaginaryError(f"discontinuity: imaginary residue {worst.imag:.3g}", worst)
    value = np.real(extrap)
    if value.ndim == 0:
        value, err = float(value), float(err)
    return (value, err) if full_output else value


def stieltjes_disc_inverse(G: CutPlaneFunction, p: TransformParams, y: float) -> float:
    """``rho = 1`` inverse: F is exactly the discontinuity of G at ``-y``."""
    if p.rho != 1.0:
        raise DomainError(f"stieltjes_disc_inverse needs rho = 1 (rho={p.rho})")
    return discontinuity(G, p, _check_y(y))


def _abel(kernel_exp: float, h: Callable, y: float, cfg: QuadConfig) -> QuadResult:
    """``int_0^y (y - t)**kernel_exp h(t) dt`` with both singular ends placed at 0.

    The two halves are ``int_0^{y/2} (y-t)**e h(t) dt`` and
    ``int_0^{y/2} s**e h(y - s) ds``.
    """
    half = 0.5 * y

    def left(t):
        return np.power(y - t, kernel_exp) * h(t)

    def right(s):
        return np.power(s, kernel_exp) * h(y - s)

    return integrate_finite(left, 0.0, half, cfg) + integrate_finite(right, 0.0, half, cfg)


def abel_inverse_from_delta(delta: Callable, p: TransformParams, y: float, full_output: bool = False):
    """``F(y) = (rho - 1) int_0^y (y - t)**(rho - 2) Delta(t) dt``, ``rho > 1``.

    Only valid when Delta is integrable at 0; for the power pair that means
    ``rho < nu + 1``. A non-integrable Delta shows up as NonConvergence.
    """
    rho = p.rho
    if not rho > 1:
        raise DomainError(f"abel_inverse_from_delta needs rho > 1 (rho={rho})")
    y = _check_y(y)
    res = _abel(rho - 2.0, delta, y, p.quad).scaled(rho - 1.0)
    value = float(np.real(res.value))
    return (value, res) if full_output else value


def abel_inverse_from_delta_prime(
    delta_prime: Callable, p: TransformParams, y: float, full_output: bool = False
):
    """``F(y) = int_0^y (y - t)**(rho - 1) Delta'(t) dt``."""
    y = _check_y(y)
    res = _abel(p.rho - 1.0, delta_prime, y, p.quad)
    value = float(np.real(res.value))
    return (value, res) if full_output else value


def _real_derivative(f: Callable, step: float) -> Callable:
    def deriv(y):
        y = np.asarray(y, dtype=float)
        d = step * y
        return (8.0 * (f(y + d) - f(y - d)) - (f(y + 2 * d) - f(y - 2 * d))) / (12.0 * d)

    return deriv


def delta_from_f(F: SourceFunction, p: TransformParams, t: float, full_output: bool = False):
    """Inverse Abel form of the discontinuity, valid for ``rho < 2`` and ``F(0) = 0``:

        Delta(t) = sin(pi rho) / (pi (1 - rho)) int_0^t (t - y)**(1 - rho) F'(y) dy.

    At ``rho = 1`` the prefactor's limit gives ``Delta = F``.
    """
    rho = p.rho
    t = float(t)
    if not t > 0:
        raise DomainError("delta_from_f needs t > 0")
    if not rho < 2:
        raise DomainError(f"delta_from_f needs rho < 2 (rho={rho})")
    if F.density is None or F.point_masses:
        raise DomainError("delta_from_f supports densities without point masses")
    if rho == 1.0:
        value = float(F(t))
        return (value, QuadResult(value, 0.0, 1)) if full_output else value
    # F(0) = 0 unless F levels off at a non-zero value near the origin;
    # slowly vanishing powers like y**0.2 still shrink between the probes
    f1 = abs(float(F(1e-20 * t)))
    f2 = abs(float(F(1e-40 * t)))
    scale = max(1.0, abs(float(F(t))))
    if f2 > 1e-4 * scale and f2 > 0.9 * f1:
        raise DomainError("delta_from_f needs F(0) = 0")
    dF = F.derivative or _real_derivative(F.density, p.derivative_step)
    res = _abel(1.0 - rho, dF, t, p.quad)
    res = res.scaled(math.sin(math.pi * rho) / (math.pi * (1.0 - rho)))
    value = float(np.real(res.value))
    return (value, res) if full_output else value


def radial_inverse(
    g: Callable,
    mu: float,
    cfg: QuadConfig | None = None,
    path: str = "arc",
    full_output: bool = False,
):
    """Solve ``g(zeta) = int_0^inf (zeta**2 + mu**2)**(-3/2) f(mu) dmu`` for f(mu).

    With ``path="segment"`` this is the cosine form

        f(mu) = -(i mu**2 / pi) int_0^pi cos(theta) g(-i mu cos(theta)) dtheta,

    which samples g on the imaginary segment ``[-i mu, i mu]`` and therefore
    needs g integrable through ``zeta = 0``. ``path="arc"`` (default) uses the
    equivalent integral over the half circle ``zeta = mu exp(i phi)``,
    ``|phi| < pi/2``, which avoids the origin:

        f(mu) = (mu**2 / 2 pi i) int_C (1 + w)**(-1/2) g(mu sqrt(w)) dw.
    """
    mu = float(mu)
    if not mu > 0:
        raise DomainError("radial_inverse needs mu > 0")
    cfg = cfg or QuadConfig()
    if path == "arc":

        def integrand(w):
            return principal_pow(1.0 + w, -0.5) * g(mu * principal_pow(w, 0.5))

        res = integrate_contour(integrand, ContourSpec.unit_circle(), cfg)
        res = res.scaled(mu * mu / TWO_PI_I)
    elif path == "segment":
        # theta -> pi/2 - phi folds the two halves together; both meet zeta = 0 at phi = 0.
        def integrand(phi):
            s = np.sin(phi)
            return s * (g(-1j * mu * s) - g(1j * mu * s))

        res = integrate_finite(integrand, 0.0, 0.5 * math.pi, cfg)
        res = res.scaled(-1j * mu * mu / math.pi)
    else:
        raise DomainError(f"unknown radial path {path!r}")
    return _finish(res.value, res, "radial_inverse", full_output)
