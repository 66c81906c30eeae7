"""Weighted numerical integration over the monomial cone.

Two schemes share one entry point, ``integrate_weighted``:

* ``tensor_gauss`` -- a fixed tensor-product rule whose per-axis nodes are
  matched to the weight: Gauss-Jacobi on (0, R] absorbs |x_i|^(a_i)
  exactly on weighted axes, mirrored Gauss-Legendre panels cover [-R, R]
  on unweighted axes (split at 0 so kinks on coordinate hyperplanes never
  sit inside a panel).  Two node counts give the error estimate.  This is
  the fast path used by the functionals.

* ``adaptive`` -- adaptive cubature (Gauss-Kronrod in 1-D, Genz-Malik in
  higher dimension) on the truncated box with the weight written into the
  integrand.  Slower, but structurally independent of both the closed
  forms and the tensor rule, which makes it the oracle the closed forms
  are verified against.

``integrate_radial`` handles Euclidean-radial integrands through the 1-D
reduction with a Gauss-Jacobi main panel plus dyadically continued tail
segments, so slowly decaying (power-law) profiles need no huge truncation
radius.

Node evaluation is vectorized and summation order is fixed, so repeated
runs are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from scipy.integrate import cubature as _scipy_cubature
from scipy.special import roots_jacobi

from .monomial import MonomialWeight

__all__ = [
    "QuadratureSpec",
    "ScalarField",
    "RadialProfile",
    "IntegralResult",
    "QuadratureError",
    "NonFiniteSampleError",
    "integrate_weighted",
    "integrate_radial",
    "field_gradient",
    "finite_difference_gradient",
    "exp_tail_radius",
    "ball_volume_by_slicing",
]

_FD_STEP = float(np.cbrt(np.finfo(float).eps))


class QuadratureError(RuntimeError):
    """Integration failed; carries the best estimate when one exists."""

    def __init__(self, message, value=None, err=None):
        super().__init__(message)
        self.value = value
        self.err = err


class NonFiniteSampleError(QuadratureError):
    def __init__(self, location):
        super().__init__(f"integrand not finite at {location}")
        self.location = location


@dataclass(frozen=True)
class QuadratureSpec:
    scheme: str = "tensor_gauss"
    nodes_per_axis: int = 64
    truncation_radius: float = 30.0
    rel_tol: float = 1e-8
    max_subdivisions: int = 10000

    def __post_init__(self):
        if self.scheme not in ("tensor_gauss", "adaptive"):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.nodes_per_axis < 4:
            raise ValueError("nodes_per_axis must be >= 4")
        if self.rel_tol <= 0.0 or self.truncation_radius <= 0.0:
            raise ValueError("rel_tol and truncation_radius must be positive")


@dataclass(frozen=True)
class RadialProfile:
    """Euclidean-radial description of a field around an admissible center."""

    center: tuple
    value: Callable[[np.ndarray], np.ndarray]
    dvalue: Optional[Callable[[np.ndarray], np.ndarray]] = None
    breakpoints: tuple = ()


@dataclass(frozen=True)
class ScalarField:
    """Pure evaluation contract: eval maps (m, dim) arrays to (m,) values.

    grad, when given, must match central finite differences; fields without
    one fall back to differencing with step cbrt(eps) * (1 + |x|).
    radial, when given, certifies f(x) = value(|x - center|), with dvalue
    its radial derivative and breakpoints the derivative-kink radii.
    radius_hint, when given, is a truncation radius under which the field's
    own tail is negligible at the working tolerance.
    """

    eval: Callable[[np.ndarray], np.ndarray]
    dimension: int
    grad: Optional[Callable[[np.ndarray], np.ndarray]] = None
    radial: Optional[RadialProfile] = None
    radius_hint: Optional[float] = None


@dataclass(frozen=True)
class IntegralResult:
    value: float
    err: float


def finite_difference_gradient(eval_fn, points: np.ndarray) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    out = np.empty_like(pts)
    h = _FD_STEP * (1.0 + np.abs(pts))
    for i in range(pts.shape[-1]):
        up = pts.copy()
        dn = pts.copy()
        up[..., i] += h[..., i]
        dn[..., i] -= h[..., i]
        out[..., i] = (eval_fn(up) - eval_fn(dn)) / (2.0 * h[..., i])
    return out


def field_gradient(field: ScalarField, points: np.ndarray) -> np.ndarray:
    if field.grad is not None:
        return field.grad(np.asarray(points, dtype=float))
    return finite_difference_gradient(field.eval, points)


@lru_cache(maxsize=256)
def _jacobi_rule(m: int, beta: float):
    # weight (1+u)^beta on [-1, 1]; beta = 0 is Gauss-Legendre
    u, wts = roots_jacobi(m, 0.0, beta)
    return u, wts


def _axis_rule(exponent: float, radius: float, m: int):
    """Nodes/weights for one axis, weight |x|^exponent absorbed exactly.

    Weighted axes live on (0, R]; unweighted axes get mirrored panels on
    [-R, 0) and (0, R].
    """
    u, wts = _jacobi_rule(m, float(exponent))
    x = 0.5 * radius * (1.0 + u)
    wx = wts * (0.5 * radius) ** (exponent + 1.0)
    if exponent > 0.0:
        return x, wx
    return np.concatenate([-x[::-1], x]), np.concatenate([wx[::-1], wx])


def _tensor_pass(field: ScalarField, w: MonomialWeight, radius: float, m: int) -> float:
    axes = [_axis_rule(a, radius, m) for a in w.exponents]
    grids = np.meshgrid(*[ax[0] for ax in axes], indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=-1)
    wt = axes[0][1]
    for _, aw in axes[1:]:
        wt = np.multiply.outer(wt, aw)
    vals = np.asarray(field.eval(pts), dtype=float)
    if not np.all(np.isfinite(vals)):
        bad = pts[~np.isfinite(vals)][0]
        raise NonFiniteSampleError(bad.tolist())
    return float(np.dot(wt.ravel(), vals))


def _integrate_tensor(field: ScalarField, w: MonomialWeight, spec: QuadratureSpec) -> IntegralResult:
    m = spec.nodes_per_axis
    m_fine = m + max(6, m // 3)
    coarse = _tensor_pass(field, w, spec.truncation_radius, m)
    fine = _tensor_pass(field, w, spec.truncation_radius, m_fine)
    return IntegralResult(fine, abs(fine - coarse))


def _integrate_adaptive(
    field: ScalarField, w: MonomialWeight, spec: QuadratureSpec, abs_tol: float
) -> IntegralResult:
    r = spec.truncation_radius
    lo = np.array([0.0 if a > 0.0 else -r for a in w.exponents])
    hi = np.full(w.dim, r)

    def integrand(pts):
        vals = np.asarray(field.eval(pts), dtype=float) * w.weight_values(pts)
        if not np.all(np.isfinite(vals)):
            bad = np.asarray(pts)[~np.isfinite(vals)][0]
            raise NonFiniteSampleError(bad.tolist())
        return vals

    rule = "gk21" if w.dim == 1 else "genz-malik"
    res = _scipy_cubature(
        integrand,
        lo,
        hi,
        rule=rule,
        rtol=spec.rel_tol,
        atol=abs_tol,
        max_subdivisions=spec.max_subdivisions,
    )
    value = float(res.estimate)
    err = float(res.error)
    if res.status != "converged":
        raise QuadratureError(
            f"adaptive cubature did not reach rel_tol={spec.rel_tol} "
            f"within {spec.max_subdivisions} subdivisions (value={value}, err={err})",
            value=value,
            err=err,
        )
    return IntegralResult(value, err)


def integrate_weighted(
    field: ScalarField,
    w: MonomialWeight,
    spec: QuadratureSpec,
    abs_tol: float = 0.0,
) -> IntegralResult:
    """Integral of field(x) * x^A over the truncated cone.

    The caller asserts integrable decay inside the truncation box; use
    exp_tail_radius (or a doubling check) to size the box.  The tensor
    scheme always returns its estimate together with a two-level error;
    the adaptive scheme enforces rel_tol and raises QuadratureError with
    the best estimate attached when subdivisions run out.
    """
    if field.dimension != w.dim:
        raise ValueError(
            f"field dimension {field.dimension} != weight dimension {w.dim}"
        )
    if spec.scheme == "tensor_gauss":
        return _integrate_tensor(field, w, spec)
    return _integrate_adaptive(field, w, spec, abs_tol)


def _segment_legendre(profile, dpow: float, a: float, b: float, m: int) -> float:
    u, wts = _jacobi_rule(m, 0.0)
    r = 0.5 * (b - a) * (1.0 + u) + a
    vals = np.asarray(profile(r), dtype=float) * r**dpow
    return float(np.dot(wts, vals)) * 0.5 * (b - a)


def integrate_radial(
    profile: Callable[[np.ndarray], np.ndarray],
    w: MonomialWeight,
    spec: QuadratureSpec,
    breakpoints=(),
) -> IntegralResult:
    """Weighted integral of a Euclidean-radial integrand.

    Reduces to D * m(ball) * int_0^inf profile(r) r^(D-1) dr.  The segment
    [0, R] uses Gauss-Jacobi absorbing r^(D-1) exactly (split further at
    the supplied breakpoints); past R, dyadic segments [R 2^j, R 2^(j+1)]
    continue until their contribution is negligible, which makes power-law
    tails affordable without a large R.
    """
    dd = w.homogeneous_dim
    r0 = spec.truncation_radius
    m = spec.nodes_per_axis
    m_fine = m + max(6, m // 3)

    cuts = sorted(b for b in breakpoints if 0.0 < b < r0)
    edges = [0.0] + cuts + [r0]

    def main_integral(nodes: int) -> float:
        # first segment from 0 absorbs the r^(D-1) factor in the rule
        u, wts = _jacobi_rule(nodes, dd - 1.0)
        s = edges[1]
        r = 0.5 * s * (1.0 + u)
        total = float(np.dot(wts, np.asarray(profile(r), dtype=float))) * (0.5 * s) ** dd
        for a, b in zip(edges[1:-1], edges[2:]):
            total += _segment_legendre(profile, dd - 1.0, a, b, nodes)
        return total

    coarse = main_integral(m)
    fine = main_integral(m_fine)
    value = fine
    err = abs(fine - coarse)

    # dyadic tail continuation
    lo = r0
    for _ in range(64):
        hi = 2.0 * lo
        seg = _segment_legendre(profile, dd - 1.0, lo, hi, 32)
        value += seg
        lo = hi
        if abs(seg) <= 0.1 * spec.rel_tol * abs(value):
            break
    else:
        err += abs(seg)

    scale = dd * w.ball_measure
    return IntegralResult(scale * value, scale * err)


def exp_tail_radius(
    power: float, scale: float, degree: float, rel_tol: float, minimum: float = 5.0
) -> float:
    """Radius R with exp(-R^power / scale) * R^degree below rel_tol / 10.

    Fixed-point iteration on R = (scale * (degree log R - log(tol/10)))^(1/power).
    """
    target = math.log(rel_tol / 10.0)
    r = max(minimum, 2.0)
    for _ in range(60):
        rhs = scale * (degree * math.log(r) - target)
        r_new = rhs ** (1.0 / power) if rhs > 0 else minimum
        if abs(r_new - r) < 1e-9 * r:
            r = r_new
            break
        r = r_new
    return max(r, minimum)


def ball_volume_by_slicing(norm_spec, total_dim: int, rel_tol: float = 1e-7) -> float:
    """Volume of a unit norm ball by slicing along the last coordinate.

    For each point z' of the first N-1 coordinates inside the ball's
    shadow, the slice {t : ||(z', t)|| < 1} is a symmetric interval whose
    endpoint is found by bisection on the norm; the resulting width
    function is integrated by adaptive cubature.  Requires a norm that is
    symmetric in the sign of each coordinate (true for every shipped
    variant), and never touches the Gamma-product closed forms, so it
    serves as their independent oracle.
    """
    from .norms import norm as _norm  # local import avoids cycle at module load

    unit = np.eye(total_dim)
    axis_caps = np.array([1.0 / float(_norm(norm_spec, unit[i])) for i in range(total_dim)])
    t_hi = axis_caps[-1] * (1.0 + 1e-12)

    if total_dim == 1:
        return 2.0 * axis_caps[0]

    def width(zp):
        zp = np.asarray(zp, dtype=float)
        mpts = zp.shape[0]
        base = np.concatenate([zp, np.zeros((mpts, 1))], axis=1)
        inside = np.asarray(_norm(norm_spec, base)) < 1.0
        lo = np.zeros(mpts)
        hi = np.full(mpts, t_hi)
        pts = base.copy()
        for _ in range(54):
            mid = 0.5 * (lo + hi)
            pts[:, -1] = mid
            below = np.asarray(_norm(norm_spec, pts)) < 1.0
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        return np.where(inside, 2.0 * lo, 0.0)

    lo_box = -axis_caps[:-1]
    hi_box = axis_caps[:-1]
    rule = "gk21" if total_dim == 2 else "genz-malik"
    res = _scipy_cubature(width, lo_box, hi_box, rule=rule, rtol=rel_tol, atol=1e-12)
    return float(res.estimate)
