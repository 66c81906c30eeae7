"""Derivative-free search for deficit minimizers over parametric families.

Two families are searched:

* ``stretched_exponential`` -- exp(-||x - c||^q / s) with parameters
  (q, s) and optionally a free center.  The family contains the equality
  profiles at q = p', so a minimizer driving the deficit to zero and q to
  p' is numerical evidence that nothing else attains equality.

* ``radial_spline`` -- exp of a shape-preserving cubic through K log-values
  on fixed geometric radii, constant near zero and with a forced
  super-exponential tail past the last knot.  A nonparametric-ish control:
  the minimizer must rediscover the exponential profile from a free shape.

The search is Nelder-Mead (simplex): deficit evaluations go through
quadrature, so gradients would be noise; the parameter counts are small.
Centers are projected onto admissibility (components on weighted
coordinates are zeroed) inside the family rather than rejected, so the
admissibility constraint shows up as landscape structure, not as a wall.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import minimize as _scipy_minimize
from scipy.optimize import minimize_scalar as _scipy_minimize_scalar

from .extremals import log_sobolev_extremal
from .functionals import deficit
from .monomial import MonomialWeight, project_center
from .norms import NormSpec, euclidean, norm, norm_gradient
from .quadrature import (
    QuadratureSpec,
    RadialProfile,
    ScalarField,
    exp_tail_radius,
    integrate_weighted,
)

__all__ = [
    "ProfileFamily",
    "stretched_exponential_family",
    "radial_spline_family",
    "MinimizeOptions",
    "MinimizeResult",
    "minimize_deficit",
    "deficit_landscape",
    "best_fit_extremal_distance",
]


@dataclass(frozen=True)
class ProfileFamily:
    kind: str
    weight: MonomialWeight
    norm: NormSpec
    bounds: tuple
    names: tuple
    center_free: bool = False
    knot_radii: tuple = ()

    def build(self, theta) -> ScalarField:
        theta = np.asarray(theta, dtype=float)
        if self.kind == "stretched_exponential":
            return self._build_stretched(theta)
        return self._build_spline(theta)

    def _center(self, theta_tail) -> np.ndarray:
        n = self.weight.dim
        if self.center_free:
            return project_center(self.weight, np.asarray(theta_tail, dtype=float))
        return np.zeros(n)

    def _build_stretched(self, theta) -> ScalarField:
        q, s = float(theta[0]), float(theta[1])
        c = self._center(theta[2:])
        nspec = self.norm
        n = self.weight.dim

        def ev(pts):
            return np.exp(-norm(nspec, pts - c) ** q / s)

        def gr(pts):
            y = pts - c
            nrm = norm(nspec, y)
            out = np.zeros_like(np.asarray(pts, dtype=float))
            mask = nrm > 0.0
            if np.any(mask):
                g = norm_gradient(nspec, y[mask])
                coef = -(q / s) * nrm[mask] ** (q - 1.0) * np.exp(-nrm[mask] ** q / s)
                out[mask] = coef[..., None] * g
            return out

        radial = None
        if nspec.variant == "euclidean":
            radial = RadialProfile(
                center=tuple(c),
                value=lambda r: np.exp(-(r**q) / s),
                dvalue=lambda r: -(q / s) * r ** (q - 1.0) * np.exp(-(r**q) / s),
            )
        # the integration box must track the profile scale, or large-s trial
        # points truncate their mass and fake a negative deficit
        hint = exp_tail_radius(q, s, self.weight.homogeneous_dim + q + 4.0, 1e-10)
        hint += float(np.max(np.abs(c)))
        return ScalarField(eval=ev, dimension=n, grad=gr, radial=radial, radius_hint=hint)

    def _build_spline(self, theta) -> ScalarField:
        radii = np.asarray(self.knot_radii)
        k = radii.shape[0]
        logs = np.asarray(theta[:k], dtype=float)
        c = self._center(theta[k:])
        n = self.weight.dim
        big_r = radii[-1]

        # flat cap at zero (duplicated first value gives pchip a zero slope),
        # forced super-exponential tail past the last knot
        xs = np.concatenate([[0.0], radii])
        ys = np.concatenate([[logs[0]], logs])
        interp = PchipInterpolator(xs, ys)
        dinterp = interp.derivative()
        tail_slope = min(0.0, float(dinterp(big_r)))
        tail_level = float(interp(big_r))

        def log_profile(r):
            r = np.asarray(r, dtype=float)
            inside = r <= big_r
            out = np.empty_like(r)
            out[inside] = interp(r[inside])
            d = r[~inside] - big_r
            out[~inside] = tail_level + tail_slope * d - d * d
            return out

        def dlog_profile(r):
            r = np.asarray(r, dtype=float)
            inside = r <= big_r
            out = np.empty_like(r)
            out[inside] = dinterp(r[inside])
            d = r[~inside] - big_r
            out[~inside] = tail_slope - 2.0 * d
            return out

        def value(r):
            return np.exp(log_profile(r))

        def dvalue(r):
            return np.exp(log_profile(r)) * dlog_profile(r)

        def ev(pts):
            return value(np.sqrt(np.sum((pts - c) ** 2, axis=-1)))

        def gr(pts):
            y = pts - c
            r = np.sqrt(np.sum(y * y, axis=-1))
            out = np.zeros_like(np.asarray(pts, dtype=float))
            mask = r > 0.0
            if np.any(mask):
                out[mask] = (dvalue(r[mask]) / r[mask])[..., None] * y[mask]
            return out

        radial = RadialProfile(
            center=tuple(c), value=value, dvalue=dvalue, breakpoints=tuple(radii)
        )
        # tail past the last knot decays like exp(-(r - R)^2): R + 7 suffices
        return ScalarField(
            eval=ev, dimension=n, grad=gr, radial=radial, radius_hint=big_r + 7.0
        )

    def initial_guess(self, rng: Optional[np.random.Generator] = None) -> np.ndarray:
        lows = np.array([b[0] for b in self.bounds])
        highs = np.array([b[1] for b in self.bounds])
        if rng is None:
            return 0.5 * (lows + highs)
        return rng.uniform(lows + 0.1 * (highs - lows), highs - 0.1 * (highs - lows))


def stretched_exponential_family(
    w: MonomialWeight,
    norm_spec: Optional[NormSpec] = None,
    center_free: bool = False,
    q_bounds=(1.05, 6.0),
    sigma_bounds=(0.05, 25.0),
    center_bounds=(-2.0, 2.0),
) -> ProfileFamily:
    norm_spec = norm_spec or euclidean()
    bounds = [tuple(q_bounds), tuple(sigma_bounds)]
    names = ["q", "sigma"]
    if center_free:
        bounds += [tuple(center_bounds)] * w.dim
        names += [f"center_{i}" for i in range(w.dim)]
    return ProfileFamily(
        kind="stretched_exponential",
        weight=w,
        norm=norm_spec,
        bounds=tuple(bounds),
        names=tuple(names),
        center_free=center_free,
    )


def radial_spline_family(
    w: MonomialWeight,
    knots: int = 8,
    outer_radius: float = 6.0,
    log_bounds=(-14.0, 3.0),
) -> ProfileFamily:
    # geometric knot radii: outer_radius / 2^(K-1) ... outer_radius
    radii = tuple(outer_radius * 0.5 ** (knots - 1 - j) for j in range(knots))
    return ProfileFamily(
        kind="radial_spline",
        weight=w,
        norm=euclidean(),
        bounds=tuple([tuple(log_bounds)] * knots),
        names=tuple(f"log_value_{j}" for j in range(knots)),
        knot_radii=radii,
    )


@dataclass(frozen=True)
class MinimizeOptions:
    max_iters: int = 2000
    simplex_tol: float = 1e-8
    quad_spec: QuadratureSpec = dc_field(
        default_factory=lambda: QuadratureSpec(nodes_per_axis=48, truncation_radius=14.0, rel_tol=1e-8)
    )
    seed: Optional[int] = None
    initial: Optional[tuple] = None


@dataclass(frozen=True)
class MinimizeResult:
    theta_star: tuple
    deficit_star: float
    iterations: int
    converged: bool
    distance_to_extremal: float
    best_fit_sigma: float
    history: tuple

    def to_json(self) -> dict:
        return {
            "theta_star": list(self.theta_star),
            "deficit_star": self.deficit_star,
            "iterations": self.iterations,
            "converged": self.converged,
            "distance_to_extremal": self.distance_to_extremal,
            "best_fit_sigma": self.best_fit_sigma,
            "history": list(self.history),
        }


_PENALTY = 1e9


def _spec_for(field: ScalarField, spec: QuadratureSpec) -> QuadratureSpec:
    if field.radius_hint is None:
        return spec
    from dataclasses import replace

    return replace(spec, truncation_radius=field.radius_hint)


def minimize_deficit(
    family: ProfileFamily,
    p: float,
    w: MonomialWeight,
    norm_spec: Optional[NormSpec] = None,
    opts: Optional[MinimizeOptions] = None,
) -> MinimizeResult:
    """Nelder-Mead over the family's parameters; each evaluation is a
    self-normalizing deficit with a box sized to the trial profile."""
    norm_spec = norm_spec or family.norm
    opts = opts or MinimizeOptions()
    history: list = []

    def objective(theta):
        try:
            fld = family.build(theta)
            rep = deficit(fld, p, w, norm_spec, _spec_for(fld, opts.quad_spec))
            val = rep.deficit
        except Exception:
            val = _PENALTY
        history.append(min(val, history[-1]) if history else val)
        return val

    if opts.initial is not None:
        x0 = np.asarray(opts.initial, dtype=float)
    else:
        rng = np.random.default_rng(opts.seed) if opts.seed is not None else None
        x0 = family.initial_guess(rng)

    res = _scipy_minimize(
        objective,
        x0,
        method="Nelder-Mead",
        bounds=family.bounds,
        options={
            "maxiter": opts.max_iters,
            "xatol": opts.simplex_tol,
            "fatol": opts.simplex_tol,
        },
    )
    theta_star = tuple(float(v) for v in res.x)
    f_star = family.build(res.x)
    center = f_star.radial.center if f_star.radial is not None else (0.0,) * w.dim
    dist, sigma_fit = best_fit_extremal_distance(
        f_star, p, w, norm_spec, _spec_for(f_star, opts.quad_spec), center=center
    )
    return MinimizeResult(
        theta_star=theta_star,
        deficit_star=float(res.fun),
        iterations=int(res.nit),
        converged=bool(res.success),
        distance_to_extremal=dist,
        best_fit_sigma=sigma_fit,
        history=tuple(history),
    )


def best_fit_extremal_distance(
    f: ScalarField,
    p: float,
    w: MonomialWeight,
    norm_spec: Optional[NormSpec] = None,
    spec: Optional[QuadratureSpec] = None,
    center=None,
) -> tuple:
    """Weighted L2 distance from the unit-p-mass normalization of f to the
    nearest unit-mass exponential extremal (scale parameter fitted).

    Returns (distance, fitted_sigma).
    """
    from .functionals import mass as _mass

    norm_spec = norm_spec or euclidean()
    spec = spec or QuadratureSpec(nodes_per_axis=48, truncation_radius=14.0)
    center = project_center(w, center if center is not None else np.zeros(w.dim))
    m = _mass(f, p, w, spec)
    scale = m ** (-1.0 / p)

    def distance_for(log_sigma: float) -> float:
        h = log_sobolev_extremal(p, math.exp(log_sigma), center, w, norm_spec).field()
        diff = ScalarField(
            eval=lambda pts: (scale * f.eval(pts) - h.eval(pts)) ** 2,
            dimension=w.dim,
        )
        return integrate_weighted(diff, w, spec).value

    res = _scipy_minimize_scalar(
        distance_for, bounds=(math.log(1e-2), math.log(1e3)), method="bounded",
        options={"xatol": 1e-6},
    )
    return math.sqrt(max(res.fun, 0.0)), math.exp(res.x)


def deficit_landscape(
    family: ProfileFamily,
    p: float,
    w: MonomialWeight,
    norm_spec: Optional[NormSpec],
    axis_values: dict,
    base_theta: Sequence[float],
    spec: Optional[QuadratureSpec] = None,
) -> list:
    """Deficit on a grid: vary the parameters named in axis_values (index ->
    values) around base_theta.  Failures are recorded per cell, not fatal.

    Returns a list of row dicts {theta, deficit, error}.
    """
    norm_spec = norm_spec or family.norm
    spec = spec or QuadratureSpec(nodes_per_axis=48, truncation_radius=14.0)
    base = np.asarray(base_theta, dtype=float)
    idx = sorted(axis_values.keys())
    grids = [axis_values[i] for i in idx]
    rows = []
    mesh = np.meshgrid(*grids, indexing="ij")
    for flat in zip(*[m.ravel() for m in mesh]):
        theta = base.copy()
        for i, v in zip(idx, flat):
            theta[i] = v
        row = {"theta": [float(v) for v in theta]}
        try:
            rep = deficit(family.build(theta), p, w, norm_spec, spec)
            row["deficit"] = rep.deficit
            row["error"] = None
        except Exception as exc:  # recorded, not raised
            row["deficit"] = None
            row["error"] = str(exc)
        rows.append(row)
    return rows
