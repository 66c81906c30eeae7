"""Geometry of the monomial-weighted cone and its closed-form constants.

The weight |x_1|^(a_1) ... |x_n|^(a_n) lives on the cone where coordinates
with a_i > 0 are restricted positive.  Everything here is a function of
the exponent vector alone: the homogeneous dimension D = n + sum(a), the
Gamma-product constant of the weighted unit-ball measure, the sharp
log-Sobolev and Sobolev constants, and the two families of closed-form
integrals (Gaussian-type and Cauchy-type) that the rest of the package
tests itself against.

All Gamma ratios are assembled in log space: the tensorized sequences push
Gamma arguments to 1e6 and beyond, where direct evaluation overflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .norms import NormSpec, euclidean
from .specialfn import log_gamma

__all__ = [
    "MonomialWeight",
    "pi_constant",
    "ball_measure",
    "weighted_ball_measure",
    "lq_ball_measure",
    "sharp_ls_constant",
    "unweighted_ls_constant",
    "sharp_sobolev_constant",
    "gaussian_integral",
    "cauchy_integral",
    "log_cauchy_value",
    "product_ball_volume",
    "product_cauchy_integral",
    "require_admissible_center",
    "is_admissible_center",
    "project_center",
]


@dataclass(frozen=True)
class MonomialWeight:
    """Exponent vector with its derived cone geometry.

    exponents       -- nonnegative a_i, one per coordinate
    dim             -- n
    homogeneous_dim -- D = n + sum(a_i)
    positive_count  -- number of strictly positive exponents
    pi_constant     -- [prod Gamma((a_i+1)/2) / 2^k]^(2/D)
    ball_measure    -- weighted measure of the Euclidean unit ball cap,
                       pi_constant^(D/2) / Gamma(D/2 + 1)
    """

    exponents: tuple
    dim: int = field(init=False)
    homogeneous_dim: float = field(init=False)
    positive_count: int = field(init=False)
    pi_constant: float = field(init=False)
    ball_measure: float = field(init=False)

    def __init__(self, exponents):
        exps = tuple(float(a) for a in np.atleast_1d(np.asarray(exponents, dtype=float)))
        if len(exps) == 0:
            raise ValueError("exponent vector must be nonempty")
        if any((not math.isfinite(a)) or a < 0.0 for a in exps):
            raise ValueError(f"exponents must be finite and nonnegative, got {exps}")
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "dim", len(exps))
        object.__setattr__(self, "homogeneous_dim", len(exps) + sum(exps))
        object.__setattr__(self, "positive_count", sum(1 for a in exps if a > 0.0))
        object.__setattr__(self, "pi_constant", pi_constant(exps))
        dd = self.homogeneous_dim
        logm = 0.5 * dd * math.log(self.pi_constant) - log_gamma(0.5 * dd + 1.0)
        object.__setattr__(self, "ball_measure", math.exp(logm))

    def weight_values(self, points: np.ndarray) -> np.ndarray:
        """prod_i |x_i|^(a_i) at points of shape (..., n)."""
        pts = np.asarray(points, dtype=float)
        out = np.ones(pts.shape[:-1])
        for i, a in enumerate(self.exponents):
            if a > 0.0:
                out = out * np.abs(pts[..., i]) ** a
        return out

    def repeated(self, copies: int) -> "MonomialWeight":
        """The exponent vector tiled `copies` times (product-space weight)."""
        return MonomialWeight(self.exponents * copies)


def pi_constant(exponents) -> float:
    """Gamma-product constant of the weighted unit-ball measure.

    Equal to pi when all exponents vanish, for every dimension.
    """
    exps = np.atleast_1d(np.asarray(exponents, dtype=float))
    if np.any(exps < 0.0):
        raise ValueError("exponents must be nonnegative")
    n = exps.shape[0]
    dd = n + float(np.sum(exps))
    if dd <= 0.0:
        raise ValueError("homogeneous dimension must be positive")
    k = int(np.sum(exps > 0.0))
    log_num = float(np.sum(log_gamma(0.5 * (exps + 1.0))))
    return math.exp((2.0 / dd) * (log_num - k * math.log(2.0)))


def ball_measure(w: MonomialWeight) -> float:
    """Weighted measure of the Euclidean unit ball intersected with the cone."""
    return w.ball_measure


def lq_ball_measure(q: float, w: MonomialWeight) -> float:
    """Weighted measure of the coordinate q-norm unit ball on the cone.

    Dirichlet's integral: the positive-orthant moment of the q-ball is
    prod Gamma((a_i+1)/q) / (q^n Gamma(D/q + 1)); each unrestricted axis
    (a_i = 0) contributes a factor 2.
    """
    if q < 1.0:
        raise ValueError("q must be >= 1")
    n, dd, k = w.dim, w.homogeneous_dim, w.positive_count
    logs = sum(log_gamma((a + 1.0) / q) for a in w.exponents)
    logm = (n - k) * math.log(2.0) + logs - n * math.log(q) - log_gamma(dd / q + 1.0)
    return math.exp(logm)


def weighted_ball_measure(w: MonomialWeight, norm_spec: NormSpec) -> float:
    """Weighted measure of `norm_spec`'s unit ball on the cone, closed form.

    Supported: euclidean, q-norm, diagonal q-norm.  Other variants have no
    closed form here; integrate the indicator instead.
    """
    if norm_spec.variant == "euclidean":
        return w.ball_measure
    if norm_spec.variant == "q":
        return lq_ball_measure(norm_spec.q, w)
    if norm_spec.variant == "diagonal":
        # scaling x_i -> x_i / w_i maps the ball to the plain q-ball and
        # multiplies the weighted measure by prod w_i^-(a_i + 1)
        scale = sum(
            (a + 1.0) * math.log(wt) for a, wt in zip(w.exponents, norm_spec.weights)
        )
        return lq_ball_measure(norm_spec.q, w) * math.exp(-scale)
    raise ValueError(f"no closed-form ball measure for variant {norm_spec.variant!r}")


def sharp_ls_constant(p: float, w: MonomialWeight, m_ball: float | None = None) -> float:
    """Sharp constant of the weighted Lp log-Sobolev inequality.

    (p/D) ((p-1)/e)^(p-1) [Gamma(D/p' + 1) m]^(-p/D) with m the weighted
    unit-ball measure of the chosen norm (Euclidean by default).  At p = 2
    with the Euclidean ball this collapses to 2 / (pi_constant * e * D).
    """
    if p <= 1.0:
        raise ValueError("p must be > 1")
    dd = w.homogeneous_dim
    pprime = p / (p - 1.0)
    m = w.ball_measure if m_ball is None else m_ball
    log_val = (
        math.log(p / dd)
        + (p - 1.0) * (math.log(p - 1.0) - 1.0)
        - (p / dd) * (log_gamma(dd / pprime + 1.0) + math.log(m))
    )
    return math.exp(log_val)


def unweighted_ls_constant(p: float, m_ball: float, n: int) -> float:
    """Sharp constant of the unweighted Lp log-Sobolev inequality for a norm
    whose unit ball has volume m_ball."""
    if p <= 1.0:
        raise ValueError("p must be > 1")
    pprime = p / (p - 1.0)
    log_val = (
        math.log(p / n)
        + (p - 1.0) * (math.log(p - 1.0) - 1.0)
        - (p / n) * (log_gamma(n / pprime + 1.0) + math.log(m_ball))
    )
    return math.exp(log_val)


def sharp_sobolev_constant(p: float, w: MonomialWeight) -> float:
    """Sharp constant of the weighted Lp Sobolev inequality, 1 < p < D."""
    dd = w.homogeneous_dim
    if not 1.0 < p < dd:
        raise ValueError(f"requires 1 < p < {dd}, got p={p}")
    pprime = p / (p - 1.0)
    logm = math.log(w.ball_measure)
    log_val = (
        -(1.0 / p + 1.0 / dd) * math.log(dd)
        + (1.0 / pprime) * math.log((p - 1.0) / (dd - p))
        + (1.0 / dd)
        * (
            math.log(pprime)
            + log_gamma(dd)
            - log_gamma(dd / p)
            - log_gamma(dd / pprime)
            - logm
        )
    )
    return math.exp(log_val)


def is_admissible_center(w: MonomialWeight, center) -> bool:
    c = np.zeros(w.dim) if center is None else np.asarray(center, dtype=float)
    return all(c[i] == 0.0 for i, a in enumerate(w.exponents) if a > 0.0)


def require_admissible_center(w: MonomialWeight, center):
    """Centers must vanish on weighted coordinates; translation invariance of
    the weighted integrals holds only there, so violations are hard errors."""
    if center is None:
        return np.zeros(w.dim)
    c = np.asarray(center, dtype=float)
    if c.shape != (w.dim,):
        raise ValueError(f"center must have shape ({w.dim},), got {c.shape}")
    if not is_admissible_center(w, c):
        raise ValueError(
            f"center {c.tolist()} has a nonzero entry on a weighted coordinate"
        )
    return c


def project_center(w: MonomialWeight, center) -> np.ndarray:
    """Zero out the components of `center` sitting on weighted coordinates."""
    c = np.asarray(center, dtype=float).copy()
    for i, a in enumerate(w.exponents):
        if a > 0.0:
            c[i] = 0.0
    return c


def gaussian_integral(
    alpha: float,
    t: float,
    w: MonomialWeight,
    center=None,
    moment: bool = False,
) -> float:
    """Weighted integral of exp(-t |x - x0|^alpha), optionally with an extra
    |x - x0|^alpha factor (moment=True).

    Closed forms:
        plain : t^(-D/alpha) Gamma(D/alpha + 1)/Gamma(D/2 + 1) Pi^(D/2)
        moment: (D/alpha) t^(-D/alpha - 1) * same Gamma factor
    """
    if alpha <= 0.0 or t <= 0.0:
        raise ValueError("alpha and t must be positive")
    require_admissible_center(w, center)
    dd = w.homogeneous_dim
    log_common = (
        log_gamma(dd / alpha + 1.0)
        - log_gamma(dd / 2.0 + 1.0)
        + 0.5 * dd * math.log(w.pi_constant)
    )
    if moment:
        return math.exp(
            math.log(dd / alpha) - (dd / alpha + 1.0) * math.log(t) + log_common
        )
    return math.exp(-(dd / alpha) * math.log(t) + log_common)


def log_cauchy_value(alpha: float, beta: float, sigma: float, dd: float, log_pi: float) -> float:
    """Log of the Cauchy-type closed form, parametrized by the homogeneous
    dimension directly so product-space values (D = l*D_base up to 1e6 and
    beyond) never materialize an exponent vector."""
    if alpha <= 1.0:
        raise ValueError("alpha must be > 1")
    if sigma <= 0.0:
        raise ValueError("sigma must be positive")
    if alpha * beta <= dd:
        raise ValueError(
            f"divergent integral: alpha*beta = {alpha * beta} <= D = {dd}"
        )
    return (
        math.log(2.0 / alpha)
        + 0.5 * dd * log_pi
        - (dd / alpha) * math.log(sigma)
        + log_gamma(dd / alpha)
        - log_gamma(dd / 2.0)
        + log_gamma(beta - dd / alpha)
        - log_gamma(beta)
    )


def cauchy_integral(
    alpha: float,
    beta: float,
    sigma: float,
    w: MonomialWeight,
    center=None,
) -> float:
    """Weighted integral of (1 + sigma |x - x0|^alpha)^(-beta), alpha*beta > D."""
    require_admissible_center(w, center)
    return math.exp(
        log_cauchy_value(
            alpha, beta, sigma, w.homogeneous_dim, math.log(w.pi_constant)
        )
    )


def product_ball_volume(n: int, copies: int, pprime: float, m_ball: float) -> float:
    """Volume of the unit ball of the blockwise p'-norm on (R^n)^copies built
    from a base norm whose unit ball has volume m_ball.

    (n/p')^(l-1) m^l Gamma(n/p')^l / (l Gamma(n l / p')), log-assembled.
    """
    if copies < 1:
        raise ValueError("copies must be >= 1")
    l = copies
    log_val = (
        (l - 1) * math.log(n / pprime)
        + l * math.log(m_ball)
        + l * log_gamma(n / pprime)
        - math.log(l)
        - log_gamma(n * l / pprime)
    )
    return math.exp(log_val)


def product_cauchy_integral(
    alpha: float, beta: float, sigma: float, total_dim: int, ball_volume: float
) -> float:
    """Integral of (1 + sigma |||z - z0|||^alpha)^(-beta) over R^N for a norm
    whose unit ball has the given volume; alpha*beta > N."""
    nn = float(total_dim)
    if alpha * beta <= nn:
        raise ValueError(f"divergent integral: alpha*beta = {alpha * beta} <= N = {nn}")
    if sigma <= 0.0:
        raise ValueError("sigma must be positive")
    log_val = (
        math.log(nn * ball_volume / alpha)
        + log_gamma(nn / alpha)
        + log_gamma(beta - nn / alpha)
        - log_gamma(beta)
        - (nn / alpha) * math.log(sigma)
    )
    return math.exp(log_val)
