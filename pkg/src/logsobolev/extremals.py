"""Equality-case profiles: exponential extremals and the power-law profile
that saturates the weighted Sobolev inequality.

Exponential family
------------------
f(x) = beta * exp(-||x - x0||^(p') / sigma) with an admissible center and
beta fixed by unit p-mass.  The normalization integral factorizes in polar
coordinates with respect to the chosen norm: for any norm whose weighted
unit-ball measure m is known in closed form,

    int exp(-t ||x||^(p')) x^A dx = m * Gamma(D/p' + 1) * t^(-D/p'),

so beta^(-p) is that value at t = p/sigma.  Other norms fall back to
quadrature normalization.  Profiles mixing a non-Euclidean norm with a
nontrivial weight are constructed but flagged conjectural: the deficit is
computed and reported, not asserted to characterize equality.

Power-law (Sobolev) family
--------------------------
h(x) = (s + |x|^(p'))^(1 - D/p) with s fixed by unit p*-mass.  Since
(1 - D/p) * p* = -D, the p*-mass is s^(-D/p) * K with

    K = (2/p') Pi^(D/2) Gamma(D/p') Gamma(D/p) / (Gamma(D/2) Gamma(D)),

obtained from the Cauchy-type closed form at exponent pair (p', D); hence
s = K^(p/D).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .monomial import (
    MonomialWeight,
    require_admissible_center,
    weighted_ball_measure,
)
from .norms import NormSpec, euclidean, norm, norm_gradient, norm_to_json
from .quadrature import (
    QuadratureSpec,
    RadialProfile,
    ScalarField,
    exp_tail_radius,
    integrate_weighted,
)
from .specialfn import log_gamma

__all__ = [
    "ExtremalProfile",
    "log_sobolev_extremal",
    "make_log_sobolev_extremal",
    "make_talenti",
    "talenti_sigma",
    "extremal_quadrature_spec",
]


@dataclass(frozen=True)
class ExtremalProfile:
    p: float
    pprime: float
    sigma: float
    center: tuple
    beta: float
    norm: NormSpec
    weight: MonomialWeight
    conjectural_equality: bool = False

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "sigma": self.sigma,
            "center": list(self.center),
            "norm": norm_to_json(self.norm),
            "exponents": list(self.weight.exponents),
            "beta": self.beta,
            "conjectural_equality": self.conjectural_equality,
        }

    def field(self) -> ScalarField:
        p, pp, sigma, beta = self.p, self.pprime, self.sigma, self.beta
        c = np.asarray(self.center)
        nspec = self.norm
        w = self.weight

        def ev(pts):
            return beta * np.exp(-norm(nspec, pts - c) ** pp / sigma)

        def gr(pts):
            y = pts - c
            nrm = norm(nspec, y)
            out = np.zeros_like(np.asarray(pts, dtype=float))
            mask = nrm > 0.0
            if np.any(mask):
                g = norm_gradient(nspec, y[mask])
                coef = (
                    -beta
                    * (pp / sigma)
                    * nrm[mask] ** (pp - 1.0)
                    * np.exp(-(nrm[mask] ** pp) / sigma)
                )
                out[mask] = coef[..., None] * g
            # grad vanishes at the center for p' > 1 (continuous extension)
            return out

        radial = None
        if nspec.variant == "euclidean":
            radial = RadialProfile(
                center=self.center,
                value=lambda r: beta * np.exp(-(r**pp) / sigma),
                dvalue=lambda r: -beta
                * (pp / sigma)
                * r ** (pp - 1.0)
                * np.exp(-(r**pp) / sigma),
            )
        hint = exp_tail_radius(
            pp, sigma, w.homogeneous_dim + p + pp, 1e-10
        ) + float(np.max(np.abs(c)))
        return ScalarField(
            eval=ev, dimension=w.dim, grad=gr, radial=radial, radius_hint=hint
        )


def _log_normalization(pp: float, t: float, dd: float, m_ball: float) -> float:
    # int exp(-t ||x||^p') x^A dx in norm-polar coordinates
    return math.log(m_ball) + log_gamma(dd / pp + 1.0) - (dd / pp) * math.log(t)


def log_sobolev_extremal(
    p: float,
    sigma: float,
    center,
    w: MonomialWeight,
    norm_spec: Optional[NormSpec] = None,
    quad_spec: Optional[QuadratureSpec] = None,
) -> ExtremalProfile:
    """Unit-mass exponential extremal profile for the (weight, norm) pair."""
    if p <= 1.0:
        raise ValueError("p must be > 1")
    if sigma <= 0.0:
        raise ValueError("sigma must be positive")
    norm_spec = norm_spec or euclidean()
    c = require_admissible_center(w, center)
    pp = p / (p - 1.0)
    dd = w.homogeneous_dim

    conjectural = norm_spec.variant != "euclidean" and w.positive_count > 0
    try:
        m_ball = weighted_ball_measure(w, norm_spec)
        log_i = _log_normalization(pp, p / sigma, dd, m_ball)
    except ValueError:
        # no closed-form ball measure: normalize by quadrature
        spec = quad_spec or extremal_quadrature_spec(p, sigma, c, w)
        raw = ScalarField(
            eval=lambda pts: np.exp(-norm(norm_spec, pts - c) ** pp * (p / sigma)),
            dimension=w.dim,
        )
        log_i = math.log(integrate_weighted(raw, w, spec).value)
    beta = math.exp(-log_i / p)
    return ExtremalProfile(
        p=p,
        pprime=pp,
        sigma=sigma,
        center=tuple(c),
        beta=beta,
        norm=norm_spec,
        weight=w,
        conjectural_equality=conjectural,
    )


def make_log_sobolev_extremal(
    p: float,
    sigma: float,
    center,
    w: MonomialWeight,
    norm_spec: Optional[NormSpec] = None,
    quad_spec: Optional[QuadratureSpec] = None,
) -> ScalarField:
    """Field view of log_sobolev_extremal."""
    return log_sobolev_extremal(p, sigma, center, w, norm_spec, quad_spec).field()


def extremal_quadrature_spec(
    p: float,
    sigma: float,
    center,
    w: MonomialWeight,
    rel_tol: float = 1e-9,
    nodes: int = 64,
    scheme: str = "tensor_gauss",
) -> QuadratureSpec:
    """Quadrature spec sized for exp(-||x - x0||^(p')/sigma) integrands:
    radius R with exp(-R^(p')/sigma) R^(D+p) below rel_tol/10, plus the
    center offset."""
    pp = p / (p - 1.0)
    r = exp_tail_radius(pp, sigma, w.homogeneous_dim + p, rel_tol)
    off = 0.0 if center is None else float(np.max(np.abs(np.asarray(center, dtype=float))))
    return QuadratureSpec(
        scheme=scheme,
        nodes_per_axis=nodes,
        truncation_radius=r + off,
        rel_tol=rel_tol,
    )


def talenti_sigma(p: float, w: MonomialWeight) -> float:
    """Offset s making (s + |x|^(p'))^(1 - D/p) have unit p*-mass."""
    dd = w.homogeneous_dim
    if not 1.0 < p < dd:
        raise ValueError(f"requires 1 < p < D = {dd}")
    pp = p / (p - 1.0)
    log_k = (
        math.log(2.0 / pp)
        + 0.5 * dd * math.log(w.pi_constant)
        + log_gamma(dd / pp)
        + log_gamma(dd / p)
        - log_gamma(dd / 2.0)
        - log_gamma(dd)
    )
    return math.exp(log_k * p / dd)


def make_talenti(
    p: float,
    w: MonomialWeight,
    dilation: float = 1.0,
    center=None,
    scale: float = 1.0,
) -> ScalarField:
    """scale * h(dilation * (x - center)) with h the unit-p*-mass power-law
    profile; the Sobolev ratio is invariant in scale and dilation."""
    dd = w.homogeneous_dim
    c = require_admissible_center(w, center)
    if dilation <= 0.0:
        raise ValueError("dilation must be positive")
    pp = p / (p - 1.0)
    s = talenti_sigma(p, w)
    expo = 1.0 - dd / p

    def ev(pts):
        r = dilation * np.sqrt(np.sum((pts - c) ** 2, axis=-1))
        return scale * (s + r**pp) ** expo

    def gr(pts):
        y = pts - c
        r = dilation * np.sqrt(np.sum(y * y, axis=-1))
        out = np.zeros_like(np.asarray(pts, dtype=float))
        mask = r > 0.0
        if np.any(mask):
            rr = r[mask]
            coef = (
                scale
                * expo
                * pp
                * dilation**2
                * rr ** (pp - 2.0)
                * (s + rr**pp) ** (expo - 1.0)
            )
            out[mask] = coef[..., None] * y[mask]
        return out

    radial = RadialProfile(
        center=tuple(c),
        value=lambda r: scale * (s + (dilation * r) ** pp) ** expo,
        dvalue=lambda r: scale
        * expo
        * pp
        * dilation
        * (dilation * r) ** (pp - 1.0)
        * (s + (dilation * r) ** pp) ** (expo - 1.0),
    )
    return ScalarField(
        eval=ev,
        dimension=w.dim,
        grad=gr,
        radial=radial,
        radius_hint=None,  # power tail: radial path with dyadic continuation
    )
