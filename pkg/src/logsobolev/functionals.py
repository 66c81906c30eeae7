"""Mass, entropy, energy, the log-Sobolev deficit, and the Sobolev ratio.

For a field f on the weighted cone the three integrals are

    mass    = int |f|^p x^A dx
    entropy = int |f|^p log |f|^p x^A dx      (after unit-mass rescaling)
    energy  = int ||grad f||_*^p x^A dx       (after unit-mass rescaling)

and the deficit is

    deficit = (D/p) log(L * energy) - entropy  >=  0,

with L the sharp constant for the (weight, norm) pair.  The deficit
rescales its input to unit mass internally, so callers can hand it any
nontrivial field; this is what makes the minimizer's search unconstrained.
The sign convention makes the inequality read "deficit >= 0", with zero
exactly on the extremal family.

Entropy uses the 0 * log 0 = 0 convention: sample values below 1e-300
contribute nothing.  That choice is forced by continuity of t log t.

Euclidean-radial fields with admissible centers take the 1-D radial path,
including a dyadic tail, which keeps power-law profiles (whose p-energy
decays as slowly as r^-2 in the radial reduction) affordable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .monomial import (
    MonomialWeight,
    is_admissible_center,
    product_ball_volume,
    sharp_ls_constant,
    weighted_ball_measure,
)
from .norms import NormSpec, dual_spec, euclidean, norm
from .quadrature import (
    IntegralResult,
    QuadratureSpec,
    ScalarField,
    field_gradient,
    integrate_radial,
    integrate_weighted,
)

__all__ = [
    "DeficitReport",
    "UnitMassError",
    "mass",
    "entropy",
    "energy",
    "deficit",
    "sobolev_ratio",
    "ls_constant_for",
]

_TINY = 1e-300


class UnitMassError(ValueError):
    """Entropy requires a unit-mass field; see deficit for self-normalization."""


@dataclass(frozen=True)
class DeficitReport:
    p: float
    mass: float
    entropy: float
    energy: float
    deficit: float
    quadrature_err: float
    constant: float
    conjectural_equality: bool = False

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "mass": self.mass,
            "entropy": self.entropy,
            "energy": self.energy,
            "deficit": self.deficit,
            "quadrature_err": self.quadrature_err,
            "constant": self.constant,
            "conjectural_equality": self.conjectural_equality,
        }


def _xlogx(t: np.ndarray) -> np.ndarray:
    out = np.zeros_like(t)
    m = t > _TINY
    out[m] = t[m] * np.log(t[m])
    return out


def ls_constant_for(p: float, w: MonomialWeight, norm_spec: NormSpec) -> tuple:
    """Sharp log-Sobolev constant for the (weight, norm) pair.

    Returns (constant, conjectural): mixing a non-Euclidean norm with a
    nontrivial weight gives the constant for which equality on the
    exponential family is verified, but its sharpness is not established
    here, so such reports carry a flag instead of an assertion.
    """
    if norm_spec.variant == "euclidean":
        return sharp_ls_constant(p, w), False
    if norm_spec.variant == "product":
        base = norm_spec.base
        if w.positive_count > 0:
            raise ValueError("product norms are supported on unweighted space only")
        nl = w.dim
        base_dim = nl // norm_spec.copies
        base_w = MonomialWeight((0.0,) * base_dim)
        m_base = weighted_ball_measure(base_w, base)
        m = product_ball_volume(base_dim, norm_spec.copies, norm_spec.exponent, m_base)
        return sharp_ls_constant(p, w, m_ball=m), False
    m = weighted_ball_measure(w, norm_spec)
    return sharp_ls_constant(p, w, m_ball=m), w.positive_count > 0


def _radial_ok(f: ScalarField, w: MonomialWeight) -> bool:
    return f.radial is not None and is_admissible_center(w, np.asarray(f.radial.center))


def _mass_integral(f: ScalarField, p: float, w: MonomialWeight, spec: QuadratureSpec) -> IntegralResult:
    if _radial_ok(f, w):
        rp = f.radial
        return integrate_radial(
            lambda r: np.abs(rp.value(r)) ** p, w, spec, breakpoints=rp.breakpoints
        )
    g = ScalarField(eval=lambda pts: np.abs(f.eval(pts)) ** p, dimension=f.dimension)
    return integrate_weighted(g, w, spec)


def _entropy_integral(f: ScalarField, p: float, w: MonomialWeight, spec: QuadratureSpec) -> IntegralResult:
    if _radial_ok(f, w):
        rp = f.radial
        return integrate_radial(
            lambda r: _xlogx(np.abs(rp.value(r)) ** p), w, spec, breakpoints=rp.breakpoints
        )
    g = ScalarField(eval=lambda pts: _xlogx(np.abs(f.eval(pts)) ** p), dimension=f.dimension)
    return integrate_weighted(g, w, spec)


def _energy_integral(
    f: ScalarField, p: float, w: MonomialWeight, norm_spec: NormSpec, spec: QuadratureSpec
) -> IntegralResult:
    if (
        _radial_ok(f, w)
        and f.radial.dvalue is not None
        and norm_spec.variant == "euclidean"
    ):
        rp = f.radial
        return integrate_radial(
            lambda r: np.abs(rp.dvalue(r)) ** p, w, spec, breakpoints=rp.breakpoints
        )
    dual = dual_spec(norm_spec)

    def ev(pts):
        return norm(dual, field_gradient(f, pts)) ** p

    g = ScalarField(eval=ev, dimension=f.dimension)
    return integrate_weighted(g, w, spec)


def mass(f: ScalarField, p: float, w: MonomialWeight, spec: QuadratureSpec) -> float:
    """int |f|^p x^A dx."""
    if p < 1.0:
        raise ValueError("p must be >= 1")
    res = _mass_integral(f, p, w, spec)
    if res.value <= 0.0:
        raise ValueError(f"field has nonpositive mass {res.value}")
    return res.value


def entropy(f: ScalarField, p: float, w: MonomialWeight, spec: QuadratureSpec) -> float:
    """int |f|^p log |f|^p x^A dx for a unit-mass field."""
    mres = _mass_integral(f, p, w, spec)
    tol = max(1e-8, 10.0 * mres.err)
    if abs(mres.value - 1.0) > tol:
        raise UnitMassError(
            f"entropy requires unit mass, got {mres.value} (tolerance {tol}); "
            "normalize first or use deficit"
        )
    return _entropy_integral(f, p, w, spec).value


def energy(
    f: ScalarField, p: float, w: MonomialWeight, norm_spec: NormSpec, spec: QuadratureSpec
) -> float:
    """int ||grad f||_*^p x^A dx."""
    return _energy_integral(f, p, w, norm_spec, spec).value


def deficit(
    f: ScalarField,
    p: float,
    w: MonomialWeight,
    norm_spec: Optional[NormSpec] = None,
    spec: Optional[QuadratureSpec] = None,
    constant: Optional[float] = None,
) -> DeficitReport:
    """Log-Sobolev deficit of f, self-normalized to unit mass.

    Nonnegative up to quadrature error for every admissible field; zero on
    the matched exponential family.
    """
    if p <= 1.0:
        raise ValueError("p must be > 1")
    norm_spec = norm_spec or euclidean()
    spec = spec or QuadratureSpec()

    mres = _mass_integral(f, p, w, spec)
    if not mres.value > 0.0:
        raise ValueError(f"field has nonpositive mass {mres.value}")
    sres = _entropy_integral(f, p, w, spec)
    eres = _energy_integral(f, p, w, norm_spec, spec)
    if not eres.value > 0.0:
        raise ValueError(f"field has nonpositive energy {eres.value}")

    conjectural = False
    if constant is None:
        constant, conjectural = ls_constant_for(p, w, norm_spec)

    mm, ss, ee = mres.value, sres.value, eres.value
    ent_n = ss / mm - math.log(mm)
    ene_n = ee / mm
    dd = w.homogeneous_dim
    value = (dd / p) * math.log(constant * ene_n) - ent_n

    err = (
        (dd / p) * (eres.err / ee + mres.err / mm)
        + sres.err / mm
        + abs(ss) * mres.err / mm**2
        + mres.err / mm
    )
    return DeficitReport(
        p=p,
        mass=mm,
        entropy=ent_n,
        energy=ene_n,
        deficit=value,
        quadrature_err=err,
        constant=constant,
        conjectural_equality=conjectural,
    )


def sobolev_ratio(f: ScalarField, p: float, w: MonomialWeight, spec: QuadratureSpec) -> float:
    """||f||_{p*, weighted} / ||grad f||_{p, weighted} with p* = Dp/(D-p).

    Scale- and dilation-invariant; bounded by the sharp Sobolev constant,
    with equality exactly on the translated/dilated extremal profile.
    """
    dd = w.homogeneous_dim
    if not 1.0 < p < dd:
        raise ValueError(f"requires 1 < p < D = {dd}")
    pstar = dd * p / (dd - p)
    num = _mass_integral(f, pstar, w, spec).value
    den = _energy_integral(f, p, w, euclidean(), spec).value
    return num ** (1.0 / pstar) / den ** (1.0 / p)
