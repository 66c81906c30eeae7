"""Constructors for concrete test fields with analytic gradients.

These are the inputs the deficit machinery is exercised with: Gaussians and
Gaussian mixtures, tilted (tanh-modulated) bumps, and polynomial-modulated
Gaussians.  Every constructor returns a ScalarField whose ``grad`` is exact,
so energy quadrature never pays finite-difference noise, and whose
``radius_hint`` bounds the support up to the working tolerance.

The seeded ``random_field`` sampler drives the randomized inequality
suites; identical seeds give identical fields.
"""

from __future__ import annotations

import numpy as np

from .quadrature import RadialProfile, ScalarField, exp_tail_radius

__all__ = [
    "gaussian_field",
    "gaussian_mixture",
    "tilted_bump",
    "polynomial_gaussian",
    "cosine_bump",
    "random_field",
]


def gaussian_field(dim: int, rate: float = 1.0, center=None, amplitude: float = 1.0) -> ScalarField:
    """amplitude * exp(-rate |x - center|^2)."""
    c = np.zeros(dim) if center is None else np.asarray(center, dtype=float)

    def ev(pts):
        d = pts - c
        return amplitude * np.exp(-rate * np.sum(d * d, axis=-1))

    def gr(pts):
        d = pts - c
        return (-2.0 * rate * amplitude) * d * np.exp(-rate * np.sum(d * d, axis=-1))[..., None]

    radial = RadialProfile(
        center=tuple(c),
        value=lambda r: amplitude * np.exp(-rate * r * r),
        dvalue=lambda r: -2.0 * rate * amplitude * r * np.exp(-rate * r * r),
    )
    hint = exp_tail_radius(2.0, 1.0 / rate, dim + 6.0, 1e-9) + float(np.max(np.abs(c)))
    return ScalarField(eval=ev, dimension=dim, grad=gr, radial=radial, radius_hint=hint)


def gaussian_mixture(dim: int, terms) -> ScalarField:
    """sum_j amp_j exp(-rate_j |x - mu_j|^2); terms = [(amp, rate, mu), ...]."""
    terms = [(float(a), float(r), np.asarray(mu, dtype=float)) for a, r, mu in terms]

    def ev(pts):
        out = np.zeros(pts.shape[:-1])
        for amp, rate, mu in terms:
            d = pts - mu
            out += amp * np.exp(-rate * np.sum(d * d, axis=-1))
        return out

    def gr(pts):
        out = np.zeros_like(pts)
        for amp, rate, mu in terms:
            d = pts - mu
            out += (-2.0 * rate * amp) * d * np.exp(-rate * np.sum(d * d, axis=-1))[..., None]
        return out

    slow = min(r for _, r, _ in terms)
    off = max(float(np.max(np.abs(mu))) for _, _, mu in terms)
    hint = exp_tail_radius(2.0, 1.0 / slow, dim + 6.0, 1e-9) + off
    return ScalarField(eval=ev, dimension=dim, grad=gr, radius_hint=hint)


def tilted_bump(dim: int, rate: float, center, tilt, shift: float = 0.0) -> ScalarField:
    """(1 + tanh(tilt . x + shift)/2) * exp(-rate |x - center|^2)."""
    c = np.asarray(center, dtype=float)
    v = np.asarray(tilt, dtype=float)

    def parts(pts):
        d = pts - c
        g = np.exp(-rate * np.sum(d * d, axis=-1))
        th = np.tanh(pts @ v + shift)
        return d, g, th

    def ev(pts):
        _, g, th = parts(pts)
        return (1.0 + 0.5 * th) * g

    def gr(pts):
        d, g, th = parts(pts)
        sech2 = 1.0 - th * th
        return (0.5 * sech2 * g)[..., None] * v + (1.0 + 0.5 * th)[..., None] * (
            -2.0 * rate * d * g[..., None]
        )

    hint = exp_tail_radius(2.0, 1.0 / rate, dim + 6.0, 1e-9) + float(np.max(np.abs(c)))
    return ScalarField(eval=ev, dimension=dim, grad=gr, radius_hint=hint)


def polynomial_gaussian(dim: int, rate: float, center, linear, quadratic) -> ScalarField:
    """(1 + b.x + sum_i d_i x_i^2) * exp(-rate |x - center|^2); may change sign."""
    c = np.asarray(center, dtype=float)
    b = np.asarray(linear, dtype=float)
    d2 = np.asarray(quadratic, dtype=float)

    def ev(pts):
        dd = pts - c
        g = np.exp(-rate * np.sum(dd * dd, axis=-1))
        poly = 1.0 + pts @ b + np.sum(d2 * pts * pts, axis=-1)
        return poly * g

    def gr(pts):
        dd = pts - c
        g = np.exp(-rate * np.sum(dd * dd, axis=-1))
        poly = 1.0 + pts @ b + np.sum(d2 * pts * pts, axis=-1)
        dpoly = b + 2.0 * d2 * pts
        return dpoly * g[..., None] + poly[..., None] * (-2.0 * rate) * dd * g[..., None]

    hint = exp_tail_radius(2.0, 1.0 / rate, dim + 8.0, 1e-9) + float(np.max(np.abs(c)))
    return ScalarField(eval=ev, dimension=dim, grad=gr, radius_hint=hint)


def cosine_bump(dim: int) -> ScalarField:
    """prod_i cos^2(pi x_i / 2) on [-1, 1]^dim, zero outside; total mass 1."""

    def ev(pts):
        inside = np.all(np.abs(pts) <= 1.0, axis=-1)
        vals = np.prod(np.cos(0.5 * np.pi * np.clip(pts, -1.0, 1.0)) ** 2, axis=-1)
        return np.where(inside, vals, 0.0)

    return ScalarField(eval=ev, dimension=dim, grad=None, radius_hint=1.5)


def random_field(rng: np.random.Generator, dim: int) -> ScalarField:
    """One random field from the three families above, seeded and reproducible."""
    kind = rng.integers(0, 3)
    if kind == 0:
        k = int(rng.integers(1, 4))
        terms = [
            (rng.uniform(0.3, 1.0), rng.uniform(0.4, 1.6), rng.uniform(-0.8, 0.8, size=dim))
            for _ in range(k)
        ]
        return gaussian_mixture(dim, terms)
    if kind == 1:
        return tilted_bump(
            dim,
            rate=rng.uniform(0.5, 1.5),
            center=rng.uniform(-0.6, 0.6, size=dim),
            tilt=rng.uniform(-1.0, 1.0, size=dim),
            shift=rng.uniform(-0.5, 0.5),
        )
    return polynomial_gaussian(
        dim,
        rate=rng.uniform(0.5, 1.5),
        center=rng.uniform(-0.6, 0.6, size=dim),
        linear=rng.uniform(-0.7, 0.7, size=dim),
        quadratic=rng.uniform(-0.4, 0.6, size=dim),
    )
