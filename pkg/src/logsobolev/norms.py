"""Norms on R^n and on products R^(n*l), with duals and gradients.

A ``NormSpec`` is an immutable description of one of four norm families:

* ``euclidean``            -- the standard inner-product norm,
* ``q``                    -- the coordinate q-norm, q in [1, inf],
* ``diagonal``             -- q-norm of a positive diagonal scaling,
* ``product``              -- blockwise norm (sum_i ||x_i||^e)^(1/e) on l
                              copies of a base space, e > 1.

Duality is closed-form throughout: the dual of a q-norm is the conjugate
q'-norm, the dual of a diagonal norm inverts the scaling, and the dual of
a product norm is the product of the dual base norm with the conjugate
exponent.  A generic ascent-based fallback is kept for cross-checking the
closed forms but is never used inside quadrature, where optimization noise
would pollute error estimates.

All evaluation functions are vectorized over leading axes: ``x`` may have
shape ``(..., dim)`` and results drop the last axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

__all__ = [
    "NormSpec",
    "NormGradientError",
    "euclidean",
    "q_norm",
    "diagonal_weighted",
    "product_norm",
    "conjugate_exponent",
    "norm",
    "dual_spec",
    "dual_norm",
    "norm_gradient",
    "dual_norm_by_ascent",
    "norm_to_json",
    "norm_from_json",
]


class NormGradientError(ValueError):
    """Raised when a norm gradient is requested at a non-differentiable point."""


@dataclass(frozen=True)
class NormSpec:
    variant: str
    q: Optional[float] = None
    weights: Optional[tuple] = None
    base: Optional["NormSpec"] = None
    copies: Optional[int] = None
    exponent: Optional[float] = None

    def __post_init__(self):
        if self.variant not in ("euclidean", "q", "diagonal", "product"):
            raise ValueError(f"unknown norm variant {self.variant!r}")
        if self.variant == "q":
            if self.q is None or (self.q < 1.0 and not math.isinf(self.q)):
                raise ValueError(f"q-norm requires q >= 1, got {self.q!r}")
        if self.variant == "diagonal":
            if self.weights is None or any(w <= 0 for w in self.weights):
                raise ValueError("diagonal norm requires positive weights")
            if self.q is None or self.q < 1.0:
                raise ValueError("diagonal norm requires q >= 1")
        if self.variant == "product":
            if self.base is None or self.copies is None or self.copies < 1:
                raise ValueError("product norm requires a base spec and copies >= 1")
            if self.exponent is None or self.exponent <= 1.0:
                raise ValueError("product norm requires exponent > 1")


def euclidean() -> NormSpec:
    return NormSpec("euclidean")


def q_norm(q: float) -> NormSpec:
    return NormSpec("q", q=float(q))


def diagonal_weighted(weights, q: float = 2.0) -> NormSpec:
    return NormSpec("diagonal", q=float(q), weights=tuple(float(w) for w in weights))


def product_norm(base: NormSpec, copies: int, exponent: float) -> NormSpec:
    return NormSpec("product", base=base, copies=int(copies), exponent=float(exponent))


def conjugate_exponent(q: float) -> float:
    """Hoelder conjugate: 1 <-> inf, otherwise q/(q-1)."""
    if math.isinf(q):
        return 1.0
    if q == 1.0:
        return math.inf
    return q / (q - 1.0)


def _lq(x: np.ndarray, q: float) -> np.ndarray:
    """Coordinate q-norm along the last axis, overflow-safe."""
    ax = np.abs(x)
    if math.isinf(q):
        return np.max(ax, axis=-1)
    if q == 1.0:
        return np.sum(ax, axis=-1)
    if q == 2.0:
        return np.sqrt(np.sum(ax * ax, axis=-1))
    scale = np.max(ax, axis=-1)
    safe = np.where(scale > 0.0, scale, 1.0)
    val = np.sum((ax / safe[..., None]) ** q, axis=-1) ** (1.0 / q)
    return np.where(scale > 0.0, safe * val, 0.0)


def norm(spec: NormSpec, x) -> np.ndarray:
    """Evaluate the norm; x has shape (..., dim)."""
    x = np.asarray(x, dtype=float)
    if spec.variant == "euclidean":
        return np.sqrt(np.sum(x * x, axis=-1))
    if spec.variant == "q":
        return _lq(x, spec.q)
    if spec.variant == "diagonal":
        w = np.asarray(spec.weights)
        if x.shape[-1] != w.shape[0]:
            raise ValueError(f"dimension mismatch: x has {x.shape[-1]}, weights {w.shape[0]}")
        return _lq(x * w, spec.q)
    # product: blocks along the last axis
    l = spec.copies
    if x.shape[-1] % l != 0:
        raise ValueError(f"dimension {x.shape[-1]} not divisible into {l} blocks")
    nb = x.shape[-1] // l
    blocks = x.reshape(x.shape[:-1] + (l, nb))
    per_block = norm(spec.base, blocks)
    return _lq(per_block, spec.exponent)


def dual_spec(spec: NormSpec) -> NormSpec:
    """Closed-form dual norm as a NormSpec."""
    if spec.variant == "euclidean":
        return spec
    if spec.variant == "q":
        return q_norm(conjugate_exponent(spec.q))
    if spec.variant == "diagonal":
        inv = tuple(1.0 / w for w in spec.weights)
        return diagonal_weighted(inv, conjugate_exponent(spec.q))
    return NormSpec(
        "product",
        base=dual_spec(spec.base),
        copies=spec.copies,
        exponent=conjugate_exponent(spec.exponent),
    )


def dual_norm(spec: NormSpec, xi) -> np.ndarray:
    """sup of x . xi over the unit ball of `spec`, via the closed-form dual."""
    return norm(dual_spec(spec), xi)


def _lq_gradient(x: np.ndarray, q: float) -> np.ndarray:
    """Gradient of the coordinate q-norm; caller guarantees differentiability."""
    if q == 2.0:
        nrm = _lq(x, 2.0)
        return x / nrm[..., None]
    if q == 1.0:
        return np.sign(x)
    nrm = _lq(x, q)
    return np.sign(x) * (np.abs(x) / nrm[..., None]) ** (q - 1.0)


def _check_nonzero(values: np.ndarray, what: str):
    if np.any(values == 0.0):
        raise NormGradientError(f"{what} gradient requested at a zero point")


def norm_gradient(spec: NormSpec, x) -> np.ndarray:
    """Gradient of the norm at x (shape (..., dim)); 0-homogeneous.

    Raises NormGradientError at non-differentiable points: the origin for
    every variant, coordinate hyperplanes for q = 1, any point for q = inf.
    """
    x = np.asarray(x, dtype=float)
    if spec.variant == "euclidean":
        nrm = np.sqrt(np.sum(x * x, axis=-1))
        _check_nonzero(nrm, "euclidean")
        return x / nrm[..., None]
    if spec.variant == "q":
        if math.isinf(spec.q):
            raise NormGradientError("max-norm has no classical gradient")
        if spec.q == 1.0 and np.any(x == 0.0):
            raise NormGradientError("l1 gradient undefined on coordinate hyperplanes")
        nrm = _lq(x, spec.q)
        _check_nonzero(nrm, "q-norm")
        return _lq_gradient(x, spec.q)
    if spec.variant == "diagonal":
        w = np.asarray(spec.weights)
        y = x * w
        if spec.q == 1.0 and np.any(y == 0.0):
            raise NormGradientError("l1 gradient undefined on coordinate hyperplanes")
        nrm = _lq(y, spec.q)
        _check_nonzero(nrm, "diagonal")
        return _lq_gradient(y, spec.q) * w
    # product
    l, e = spec.copies, spec.exponent
    nb = x.shape[-1] // l
    blocks = x.reshape(x.shape[:-1] + (l, nb))
    bn = norm(spec.base, blocks)  # (..., l)
    total = _lq(bn, e)
    _check_nonzero(total, "product")
    # zero blocks contribute zero gradient (continuous extension, valid for e > 1)
    nonzero = bn > 0.0
    safe_blocks = np.where(nonzero[..., None], blocks, 1.0)
    base_grad = norm_gradient(spec.base, safe_blocks)
    coef = np.where(nonzero, (bn / total[..., None]) ** (e - 1.0), 0.0)
    grad = coef[..., None] * np.where(nonzero[..., None], base_grad, 0.0)
    return grad.reshape(x.shape)


def dual_norm_by_ascent(spec: NormSpec, xi, iterations: int = 200) -> float:
    """Generic dual-norm evaluation: ascent of x . xi over the unit sphere.

    Verification fallback for smooth variants; the closed forms in
    dual_norm are authoritative.  Single vector only.
    """
    xi = np.asarray(xi, dtype=float)
    nxi = float(np.sqrt(np.sum(xi * xi)))
    if nxi == 0.0:
        return 0.0
    y = xi / nxi
    ny = float(norm(spec, y))
    best = float(np.dot(y, xi)) / ny
    step = 1.0
    for _ in range(iterations):
        ny = float(norm(spec, y))
        g = xi / ny - (np.dot(y, xi) / ny**2) * norm_gradient(spec, y)
        cand = y + step * g
        ncand = float(norm(spec, cand))
        if ncand == 0.0:
            step *= 0.5
            continue
        val = float(np.dot(cand, xi)) / ncand
        if val > best:
            best = val
            y = cand / ncand
            step *= 1.3
        else:
            step *= 0.5
    return best


def norm_to_json(spec: NormSpec) -> dict:
    d: dict = {"variant": spec.variant}
    if spec.variant == "q":
        d["q"] = spec.q
    elif spec.variant == "diagonal":
        d["q"] = spec.q
        d["weights"] = list(spec.weights)
    elif spec.variant == "product":
        d["base"] = norm_to_json(spec.base)
        d["copies"] = spec.copies
        d["exponent"] = spec.exponent
    return d


def norm_from_json(d: dict) -> NormSpec:
    v = d["variant"]
    if v == "euclidean":
        return euclidean()
    if v == "q":
        return q_norm(d["q"])
    if v == "diagonal":
        return diagonal_weighted(d["weights"], d.get("q", 2.0))
    if v == "product":
        return product_norm(norm_from_json(d["base"]), d["copies"], d["exponent"])
    raise ValueError(f"unknown norm variant {v!r}")
