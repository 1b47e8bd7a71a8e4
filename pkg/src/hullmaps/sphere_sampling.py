"""Direction sampling on S^{d-1}: global low-discrepancy plans and caps.

Cap sampling exists because the map images accumulate around hull vertices,
so measuring face coverage needs directions concentrated near chosen normals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import StrategyDimensionMismatchError
from .geom_core import unit_vector

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))

STRATEGIES = ("uniform_grid_2d", "fibonacci_3d", "gaussian_random")


@dataclass(frozen=True)
class CapFocus:
    """Targeted-sampling parameters: angular cap radius, optional face id."""

    cap_radius: float
    face_id: int | None = None

    def __post_init__(self):
        if not (0.0 < self.cap_radius <= math.pi):
            raise ValueError(f"cap_radius must lie in (0, pi], got {self.cap_radius!r}")


@dataclass(frozen=True)
class SamplePlan:
    """A reproducible direction-sampling request."""

    dim: int
    strategy: str
    count: int
    seed: int = 0
    focus: CapFocus | None = None

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; one of {STRATEGIES}")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.dim < 2:
            raise ValueError("sphere sampling needs dim >= 2")


def sample(plan: SamplePlan) -> np.ndarray:
    """Generate ``plan.count`` unit directions, deterministic given the seed."""
    if plan.strategy == "uniform_grid_2d":
        if plan.dim != 2:
            raise StrategyDimensionMismatchError("uniform_grid_2d requires dim = 2")
        theta = 2.0 * np.pi * np.arange(plan.count) / plan.count
        return np.column_stack([np.cos(theta), np.sin(theta)])
    if plan.strategy == "fibonacci_3d":
        if plan.dim != 3:
            raise StrategyDimensionMismatchError("fibonacci_3d requires dim = 3")
        i = np.arange(plan.count)
        offset = 2.0 / plan.count
        y = (i * offset - 1.0) + offset / 2.0
        r = np.sqrt(np.maximum(0.0, 1.0 - y * y))
        phi = i * GOLDEN_ANGLE
        return np.column_stack([np.cos(phi) * r, y, np.sin(phi) * r])
    # gaussian_random: the only dimension-generic uniform scheme
    rng = np.random.default_rng(plan.seed)
    out = np.empty((plan.count, plan.dim))
    filled = 0
    while filled < plan.count:
        block = rng.standard_normal((plan.count - filled, plan.dim))
        nrm = np.linalg.norm(block, axis=1)
        ok = nrm > 1e-12
        block = block[ok] / nrm[ok, None]
        out[filled:filled + block.shape[0]] = block
        filled += block.shape[0]
    return out


def _orthonormal_complement(center: np.ndarray) -> np.ndarray:
    """(d-1, d) orthonormal basis of the hyperplane orthogonal to center."""
    d = center.shape[0]
    basis = []
    for v in np.eye(d):
        w = v - np.dot(v, center) * center
        for b in basis:
            w = w - np.dot(w, b) * b
        nrm = np.linalg.norm(w)
        if nrm > 1e-6:
            basis.append(w / nrm)
        if len(basis) == d - 1:
            break
    return np.asarray(basis)


def sample_near(plan: SamplePlan, center) -> np.ndarray:
    """Quasi-uniform directions within the angular cap of ``plan.focus`` around center."""
    if plan.focus is None:
        raise ValueError("sample_near requires plan.focus with a cap_radius")
    c = unit_vector(center)
    if c.shape[0] != plan.dim:
        raise StrategyDimensionMismatchError(
            f"center has dimension {c.shape[0]}, plan expects {plan.dim}"
        )
    r = plan.focus.cap_radius
    count = plan.count
    if count == 1:
        return c[None, :].copy()

    if plan.dim == 2:
        base = math.atan2(c[1], c[0])
        offs = -r + 2.0 * r * (np.arange(count) + 0.5) / count
        theta = base + offs
        return np.column_stack([np.cos(theta), np.sin(theta)])

    if plan.dim == 3:
        # area-uniform spiral: first sample sits exactly at the cap center
        i = np.arange(count)
        cos_t = 1.0 - (1.0 - math.cos(r)) * i / count
        sin_t = np.sqrt(np.maximum(0.0, 1.0 - cos_t * cos_t))
        phi = i * GOLDEN_ANGLE
        basis = _orthonormal_complement(c)
        u, v = basis[0], basis[1]
        return (
            cos_t[:, None] * c[None, :]
            + (sin_t * np.cos(phi))[:, None] * u[None, :]
            + (sin_t * np.sin(phi))[:, None] * v[None, :]
        )

    # generic dimension: geodesic construction with rejection-sampled polar angle
    rng = np.random.default_rng(plan.seed)
    basis = _orthonormal_complement(c)
    dm2 = plan.dim - 2
    sin_peak = math.sin(min(r, math.pi / 2.0)) ** dm2
    out = np.empty((count, plan.dim))
    out[0] = c
    k = 1
    while k < count:
        theta = rng.uniform(0.0, r)
        if rng.uniform(0.0, sin_peak) > math.sin(theta) ** dm2:
            continue
        w = rng.standard_normal(plan.dim - 1)
        nrm = np.linalg.norm(w)
        if nrm < 1e-12:
            continue
        w = (w / nrm) @ basis
        out[k] = math.cos(theta) * c + math.sin(theta) * w
        k += 1
    return out
