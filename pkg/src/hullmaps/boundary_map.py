"""The one-parameter map family from the unit sphere into the hull interior.

For a configuration x_1..x_n and direction n, each pair factor is
``eps + max(0, -<n, n_ij>)``; point weights are the normalized (n-1)-fold
products of these factors, and the map value is the weighted point average.
Products are formed in the log domain so that moderate n stays well clear of
underflow.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import IndexOutOfRangeError, NumericalOverflowError
from .geom_core import PointConfiguration, unit_vector

MAX_POINTS = 1000
MAX_DIM = 6


@dataclass(frozen=True)
class WeightVector:
    """Barycentric weights of one direction: lambdas sum to 1, each in (0, 1)."""

    epsilon: float
    direction: np.ndarray
    lambdas: np.ndarray
    log_c: np.ndarray


@dataclass(frozen=True)
class MapImage:
    """A direction together with its image point inside the hull."""

    direction: np.ndarray
    point: np.ndarray


def _validate(config: PointConfiguration, epsilon: float) -> None:
    if not (0.0 < epsilon <= 1.0):
        raise ValueError(f"epsilon must lie in (0, 1], got {epsilon!r}")
    if config.n_points > MAX_POINTS or config.dim > MAX_DIM:
        raise NumericalOverflowError(
            f"supported limits are n <= {MAX_POINTS}, d <= {MAX_DIM}; "
            f"got n = {config.n_points}, d = {config.dim}"
        )


def _check_index(config: PointConfiguration, i: int) -> None:
    if not (0 <= i < config.n_points):
        raise IndexOutOfRangeError(f"index {i} outside 0..{config.n_points - 1}")


def _as_dir_batch(config: PointConfiguration, dirs) -> np.ndarray:
    arr = np.ascontiguousarray(dirs, dtype=float)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != config.dim:
        raise ValueError(f"directions must have shape (N, {config.dim})")
    if arr.size:
        nrm = np.linalg.norm(arr, axis=1)
        worst = float(np.abs(nrm - 1.0).max())
        if worst > 1e-9:
            raise ValueError(f"directions must be unit vectors (worst norm error {worst:g})")
    return arr


def c_factor(config: PointConfiguration, i: int, j: int, epsilon: float, n) -> float:
    """Single pair factor ``eps + max(0, -<n, n_ij>)``; always positive."""
    _validate(config, epsilon)
    _check_index(config, i)
    _check_index(config, j)
    if i == j:
        raise ValueError("pair factor requires i != j")
    d = unit_vector(n)
    return epsilon + max(0.0, -float(np.dot(d, config.pairwise_dirs[i, j])))


def weights(config: PointConfiguration, epsilon: float, direction) -> WeightVector:
    """Normalized point weights for one direction (log-domain, underflow-safe)."""
    _validate(config, epsilon)
    d = unit_vector(direction)
    lam, log_c, _ = _kernels.eval_batch(
        config.points, config.pairwise_dirs, epsilon, d[None, :]
    )
    return WeightVector(epsilon=epsilon, direction=d, lambdas=lam[0], log_c=log_c[0])


def evaluate(config: PointConfiguration, epsilon: float, direction) -> MapImage:
    """Map one direction to its image point, a strict interior point of the hull."""
    _validate(config, epsilon)
    d = unit_vector(direction)
    _, _, img = _kernels.eval_batch(
        config.points, config.pairwise_dirs, epsilon, d[None, :]
    )
    return MapImage(direction=d, point=img[0])


def evaluate_batch_array(config: PointConfiguration, epsilon: float, dirs) -> np.ndarray:
    """Image points for a batch of directions as an (N, d) array.

    Fast path used by the measurement harness; elementwise identical to
    calling :func:`evaluate` per direction, regardless of batch splits.
    """
    _validate(config, epsilon)
    arr = _as_dir_batch(config, dirs)
    if arr.shape[0] == 0:
        return np.empty((0, config.dim))
    _, _, img = _kernels.eval_batch(config.points, config.pairwise_dirs, epsilon, arr)
    return img


def weights_batch_array(config: PointConfiguration, epsilon: float, dirs):
    """(lambdas, log_c, images) arrays for a batch of directions."""
    _validate(config, epsilon)
    arr = _as_dir_batch(config, dirs)
    if arr.shape[0] == 0:
        n = config.n_points
        return np.empty((0, n)), np.empty((0, n)), np.empty((0, config.dim))
    return _kernels.eval_batch(config.points, config.pairwise_dirs, epsilon, arr)


def evaluate_batch(config: PointConfiguration, epsilon: float, dirs) -> list[MapImage]:
    """Batch version of :func:`evaluate` returning one MapImage per direction."""
    arr = _as_dir_batch(config, dirs)
    img = evaluate_batch_array(config, epsilon, arr)
    return [MapImage(direction=arr[k], point=img[k]) for k in range(arr.shape[0])]


def limit_factor(config: PointConfiguration, i: int, n) -> float:
    """Zero-epsilon limit of the i-th product factor: prod_j max(0, -<n, n_ij>).

    At most one index has a strictly positive value, and that index is a
    hull vertex; the value is 0 whenever the direction supports a face of
    positive dimension.
    """
    _check_index(config, i)
    d = unit_vector(n)
    acc = 1.0
    for j in range(config.n_points):
        if j == i:
            continue
        acc *= max(0.0, -float(np.dot(d, config.pairwise_dirs[i, j])))
        if acc == 0.0:
            return 0.0
    return acc
