"""2-D projections of the weighted, normalized data.

PCA is the deterministic reference method (exact covariance
eigendecomposition, fixed sign convention); t-SNE is the interactive
default, implemented exact (no tree approximation) with a seeded RNG so
identical seed + params reproduce identical coordinates. Both operate
on the weighted matrix w_j * normalized[i][j].
"""

from __future__ import annotations

import hashlib
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from .data import Dataset, attribute_contributions
from .errors import InvalidParameterError, OperationCancelledError, UnknownItemError
from .ranking import WeightVector, fingerprint

PCA = "pca"
TSNE = "tsne"


@dataclass(frozen=True)
class ProjectionConfig:
    method: str = TSNE
    seed: int = 0
    perplexity: float = 15.0
    iterations: int = 1000
    learning_rate: float = 200.0

    def __post_init__(self):
        if self.method not in (PCA, TSNE):
            raise InvalidParameterError(f"unknown projection method {self.method!r}")
        if self.iterations < 250:
            raise InvalidParameterError("iterations must be >= 250")
        if self.perplexity <= 0:
            raise InvalidParameterError("perplexity must be positive")


@dataclass(frozen=True)
class Projection:
    coords: np.ndarray = field(repr=False)
    item_ids: tuple[str, ...]
    config: ProjectionConfig
    weights_fingerprint: str

    def __post_init__(self):
        if self.coords.shape != (len(self.item_ids), 2):
            raise InvalidParameterError("need one 2-D coordinate pair per item")
        if not np.all(np.isfinite(self.coords)):
            raise InvalidParameterError("coordinates must be finite")
        self.coords.setflags(write=False)
        object.__setattr__(self, "_index", {i: n for n, i in enumerate(self.item_ids)})

    def coord(self, item_id: str) -> np.ndarray:
        try:
            return self.coords[self._index[item_id]]
        except KeyError:
            raise UnknownItemError(f"unknown item id {item_id!r}") from None

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(self.coords.tobytes())
        h.update(repr(self.config).encode())
        h.update(self.weights_fingerprint.encode())
        return h.hexdigest()[:16]


def weighted_matrix(dataset: Dataset, weights: WeightVector | np.ndarray) -> np.ndarray:
    """Same arithmetic as attribute_contributions; the projection input."""
    w = weights.w if isinstance(weights, WeightVector) else np.asarray(weights, np.float64)
    return attribute_contributions(dataset, w)


def project(
    weighted: np.ndarray,
    config: ProjectionConfig,
    *,
    item_ids: Sequence[str] | None = None,
    weights_fingerprint: str = "",
    should_cancel: Callable[[], bool] | None = None,
) -> Projection:
    """Run the configured method on an already-weighted matrix."""
    weighted = np.asarray(weighted, dtype=np.float64)
    n = weighted.shape[0]
    if n < 3:
        raise InvalidParameterError("need at least 3 items to project")
    if item_ids is None:
        item_ids = tuple(str(i) for i in range(n))
    if config.method == PCA:
        coords = _pca_2d(weighted)
    else:
        if config.perplexity >= n:
            raise InvalidParameterError("perplexity must be smaller than the item count")
        coords = _tsne_2d(weighted, config, should_cancel)
    return Projection(
        coords=coords,
        item_ids=tuple(item_ids),
        config=config,
        weights_fingerprint=weights_fingerprint,
    )


def project_dataset(
    dataset: Dataset,
    weights: WeightVector | np.ndarray,
    config: ProjectionConfig,
    *,
    should_cancel: Callable[[], bool] | None = None,
) -> Projection:
    """weighted_matrix + project, carrying ids and weight fingerprint."""
    return project(
        weighted_matrix(dataset, weights),
        config,
        item_ids=dataset.item_ids,
        weights_fingerprint=fingerprint(weights),
        should_cancel=should_cancel,
    )


def projection_distance(projection: Projection, id_a: str, id_b: str) -> float:
    """Euclidean distance between two items in the 2-D projection."""
    a = projection.coord(id_a)
    b = projection.coord(id_b)
    dx = float(a[0] - b[0])
    dy = float(a[1] - b[1])
    return math.sqrt(dx * dx + dy * dy)


def distance_matrix(projection: Projection) -> np.ndarray:
    c = projection.coords
    dx = c[:, 0][:, None] - c[:, 0][None, :]
    dy = c[:, 1][:, None] - c[:, 1][None, :]
    return np.sqrt(dx * dx + dy * dy)


def _pca_2d(weighted: np.ndarray) -> np.ndarray:
    """Exact top-2 principal components via eigendecomposition of the
    covariance matrix. Sign convention: the largest-magnitude loading of
    each component is made positive so coordinates are reproducible."""
    centered = weighted - weighted.mean(axis=0)
    if not centered.any():
        warnings.warn("all rows identical; every point projects to the origin")
        return np.zeros((weighted.shape[0], 2))
    cov = (centered.T @ centered) / max(weighted.shape[0] - 1, 1)
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(eigvals)[::-1]
    coords = np.zeros((weighted.shape[0], 2))
    for out_col, col in enumerate(order[:2]):
        v = eigvecs[:, col]
        pivot = int(np.argmax(np.abs(v)))
        if v[pivot] < 0:
            v = -v
        coords[:, out_col] = centered @ v
    return coords


def _tsne_2d(
    weighted: np.ndarray,
    config: ProjectionConfig,
    should_cancel: Callable[[], bool] | None,
) -> np.ndarray:
    n = weighted.shape[0]
    p = _joint_probabilities(weighted, config.perplexity)
    rng = np.random.default_rng(config.seed)
    y = rng.standard_normal((n, 2)) * 1e-4
    update = np.zeros_like(y)
    gains = np.ones_like(y)

    exaggeration_until = 100
    p_run = p * 4.0
    for it in range(config.iterations):
        if should_cancel is not None and should_cancel():
            raise OperationCancelledError("projection cancelled")
        if it == exaggeration_until:
            p_run = p
        grad = _kernels.tsne_gradient(np.ascontiguousarray(p_run), np.ascontiguousarray(y))
        momentum = 0.5 if it < 20 else 0.8
        same_sign = (grad > 0) == (update > 0)
        gains = np.where(same_sign, gains * 0.8, gains + 0.2)
        np.clip(gains, 0.01, None, out=gains)
        update = momentum * update - config.learning_rate * gains * grad
        y = y + update
        y = y - y.mean(axis=0)
    return y


def _joint_probabilities(x: np.ndarray, perplexity: float, tol: float = 1e-5) -> np.ndarray:
    """Symmetrized conditional affinities whose per-row entropy matches
    log(perplexity), found by bisection on the Gaussian precision."""
    n = x.shape[0]
    sq = (x**2).sum(axis=1)
    d = np.maximum(sq[:, None] + sq[None, :] - 2.0 * (x @ x.T), 0.0)
    target = math.log(perplexity)
    p = np.zeros((n, n))
    for i in range(n):
        di = np.delete(d[i], i)
        beta, beta_min, beta_max = 1.0, -math.inf, math.inf
        h, row = _entropy_for_beta(di, beta)
        for _ in range(50):
            if abs(h - target) <= tol:
                break
            if h > target:
                beta_min = beta
                beta = beta * 2.0 if beta_max == math.inf else (beta + beta_max) / 2.0
            else:
                beta_max = beta
                beta = beta / 2.0 if beta_min == -math.inf else (beta + beta_min) / 2.0
            h, row = _entropy_for_beta(di, beta)
        p[i, np.arange(n) != i] = row
    p = p + p.T
    p /= max(p.sum(), np.finfo(np.float64).tiny)
    return np.maximum(p, 1e-12)


def _entropy_for_beta(di: np.ndarray, beta: float) -> tuple[float, np.ndarray]:
    w = np.exp(-di * beta)
    total = w.sum()
    if total <= 0:
        total = np.finfo(np.float64).tiny
    h = math.log(total) + beta * float((di * w).sum()) / total
    return h, w / total
