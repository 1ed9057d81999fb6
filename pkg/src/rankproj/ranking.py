"""Pairwise preference constraints and the linear soft-margin rank trainer.

User re-ranking interactions become difference-vector constraints; a
deterministic full-batch subgradient solver fits a weight vector w that
minimizes 0.5*||w||^2 + C * sum(hinge(1 - y * (w . diff))). Scores are
plain dot products of w with normalized rows.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .data import Dataset
from .errors import (
    DegenerateTrainingSetError,
    InsufficientTrainingDataError,
    InvalidParameterError,
    UnknownItemError,
)

MIN_MARKED = 6


@dataclass(frozen=True)
class PairwiseConstraint:
    """One ordered pair (preferred_id, other_id) of marked items.

    diff = normalized row(preferred_id) - normalized row(other_id).
    class_label is +1 when preferred_id really was ranked above other_id
    in the marked order, -1 for the mirrored pair.
    """

    preferred_id: str
    other_id: str
    diff: np.ndarray
    class_label: int

    def __post_init__(self):
        if self.preferred_id == self.other_id:
            raise InvalidParameterError("constraint endpoints must differ")
        if self.class_label not in (-1, 1):
            raise InvalidParameterError("class_label must be +1 or -1")
        self.diff.setflags(write=False)


@dataclass(frozen=True)
class WeightVector:
    w: np.ndarray
    c: float
    iterations: int
    converged: bool

    def __post_init__(self):
        if not np.all(np.isfinite(self.w)):
            raise InvalidParameterError("weights must be finite")
        self.w.setflags(write=False)


def fingerprint(weights: np.ndarray | WeightVector) -> str:
    """Stable short hash of a weight vector, used for staleness checks."""
    w = weights.w if isinstance(weights, WeightVector) else np.asarray(weights, np.float64)
    return hashlib.sha256(np.ascontiguousarray(w, np.float64).tobytes()).hexdigest()[:16]


def validate_marked(marked: Sequence[str], dataset: Dataset, *, min_marked: int = MIN_MARKED) -> list[str]:
    marked = list(marked)
    if len(set(marked)) != len(marked):
        raise InvalidParameterError("marked ids must be distinct")
    for item_id in marked:
        dataset.index_of(item_id)  # raises UnknownItemError
    if len(marked) < min_marked:
        raise InsufficientTrainingDataError("insufficient training data")
    return marked


def derive_constraints(
    marked: Sequence[str],
    dataset: Dataset,
    *,
    min_marked: int = MIN_MARKED,
) -> list[PairwiseConstraint]:
    """All ordered pairs among the marked items, best first.

    k marked items yield exactly k*(k-1) constraints: (i, j) is labeled
    +1 when i precedes j in the marked order and -1 otherwise, with the
    -1 member carrying the negated difference vector.
    """
    marked = validate_marked(marked, dataset, min_marked=min_marked)
    rows = {m: dataset.row(m) for m in marked}
    position = {m: p for p, m in enumerate(marked)}
    out = []
    for a in marked:
        for b in marked:
            if a == b:
                continue
            label = 1 if position[a] < position[b] else -1
            out.append(
                PairwiseConstraint(
                    preferred_id=a,
                    other_id=b,
                    diff=rows[a] - rows[b],
                    class_label=label,
                )
            )
    return out


def constraints_from_pairs(
    pairs: Sequence[tuple[str, str]], dataset: Dataset
) -> list[PairwiseConstraint]:
    """Batch-mode constraints: each (preferred_id, other_id) row becomes
    one +1-labeled constraint."""
    out = []
    for preferred, other in pairs:
        out.append(
            PairwiseConstraint(
                preferred_id=preferred,
                other_id=other,
                diff=dataset.row(preferred) - dataset.row(other),
                class_label=1,
            )
        )
    return out


def train_ranking_svm(
    constraints: Sequence[PairwiseConstraint],
    c: float = 1.0,
    *,
    iterations: int = 10_000,
) -> WeightVector:
    """Deterministic full-batch subgradient descent on the soft-margin
    hinge objective.

    Rescaled as lambda/2*||w||^2 + mean(hinge) with lambda = 1/(c*T) and
    step 1/(lambda*t), starting from w = 0 with a fixed iteration
    budget: same constraints + same c + same budget give bit-identical
    weights. Soft constraints mean contradictory pairs still produce a
    finite w.
    """
    if c <= 0:
        raise InvalidParameterError("regularization constant must be positive")
    if len(constraints) < 2:
        raise InvalidParameterError("need at least 2 constraints")
    x = np.array([con.diff for con in constraints], dtype=np.float64)
    y = np.array([con.class_label for con in constraints], dtype=np.float64)
    if not x.any():
        raise DegenerateTrainingSetError("degenerate training set")

    n, dim = x.shape
    lam = 1.0 / (c * n)
    yx = y[:, None] * x
    w = np.zeros(dim)
    objective = _hinge_objective(w, x, y, c)
    converged = False
    for t in range(1, iterations + 1):
        margins = yx @ w
        violated = margins < 1.0
        if violated.any():
            hinge_grad = yx[violated].sum(axis=0) / n
        else:
            hinge_grad = np.zeros(dim)
        w = (1.0 - 1.0 / t) * w + hinge_grad / (lam * t)
        if t % 500 == 0:
            prev, objective = objective, _hinge_objective(w, x, y, c)
            converged = abs(prev - objective) <= 1e-9 * max(1.0, abs(objective))
    return WeightVector(w=w, c=c, iterations=iterations, converged=converged)


def _hinge_objective(w: np.ndarray, x: np.ndarray, y: np.ndarray, c: float) -> float:
    slack = np.maximum(0.0, 1.0 - y * (x @ w))
    return 0.5 * float(w @ w) + c * float(slack.sum())


def rank_score(weights: WeightVector | np.ndarray, row: np.ndarray) -> float:
    """Dot product of the weight vector with one normalized row."""
    w = weights.w if isinstance(weights, WeightVector) else np.asarray(weights, np.float64)
    return float(np.dot(w, row))


class RankedItem(NamedTuple):
    id: str
    score: float
    rank: int


def rank_all(weights: WeightVector | np.ndarray, dataset: Dataset) -> list[RankedItem]:
    """Score every item and rank descending; ties break by ascending id
    so the order is deterministic."""
    w = weights.w if isinstance(weights, WeightVector) else np.asarray(weights, np.float64)
    scores = dataset.normalized @ w
    order = sorted(range(dataset.n_items), key=lambda i: (-scores[i], dataset.items[i].id))
    return [
        RankedItem(id=dataset.items[i].id, score=float(scores[i]), rank=r)
        for r, i in enumerate(order, start=1)
    ]


def marked_window(order: Sequence[str], dragged_id: str, k: int = MIN_MARKED) -> list[str]:
    """Canonical drag-to-marked mapping: the dragged item plus its new
    neighbors, a window of k rows centered on the drop position and
    clipped to the table bounds, in post-drag table order. The browser
    client mirrors this rule when issuing rerank requests.
    """
    order = list(order)
    if dragged_id not in order:
        raise UnknownItemError(f"unknown item id {dragged_id!r}")
    if len(order) < k:
        raise InsufficientTrainingDataError("insufficient training data")
    p = order.index(dragged_id)
    start = min(max(p - (k - 1) // 2, 0), len(order) - k)
    return order[start : start + k]


def weight_dict(dataset: Dataset, weights: WeightVector | np.ndarray) -> dict[str, float]:
    """{attribute name -> weight}, the JSON export shape."""
    w = weights.w if isinstance(weights, WeightVector) else np.asarray(weights, np.float64)
    return {name: float(v) for name, v in zip(dataset.attribute_names, w)}
