"""Rank scores -> n ordered ratings via greedy minimum-entropy splits.

Scores are first snapped to a grid of 1/(10*n) of the score range so
the value distribution has meaningful frequencies, then split points
are chosen greedily: at every step, each current interval proposes the
boundary (midpoint between consecutive distinct values) minimizing the
frequency-weighted sum of the entropies of the two halves, and the
globally best proposal wins. Ties go to the leftmost candidate. Rating
1 is the best (highest-score) bucket.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import InvalidParameterError


@dataclass(frozen=True)
class ScoreDistribution:
    """Distinct values (ascending) with frequencies and probabilities."""

    values: tuple[float, ...]
    counts: tuple[int, ...]

    @classmethod
    def from_scores(cls, scores: Sequence[float]) -> "ScoreDistribution":
        if len(scores) == 0:
            raise InvalidParameterError("empty score distribution")
        values, counts = np.unique(np.asarray(scores, dtype=np.float64), return_counts=True)
        return cls(values=tuple(values.tolist()), counts=tuple(int(c) for c in counts))

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def probabilities(self) -> tuple[float, ...]:
        n = self.total
        return tuple(c / n for c in self.counts)


def entropy(distribution: ScoreDistribution) -> float:
    """Shannon entropy, natural log, with 0*log(0) = 0."""
    if not distribution.counts:
        raise InvalidParameterError("empty score distribution")
    return _entropy_of_counts(distribution.counts)


def _entropy_of_counts(counts: Sequence[int]) -> float:
    # Terms accumulate in ascending-value order; a single repeated value
    # contributes exactly 0.
    n = sum(counts)
    h = 0.0
    for c in counts:
        if c:
            p = c / n
            h -= p * math.log(p)
    return h


def quantize_scores(scores: Sequence[float], n_ratings: int) -> np.ndarray:
    """Snap each score to the nearest multiple of range/(10*n) above the
    minimum (half rounds up). Constant inputs come back unchanged."""
    if n_ratings < 2:
        raise InvalidParameterError("n must be >= 2")
    s = np.asarray(scores, dtype=np.float64)
    if s.size == 0:
        raise InvalidParameterError("no scores to quantize")
    if not np.all(np.isfinite(s)):
        raise InvalidParameterError("scores must be finite")
    lo = float(s.min())
    span = float(s.max()) - lo
    if span == 0.0:
        return s.copy()
    step = span / (10 * n_ratings)
    return lo + np.floor((s - lo) / step + 0.5) * step


def find_split_points(scores: Sequence[float], n_ratings: int) -> tuple[float, ...]:
    """Greedy minimum-entropy selection of n-1 strictly increasing split
    thresholds over quantized scores.

    Candidate = midpoint between consecutive distinct values inside one
    interval, scored by (n_left/n)*H(left) + (n_right/n)*H(right) with
    counts local to the interval. Requires at least n distinct values.
    """
    if n_ratings < 2:
        raise InvalidParameterError("n must be >= 2")
    s = np.asarray(scores, dtype=np.float64)
    if s.size < n_ratings:
        raise InvalidParameterError("fewer scores than ratings")
    values, counts = np.unique(s, return_counts=True)
    values = values.tolist()
    counts = [int(c) for c in counts]
    if len(values) < n_ratings:
        raise InvalidParameterError(f"cannot form {n_ratings} ratings")

    # Intervals are half-open index ranges [a, b) over the distinct values.
    intervals: list[tuple[int, int]] = [(0, len(values))]
    splits: list[float] = []
    while len(splits) < n_ratings - 1:
        best: tuple[float, float, int, int, int] | None = None  # (score, threshold, a, b, cut)
        for a, b in intervals:
            cand = _best_interval_split(values, counts, a, b)
            if cand is None:
                continue
            score, threshold, cut = cand
            if best is None or (score, threshold) < (best[0], best[1]):
                best = (score, threshold, a, b, cut)
        if best is None:  # unreachable given the distinct-value precheck
            raise InvalidParameterError(f"cannot form {n_ratings} ratings")
        _, threshold, a, b, cut = best
        intervals.remove((a, b))
        intervals.extend([(a, cut + 1), (cut + 1, b)])
        splits.append(threshold)
    return tuple(sorted(splits))


def _best_interval_split(
    values: list[float], counts: list[int], a: int, b: int
) -> tuple[float, float, int] | None:
    """Lowest weighted-entropy candidate inside [a, b), leftmost on ties.
    Returns (weighted_entropy, threshold, cut_index) or None if the
    interval has a single distinct value."""
    if b - a < 2:
        return None
    total = sum(counts[a:b])
    best = None
    for cut in range(a, b - 1):
        n_left = sum(counts[a : cut + 1])
        n_right = total - n_left
        weighted = (n_left / total) * _entropy_of_counts(counts[a : cut + 1]) + (
            n_right / total
        ) * _entropy_of_counts(counts[cut + 1 : b])
        threshold = (values[cut] + values[cut + 1]) / 2.0
        if best is None or (weighted, threshold) < (best[0], best[1]):
            best = (weighted, threshold, cut)
    return best


@dataclass(frozen=True)
class RatingPartition:
    """n ordered ratings over a score list; rating 1 is best."""

    n_ratings: int
    split_points: tuple[float, ...]
    assignment: Mapping[str, int]

    def __post_init__(self):
        if self.n_ratings < 2:
            raise InvalidParameterError("n must be >= 2")
        if len(self.split_points) != self.n_ratings - 1:
            raise InvalidParameterError("need exactly n-1 split points")
        if any(
            b <= a for a, b in zip(self.split_points, self.split_points[1:])
        ):
            raise InvalidParameterError("split points must be strictly increasing")
        for rating in self.assignment.values():
            if not 1 <= rating <= self.n_ratings:
                raise InvalidParameterError("rating out of range")

    def items_with_rating(self, rating: int) -> list[str]:
        return [i for i, r in self.assignment.items() if r == rating]


def rating_of(score: float, split_points: Sequence[float], n_ratings: int) -> int:
    """Bucket a score: rating = 1 + number of thresholds strictly above
    it, so a score exactly on a threshold lands in the better rating."""
    return n_ratings - bisect_right(list(split_points), score)


def assign_ratings(
    item_ids: Sequence[str],
    scores: Sequence[float],
    split_points: Sequence[float],
    n_ratings: int,
) -> RatingPartition:
    assignment = {
        item_id: rating_of(score, split_points, n_ratings)
        for item_id, score in zip(item_ids, scores)
    }
    return RatingPartition(
        n_ratings=n_ratings,
        split_points=tuple(split_points),
        assignment=assignment,
    )


def partition_scores(
    item_ids: Sequence[str], scores: Sequence[float], n_ratings: int
) -> RatingPartition:
    """Quantize, pick split points, and bucket, in one call."""
    quantized = quantize_scores(scores, n_ratings)
    splits = find_split_points(quantized, n_ratings)
    return assign_ratings(item_ids, scores, splits, n_ratings)
