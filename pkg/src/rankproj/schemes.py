"""Saved ranking schemes: persistence, comparison, and similarity views.

A scheme is an immutable snapshot of one analysis state (weights,
scores, ranks, rating partition, projection config). The store is an
append-only directory of JSON files, one per scheme; floats survive the
round trip exactly because JSON serialization uses repr.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, NamedTuple

import numpy as np

from .data import Dataset
from .errors import InvalidParameterError, UnknownItemError
from .projection import ProjectionConfig
from .ranking import RankedItem
from .rating import RatingPartition

SIMILARITY_EPSILON = 1e-9
COMPARATIVE_PROJECTION_COUNT = 3  # most recent schemes shown side by side

UP = "up"
DOWN = "down"
FLAT = "flat"


@dataclass(frozen=True)
class RankingScheme:
    name: str
    created_at: str
    weights: dict[str, float]
    scores: dict[str, float]
    ranks: dict[str, int]
    split_points: tuple[float, ...]
    ratings: dict[str, int]
    n_ratings: int
    projection_config: dict

    def __post_init__(self):
        n = len(self.ranks)
        if sorted(self.ranks.values()) != list(range(1, n + 1)):
            raise InvalidParameterError("ranks must be a permutation of 1..N")
        ordered = sorted(self.ranks, key=self.ranks.get)
        for a, b in zip(ordered, ordered[1:]):
            # Better rank needs a higher score; equal scores break by id.
            if self.scores[a] < self.scores[b] or (
                self.scores[a] == self.scores[b] and a > b
            ):
                raise InvalidParameterError("scores inconsistent with ranks")


def make_scheme(
    name: str,
    dataset: Dataset,
    weights: dict[str, float],
    ranked: Iterable[RankedItem],
    partition: RatingPartition,
    projection_config: ProjectionConfig,
    created_at: str | None = None,
) -> RankingScheme:
    ranked = list(ranked)
    if created_at is None:
        created_at = datetime.now(timezone.utc).isoformat()
    return RankingScheme(
        name=name,
        created_at=created_at,
        weights=dict(weights),
        scores={r.id: r.score for r in ranked},
        ranks={r.id: r.rank for r in ranked},
        split_points=tuple(partition.split_points),
        ratings=dict(partition.assignment),
        n_ratings=partition.n_ratings,
        projection_config=asdict(projection_config),
    )


class SchemeStore:
    """Append-only JSON-file store; schemes are immutable snapshots."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, name: str) -> Path:
        safe = re.sub(r"[^A-Za-z0-9._-]", "_", name)
        return self.directory / f"{safe}.json"

    def names(self) -> list[str]:
        out = []
        for path in sorted(self.directory.glob("*.json")):
            with path.open() as fh:
                payload = json.load(fh)
            out.append((payload["created_at"], payload["name"]))
        return [name for _, name in sorted(out)]

    def save(self, scheme: RankingScheme) -> RankingScheme:
        """Persist under a unique name: duplicates get -2, -3, ... suffixes."""
        existing = set(self.names())
        name = scheme.name
        n = 1
        while name in existing or self._path(name).exists():
            n += 1
            name = f"{scheme.name}-{n}"
        if name != scheme.name:
            scheme = RankingScheme(**{**asdict(scheme), "name": name})
        payload = asdict(scheme)
        payload["split_points"] = list(scheme.split_points)
        with self._path(name).open("w") as fh:
            json.dump(payload, fh, indent=1)
        return scheme

    def load(self, name: str) -> RankingScheme:
        path = self._path(name)
        if not path.exists():
            raise UnknownItemError(f"unknown scheme {name!r}")
        with path.open() as fh:
            payload = json.load(fh)
        payload["split_points"] = tuple(payload["split_points"])
        return RankingScheme(**payload)

    def load_all(self) -> list[RankingScheme]:
        schemes = [self.load(name) for name in self.names()]
        schemes.sort(key=lambda s: s.created_at)
        return schemes

    def most_recent(self, count: int = COMPARATIVE_PROJECTION_COUNT) -> list[RankingScheme]:
        return self.load_all()[-count:]


class ComparisonRow(NamedTuple):
    item_id: str
    rank_a: int
    rank_b: int
    delta: int
    arrow: str


@dataclass(frozen=True)
class SchemeComparison:
    scheme_a: str
    scheme_b: str
    rows: tuple[ComparisonRow, ...]


def compare_schemes(a: RankingScheme, b: RankingScheme) -> SchemeComparison:
    """Per-item rank deltas, a's order. delta = rank_a - rank_b, so an
    item that improved (numerically smaller rank in b) gets a positive
    delta and an up arrow."""
    if set(a.ranks) != set(b.ranks):
        raise InvalidParameterError("schemes cover different datasets")
    rows = []
    for item_id in sorted(a.ranks, key=a.ranks.get):
        ra, rb = a.ranks[item_id], b.ranks[item_id]
        delta = ra - rb
        arrow = FLAT if delta == 0 else (UP if delta > 0 else DOWN)
        rows.append(ComparisonRow(item_id, ra, rb, delta, arrow))
    return SchemeComparison(scheme_a=a.name, scheme_b=b.name, rows=tuple(rows))


def export_comparison_csv(comparison: SchemeComparison) -> str:
    lines = ["item_id,rank_a,rank_b,delta,arrow"]
    for r in comparison.rows:
        lines.append(f"{r.item_id},{r.rank_a},{r.rank_b},{r.delta},{r.arrow}")
    return "\n".join(lines) + "\n"


def attribute_similarity(dataset: Dataset, selected_id: str, other_id: str) -> float:
    """Reciprocal of the Euclidean distance between the two normalized
    rows, guarded by a small epsilon so identical rows stay finite."""
    a = dataset.row(selected_id)
    b = dataset.row(other_id)
    return 1.0 / (SIMILARITY_EPSILON + math.sqrt(float(((a - b) ** 2).sum())))


def align_order(dataset: Dataset, selected_id: str) -> list[str]:
    """All ids sorted by descending similarity to the selected item; the
    selected item always leads, ties break by ascending id."""
    dataset.index_of(selected_id)
    rest = [i for i in dataset.item_ids if i != selected_id]
    rest.sort(key=lambda i: (-attribute_similarity(dataset, selected_id, i), i))
    return [selected_id, *rest]


def attribute_diff_coloring(dataset: Dataset, selected_id: str) -> np.ndarray:
    """diff[i][j] = normalized[i][j] - normalized[selected][j]; positive
    means the other item is larger (blue side), negative smaller
    (orange-red side). Magnitude drives the shade in the UI."""
    base = dataset.row(selected_id)
    return dataset.normalized - base
