"""Rating polylines in projection space and the unrolled projection axis.

A polyline strings anchors (items in rank order, rating centroids, or
lasso-region centroids) from best to worst. Every observation projects
onto its nearest polyline point; unrolling the polyline by arc length
gives a linear axis where an item sits at its foot's arc position with
height = unsigned distance. Comparing the bracketing anchor labels with
the item's own rating yields the signed inverse ordinal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels
from .errors import InvalidParameterError
from .projection import Projection
from .ranking import RankedItem
from .rating import RatingPartition

SEQUENCE = "sequence"
RATING = "rating"
SELF_DEFINED = "self_defined"

CONSISTENT = "consistent"
IMPROVED = "improved"  # rendered blue
WORSENED = "worsened"  # rendered orange-red


@dataclass(frozen=True)
class Anchor:
    x: float
    y: float
    label: int


@dataclass(frozen=True)
class RatingPolyline:
    kind: str
    anchors: tuple[Anchor, ...]
    scheme_fingerprint: str = ""
    projection_fingerprint: str = ""

    def __post_init__(self):
        if self.kind not in (SEQUENCE, RATING, SELF_DEFINED):
            raise InvalidParameterError(f"unknown polyline kind {self.kind!r}")
        merged = _merge_coincident(self.anchors)
        if len(merged) < 2:
            raise InvalidParameterError("polyline needs at least 2 distinct anchors")
        object.__setattr__(self, "anchors", merged)

    def anchor_array(self) -> tuple[np.ndarray, np.ndarray]:
        ax = np.array([a.x for a in self.anchors], dtype=np.float64)
        ay = np.array([a.y for a in self.anchors], dtype=np.float64)
        return ax, ay

    def total_length(self) -> float:
        ax, ay = self.anchor_array()
        return float(np.sqrt(np.diff(ax) ** 2 + np.diff(ay) ** 2).sum())


def _merge_coincident(anchors: Sequence[Anchor]) -> tuple[Anchor, ...]:
    """Coincident consecutive anchors collapse into the first (better) one."""
    merged: list[Anchor] = []
    for a in anchors:
        if merged and a.x == merged[-1].x and a.y == merged[-1].y:
            continue
        merged.append(a)
    return tuple(merged)


def sequence_ranking_line(ranked: Sequence[RankedItem], projection: Projection) -> RatingPolyline:
    """Polyline through every projected item from rank 1 to rank N."""
    anchors = []
    for item in sorted(ranked, key=lambda r: r.rank):
        x, y = projection.coord(item.id)
        anchors.append(Anchor(x=float(x), y=float(y), label=item.rank))
    return RatingPolyline(
        kind=SEQUENCE,
        anchors=tuple(anchors),
        projection_fingerprint=projection.fingerprint(),
    )


def rating_line(partition: RatingPartition, projection: Projection) -> RatingPolyline:
    """Polyline through per-rating centroids in rating order 1..n."""
    anchors = []
    for rating in range(1, partition.n_ratings + 1):
        members = partition.items_with_rating(rating)
        if not members:
            raise InvalidParameterError(f"rating {rating} has no items")
        pts = np.array([projection.coord(i) for i in members], dtype=np.float64)
        cx, cy = pts.mean(axis=0)
        anchors.append(Anchor(x=float(cx), y=float(cy), label=rating))
    return RatingPolyline(
        kind=RATING,
        anchors=tuple(anchors),
        projection_fingerprint=projection.fingerprint(),
    )


def self_defined_rating_line(
    lasso_regions: Sequence[Sequence[tuple[float, float]]],
    projection: Projection,
) -> RatingPolyline:
    """Polyline through the centroids of user-lassoed regions, in the
    user's selection order. Region polygons use the even-odd rule with
    the boundary counted inside."""
    if len(lasso_regions) < 2:
        raise InvalidParameterError("need at least 2 lasso regions")
    anchors = []
    for idx, polygon in enumerate(lasso_regions, start=1):
        if len(polygon) < 3:
            raise InvalidParameterError(f"region {idx} needs at least 3 vertices")
        inside = [
            item_id
            for item_id in projection.item_ids
            if point_in_polygon(tuple(projection.coord(item_id)), polygon)
        ]
        if not inside:
            raise InvalidParameterError(f"region {idx} contains no items")
        pts = np.array([projection.coord(i) for i in inside], dtype=np.float64)
        cx, cy = pts.mean(axis=0)
        anchors.append(Anchor(x=float(cx), y=float(cy), label=idx))
    return RatingPolyline(
        kind=SELF_DEFINED,
        anchors=tuple(anchors),
        projection_fingerprint=projection.fingerprint(),
    )


def point_in_polygon(point: tuple[float, float], polygon: Sequence[tuple[float, float]]) -> bool:
    """Even-odd rule; points exactly on an edge count as inside."""
    x, y = point
    n = len(polygon)
    inside = False
    for i in range(n):
        x1, y1 = polygon[i]
        x2, y2 = polygon[(i + 1) % n]
        if _on_segment(x, y, x1, y1, x2, y2):
            return True
        if (y1 > y) != (y2 > y):
            x_cross = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if x < x_cross:
                inside = not inside
    return inside


def _on_segment(x, y, x1, y1, x2, y2) -> bool:
    cross = (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1)
    if cross != 0.0:
        return False
    return min(x1, x2) <= x <= max(x1, x2) and min(y1, y2) <= y <= max(y1, y2)


class PolylineFoot(NamedTuple):
    segment_index: int
    t: float
    foot: tuple[float, float]
    distance: float
    arc_position: float


def project_onto_polyline(point: tuple[float, float], polyline: RatingPolyline) -> PolylineFoot:
    """Nearest point on the polyline: unsigned distance, clamped segment
    parameter, and cumulative arc position. Equidistant segments resolve
    to the lower index."""
    ax, ay = polyline.anchor_array()
    seg, t, fx, fy, dist, arc = _kernels.polyline_project(
        np.array([point[0]], dtype=np.float64),
        np.array([point[1]], dtype=np.float64),
        ax,
        ay,
    )
    return PolylineFoot(
        segment_index=int(seg[0]),
        t=float(t[0]),
        foot=(float(fx[0]), float(fy[0])),
        distance=float(dist[0]),
        arc_position=float(arc[0]),
    )


def inverse_ordinal(item_rating: int, bracket: tuple[int, int]) -> int:
    """Signed count of whole ratings skipped between an item's assigned
    rating and the bracket where its foot landed.

    Positive: the projection places the item ahead of where its rating
    says (better); negative: behind (worse); zero when its rating is one
    of the bracket endpoints (or lies inside a merged-anchor bracket).
    """
    low, high = bracket
    if low >= high:
        raise InvalidParameterError(f"invalid bracket {bracket!r}")
    if item_rating > high:
        return item_rating - high
    if item_rating < low:
        return -(low - item_rating)
    return 0


@dataclass(frozen=True)
class AxisPlacement:
    item_id: str
    segment_index: int
    t: float
    arc_position: float
    distance: float
    bracket: tuple[int, int]
    inverse_ordinal: int
    consistency: str


def build_axis(
    partition: RatingPartition,
    polyline: RatingPolyline,
    projection: Projection,
) -> list[AxisPlacement]:
    """Place every projected item on the unrolled axis.

    Bracket = the labels of the foot segment's endpoints; a foot exactly
    on a shared anchor takes the following segment's bracket (the last
    anchor takes the preceding one).
    """
    if polyline.kind == SEQUENCE:
        raise InvalidParameterError("axis requires rating anchors")
    ax, ay = polyline.anchor_array()
    coords = np.array([projection.coord(i) for i in projection.item_ids], dtype=np.float64)
    seg, t, _fx, _fy, dist, arc = _kernels.polyline_project(coords[:, 0], coords[:, 1], ax, ay)

    labels = [a.label for a in polyline.anchors]
    last_anchor = len(labels) - 1
    placements = []
    for n, item_id in enumerate(projection.item_ids):
        s = int(seg[n])
        tt = float(t[n])
        if tt == 1.0 and s + 1 < last_anchor:
            bracket = (labels[s + 1], labels[s + 2])
        else:
            bracket = (labels[s], labels[s + 1])
        rating = partition.assignment.get(item_id)
        if rating is None:
            raise InvalidParameterError(f"item {item_id!r} missing from partition")
        inv = inverse_ordinal(rating, bracket)
        consistency = CONSISTENT if inv == 0 else (IMPROVED if inv > 0 else WORSENED)
        placements.append(
            AxisPlacement(
                item_id=item_id,
                segment_index=s,
                t=tt,
                arc_position=float(arc[n]),
                distance=float(dist[n]),
                bracket=bracket,
                inverse_ordinal=inv,
                consistency=consistency,
            )
        )
    return placements
