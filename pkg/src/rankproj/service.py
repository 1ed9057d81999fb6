"""HTTP JSON API exposing the pipeline as stateful analysis sessions.

A session owns one dataset plus the current weights, ranking, rating
partition, projection, polyline, and axis placements. Artifacts carry
fingerprints of their inputs: when an upstream input changes (rerank,
new rating count) the dependents are not silently recomputed, requests
for them answer 409 until the client re-runs the producing step.
"""

from __future__ import annotations

import os
import threading
import time
import uuid
from dataclasses import asdict, dataclass, field
from tempfile import mkdtemp
from typing import Optional

import numpy as np
from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import axis as axis_mod
from . import schemes as schemes_mod
from .consistency import enumerate_inconsistencies
from .data import Dataset, load_csv
from .errors import (
    EngineError,
    InvalidParameterError,
    OperationCancelledError,
    ParseError,
    StaleArtifactError,
    UnknownItemError,
)
from .projection import Projection, ProjectionConfig, project_dataset
from .ranking import (
    RankedItem,
    derive_constraints,
    fingerprint,
    rank_all,
    train_ranking_svm,
)
from .rating import RatingPartition, partition_scores

DEFAULT_MAX_ROWS = 5000
DEFAULT_SESSION_TTL = 3600.0
DEFAULT_N_RATINGS = 5


@dataclass
class ServiceConfig:
    max_rows: int = DEFAULT_MAX_ROWS
    session_ttl: float = DEFAULT_SESSION_TTL
    scheme_root: str | None = None

    @classmethod
    def from_env(cls) -> "ServiceConfig":
        return cls(
            max_rows=int(os.environ.get("RANKPROJ_MAX_ROWS", DEFAULT_MAX_ROWS)),
            session_ttl=float(os.environ.get("RANKPROJ_SESSION_TTL", DEFAULT_SESSION_TTL)),
            scheme_root=os.environ.get("RANKPROJ_SCHEME_DIR"),
        )


@dataclass
class SessionState:
    dataset: Dataset
    store: schemes_mod.SchemeStore
    weights: np.ndarray
    training_meta: dict
    ranked: list[RankedItem]
    n_ratings: int = DEFAULT_N_RATINGS
    partition: Optional[RatingPartition] = None
    projection: Optional[Projection] = None
    projection_config: ProjectionConfig = field(default_factory=ProjectionConfig)
    polyline: Optional[axis_mod.RatingPolyline] = None
    polyline_partition: Optional[RatingPartition] = None
    placements: Optional[list] = None
    lock: threading.Lock = field(default_factory=threading.Lock)
    cancel_flag: threading.Event = field(default_factory=threading.Event)
    last_access: float = field(default_factory=time.monotonic)

    @property
    def scores(self) -> dict[str, float]:
        return {r.id: r.score for r in self.ranked}

    def weights_dict(self) -> dict[str, float]:
        return {n: float(w) for n, w in zip(self.dataset.attribute_names, self.weights)}

    def fresh_projection(self) -> Projection:
        if self.projection is None:
            raise StaleArtifactError("no projection computed; run the projection step")
        if self.projection.weights_fingerprint != fingerprint(self.weights):
            raise StaleArtifactError("stale projection; re-run the projection step")
        return self.projection

    def fresh_polyline(self) -> axis_mod.RatingPolyline:
        projection = self.fresh_projection()
        if self.polyline is None:
            raise StaleArtifactError("no polyline built")
        if self.polyline.projection_fingerprint != projection.fingerprint():
            raise StaleArtifactError("stale polyline; rebuild it")
        if self.polyline.kind != axis_mod.SEQUENCE and self.polyline_partition is not self.partition:
            raise StaleArtifactError("stale polyline; the rating partition changed")
        return self.polyline


class RerankBody(BaseModel):
    marked: list[str]


class RatingsBody(BaseModel):
    n: int


class ProjectionBody(BaseModel):
    method: str = "tsne"
    seed: int = 0
    perplexity: float = 15.0
    iterations: int = 1000
    learning_rate: float = 200.0


class PolylineBody(BaseModel):
    kind: str
    regions: list[list[tuple[float, float]]] | None = None


class SchemeBody(BaseModel):
    name: str


_STATUS_BY_ERROR = [
    (ParseError, 400),
    (UnknownItemError, 404),
    (StaleArtifactError, 409),
    (OperationCancelledError, 409),
    (InvalidParameterError, 422),
    (EngineError, 422),
]


def _status_for(exc: EngineError) -> int:
    for klass, status in _STATUS_BY_ERROR:
        if isinstance(exc, klass):
            return status
    return 500


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    cfg = config or ServiceConfig.from_env()
    app = FastAPI(title="rankproj", version="0.1.0")
    sessions: dict[str, SessionState] = {}
    sessions_lock = threading.Lock()
    scheme_root = cfg.scheme_root or mkdtemp(prefix="rankproj-schemes-")

    @app.exception_handler(EngineError)
    def engine_error_handler(_request: Request, exc: EngineError):
        return JSONResponse(status_code=_status_for(exc), content={"detail": str(exc)})

    def get_session(session_id: str) -> SessionState:
        with sessions_lock:
            now = time.monotonic()
            expired = [k for k, s in sessions.items() if now - s.last_access > cfg.session_ttl]
            for k in expired:
                del sessions[k]
            session = sessions.get(session_id)
            if session is None:
                raise HTTPException(status_code=404, detail="unknown session")
            session.last_access = now
            return session

    def serialize_partition(partition: Optional[RatingPartition]) -> dict | None:
        if partition is None:
            return None
        return {
            "n_ratings": partition.n_ratings,
            "split_points": [float(s) for s in partition.split_points],
            "assignment": {k: int(v) for k, v in partition.assignment.items()},
        }

    def serialize_projection(projection: Projection) -> dict:
        return {
            "coords": [
                {"id": i, "x": float(x), "y": float(y)}
                for i, (x, y) in zip(projection.item_ids, projection.coords)
            ],
            "config": asdict(projection.config),
            "weights_fingerprint": projection.weights_fingerprint,
        }

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        body = await request.body()
        if not body.strip():
            raise ParseError("empty CSV input")
        dataset = load_csv(body)
        if dataset.n_items > cfg.max_rows:
            raise InvalidParameterError(
                f"dataset has {dataset.n_items} rows; the limit is {cfg.max_rows}"
            )
        weights = np.full(dataset.n_attributes, 1.0 / dataset.n_attributes)
        ranked = rank_all(weights, dataset)
        try:
            partition = partition_scores(
                [r.id for r in ranked], [r.score for r in ranked], DEFAULT_N_RATINGS
            )
        except InvalidParameterError:
            partition = None
        session_id = uuid.uuid4().hex
        state = SessionState(
            dataset=dataset,
            store=schemes_mod.SchemeStore(os.path.join(scheme_root, session_id)),
            weights=weights,
            training_meta={"kind": "uniform-default"},
            ranked=ranked,
            partition=partition,
        )
        with sessions_lock:
            sessions[session_id] = state
        deduped = [
            {"label": it.label, "id": it.id} for it in dataset.items if it.id != it.label
        ]
        return {
            "session_id": session_id,
            "n_items": dataset.n_items,
            "attributes": list(dataset.attribute_names),
            "constant_attributes": list(dataset.constant_attributes),
            "deduped_ids": deduped,
        }

    @app.get("/sessions/{session_id}")
    def session_summary(session_id: str):
        s = get_session(session_id)
        return {
            "n_items": s.dataset.n_items,
            "attributes": list(s.dataset.attribute_names),
            "weights": s.weights_dict(),
            "n_ratings": s.n_ratings,
            "has_projection": s.projection is not None,
            "schemes": s.store.names(),
            "ranking": [r._asdict() for r in s.ranked],
            "partition": serialize_partition(s.partition),
            "normalized": {
                it.id: {
                    name: float(v)
                    for name, v in zip(s.dataset.attribute_names, s.dataset.normalized[i])
                }
                for i, it in enumerate(s.dataset.items)
            },
        }

    @app.post("/sessions/{session_id}/rerank")
    def rerank(session_id: str, body: RerankBody):
        s = get_session(session_id)
        with s.lock:
            constraints = derive_constraints(body.marked, s.dataset)
            trained = train_ranking_svm(constraints)
            s.weights = np.asarray(trained.w, dtype=np.float64)
            s.training_meta = {
                "constraints": len(constraints),
                "c": trained.c,
                "iterations": trained.iterations,
                "converged": trained.converged,
            }
            s.ranked = rank_all(trained, s.dataset)
            s.partition = partition_scores(
                [r.id for r in s.ranked], [r.score for r in s.ranked], s.n_ratings
            )
            s.polyline = None
            s.polyline_partition = None
            s.placements = None
            return {
                "weights": s.weights_dict(),
                "ranking": [r._asdict() for r in s.ranked],
                "partition": serialize_partition(s.partition),
                "training": s.training_meta,
            }

    @app.post("/sessions/{session_id}/ratings")
    def set_ratings(session_id: str, body: RatingsBody):
        s = get_session(session_id)
        with s.lock:
            partition = partition_scores(
                [r.id for r in s.ranked], [r.score for r in s.ranked], body.n
            )
            s.n_ratings = body.n
            s.partition = partition
            s.polyline = None
            s.polyline_partition = None
            s.placements = None
            return {"partition": serialize_partition(partition)}

    @app.post("/sessions/{session_id}/projection")
    def compute_projection(session_id: str, body: ProjectionBody):
        s = get_session(session_id)
        with s.lock:
            config = ProjectionConfig(
                method=body.method,
                seed=body.seed,
                perplexity=body.perplexity,
                iterations=body.iterations,
                learning_rate=body.learning_rate,
            )
            s.cancel_flag.clear()
            s.projection = project_dataset(
                s.dataset, s.weights, config, should_cancel=s.cancel_flag.is_set
            )
            s.projection_config = config
            s.polyline = None
            s.polyline_partition = None
            s.placements = None
            return serialize_projection(s.projection)

    @app.delete("/sessions/{session_id}/projection/pending")
    def cancel_projection(session_id: str):
        # Deliberately does not take the session lock: it must fire
        # while a projection request holds it.
        with sessions_lock:
            session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        session.cancel_flag.set()
        return {"cancelled": True}

    @app.post("/sessions/{session_id}/polyline")
    def build_polyline(session_id: str, body: PolylineBody):
        s = get_session(session_id)
        with s.lock:
            projection = s.fresh_projection()
            if body.kind == axis_mod.SEQUENCE:
                polyline = axis_mod.sequence_ranking_line(s.ranked, projection)
            elif body.kind == axis_mod.RATING:
                if s.partition is None:
                    raise InvalidParameterError("no rating partition available")
                polyline = axis_mod.rating_line(s.partition, projection)
            elif body.kind == axis_mod.SELF_DEFINED:
                if not body.regions:
                    raise InvalidParameterError("self_defined polyline needs lasso regions")
                polyline = axis_mod.self_defined_rating_line(body.regions, projection)
            else:
                raise InvalidParameterError(f"unknown polyline kind {body.kind!r}")
            s.polyline = polyline
            s.polyline_partition = s.partition
            s.placements = None
            return {
                "kind": polyline.kind,
                "anchors": [
                    {"x": a.x, "y": a.y, "label": a.label} for a in polyline.anchors
                ],
            }

    @app.post("/sessions/{session_id}/axis")
    def compute_axis(session_id: str):
        s = get_session(session_id)
        with s.lock:
            projection = s.fresh_projection()
            polyline = s.fresh_polyline()
            if s.partition is None:
                raise InvalidParameterError("no rating partition available")
            placements = axis_mod.build_axis(s.partition, polyline, projection)
            s.placements = placements
            return {
                "placements": [
                    {
                        "id": p.item_id,
                        "segment_index": p.segment_index,
                        "t": p.t,
                        "arc_position": p.arc_position,
                        "distance": p.distance,
                        "bracket": list(p.bracket),
                        "inverse_ordinal": p.inverse_ordinal,
                        "consistency": p.consistency,
                    }
                    for p in placements
                ]
            }

    @app.get("/sessions/{session_id}/inconsistencies")
    def inconsistencies(session_id: str, budget: int = Query(default=50, ge=0)):
        s = get_session(session_id)
        projection = s.fresh_projection()
        verdicts = enumerate_inconsistencies(s.scores, projection, budget)
        return {
            "inconsistencies": [
                {
                    "ids": list(v.ids),
                    "verdict": v.verdict,
                    "witness": v.witness,
                    "severity": v.severity,
                }
                for v in verdicts
            ]
        }

    @app.post("/sessions/{session_id}/schemes", status_code=201)
    def save_scheme(session_id: str, body: SchemeBody):
        s = get_session(session_id)
        with s.lock:
            if s.partition is None:
                raise InvalidParameterError("nothing to save: no rating partition")
            scheme = schemes_mod.make_scheme(
                body.name,
                s.dataset,
                s.weights_dict(),
                s.ranked,
                s.partition,
                s.projection_config,
            )
            scheme = s.store.save(scheme)
            return {"name": scheme.name, "created_at": scheme.created_at}

    @app.get("/sessions/{session_id}/schemes")
    def list_schemes(session_id: str):
        s = get_session(session_id)
        return {"schemes": s.store.names()}

    @app.get("/sessions/{session_id}/schemes/compare")
    def compare(session_id: str, a: str, b: str):
        s = get_session(session_id)
        comparison = schemes_mod.compare_schemes(s.store.load(a), s.store.load(b))
        return {
            "scheme_a": comparison.scheme_a,
            "scheme_b": comparison.scheme_b,
            "rows": [r._asdict() for r in comparison.rows],
        }

    @app.get("/sessions/{session_id}/schemes/projections")
    def comparative_projections(
        session_id: str, limit: int = Query(default=schemes_mod.COMPARATIVE_PROJECTION_COUNT, ge=1)
    ):
        s = get_session(session_id)
        limit = min(limit, schemes_mod.COMPARATIVE_PROJECTION_COUNT)
        out = []
        for scheme in s.store.most_recent(limit):
            w = np.array(
                [scheme.weights[n] for n in s.dataset.attribute_names], dtype=np.float64
            )
            config = ProjectionConfig(**scheme.projection_config)
            projection = project_dataset(s.dataset, w, config)
            out.append({"scheme": scheme.name, **serialize_projection(projection)})
        return {"projections": out}

    @app.get("/sessions/{session_id}/align")
    def align(session_id: str, item: str):
        s = get_session(session_id)
        return {"order": schemes_mod.align_order(s.dataset, item)}

    return app


app = create_app()
