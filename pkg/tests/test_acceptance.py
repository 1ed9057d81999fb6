"""Acceptance gate: one test per release criterion, each at its stated
tolerance, printing one PASS/FAIL line per criterion (run with -s to
see them on success)."""

import itertools
import time
from contextlib import contextmanager

import numpy as np
from click.testing import CliRunner
from fastapi.testclient import TestClient

from rankproj import (
    Attribute,
    DataItem,
    ProjectionConfig,
    build_dataset,
    build_axis,
    classify_triple,
    derive_constraints,
    enumerate_inconsistencies,
    inverse_ordinal,
    project_dataset,
    project_onto_polyline,
    rank_all,
    rating_line,
    train_ranking_svm,
    partition_scores,
    align_order,
    compare_schemes,
)
from rankproj.axis import Anchor, RatingPolyline
from rankproj.cli import OUTPUT_FILES, main as cli_main
from rankproj.projection import Projection
from rankproj.ranking import PairwiseConstraint
from rankproj.rating import find_split_points, quantize_scores
from rankproj.schemes import RankingScheme
from rankproj.service import ServiceConfig, create_app

from oracles import dense_polyline_oracle, greedy_splits_oracle, inconsistent_triples_oracle
from test_cli import write_fixture


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}")
        raise
    print(f"[PASS] {name}")


def separable_fixture(seed=0, blend=0.6):
    """50 items x 5 attributes with a shared quality factor (the way
    correlated institutional metrics behave) plus a hidden weighting."""
    rng = np.random.default_rng(seed)
    n, m = 50, 5
    quality = rng.uniform(0.0, 100.0, size=n)
    noise = rng.uniform(0.0, 100.0, size=(n, m))
    raw = blend * quality[:, None] + (1.0 - blend) * noise
    items = [
        DataItem(id=f"inst{i:02d}", label=f"inst{i:02d}", raw_values=tuple(raw[i]))
        for i in range(n)
    ]
    ds = build_dataset([Attribute(f"attr{j}") for j in range(m)], items)
    w_star = rng.uniform(0.2, 1.0, size=m)
    return ds, w_star


def test_worked_inverse_ordinal_cases():
    with criterion("worked inverse-ordinal cases (+2 and -1), < 1 ms"):
        inverse_ordinal(2, (1, 2))  # warm the call path
        start = time.perf_counter()
        up = inverse_ordinal(4, (1, 2))
        down = inverse_ordinal(1, (2, 3))
        elapsed = time.perf_counter() - start
        assert up == 2
        assert down == -1
        assert elapsed < 1e-3


def test_constraint_count_for_six_marked():
    with criterion("k=6 marked items -> exactly 30 pairwise constraints"):
        ds, w_star = separable_fixture()
        marked = [it.id for it in ds.items[:6]]
        assert len(derive_constraints(marked, ds)) == 30


def test_separable_recovery():
    with criterion("separable recovery: 100% training, >= 95% implied pairs, < 1 s"):
        ds, w_star = separable_fixture()
        scores = ds.normalized @ w_star
        order = sorted(range(ds.n_items), key=lambda i: (-scores[i], ds.items[i].id))
        marked = [ds.items[order[r]].id for r in (0, 9, 19, 29, 39, 49)]
        constraints = derive_constraints(marked, ds)

        start = time.perf_counter()
        trained = train_ranking_svm(constraints)
        elapsed = time.perf_counter() - start
        assert elapsed < 1.0

        satisfied = sum(
            1 for c in constraints if c.class_label * float(np.dot(trained.w, c.diff)) > 0
        )
        assert satisfied == 30

        learned = ds.normalized @ trained.w
        agree = total = 0
        for i in range(ds.n_items):
            for j in range(i + 1, ds.n_items):
                total += 1
                if (scores[i] - scores[j]) * (learned[i] - learned[j]) > 0:
                    agree += 1
        assert agree / total >= 0.95


def test_soft_constraint_robustness():
    with criterion("contradictory pair never aborts training; w stays finite"):
        ds, _ = separable_fixture()
        d = ds.row("inst00") - ds.row("inst01")
        constraints = [
            PairwiseConstraint("inst00", "inst01", d, 1),
            PairwiseConstraint("inst00", "inst01", d.copy(), -1),
            PairwiseConstraint(
                "inst02", "inst03", ds.row("inst02") - ds.row("inst03"), 1
            ),
        ]
        trained = train_ranking_svm(constraints)
        assert np.all(np.isfinite(trained.w))


def test_entropy_split_oracle_sweep():
    with criterion("1,000 random split searches equal the brute-force greedy oracle, < 10 s"):
        rng = np.random.default_rng(2024)
        start = time.perf_counter()
        trials = 0
        while trials < 1000:
            n_ratings = int(rng.integers(2, 5))
            n_items = int(rng.integers(n_ratings, 21))
            scores = quantize_scores(rng.uniform(-1.0, 1.0, size=n_items), n_ratings)
            if len(np.unique(scores)) < n_ratings:
                continue
            got = find_split_points(scores, n_ratings)
            expected = greedy_splits_oracle(scores, n_ratings)
            assert got == expected
            trials += 1
        assert time.perf_counter() - start < 10.0


def test_polyline_projection_oracle_sweep():
    with criterion("1,000 polyline projections within 1e-4 of the dense oracle, < 5 s"):
        rng = np.random.default_rng(0)
        start = time.perf_counter()
        for _ in range(1000):
            n_anchor = int(rng.integers(2, 11))
            pts = rng.uniform(0.0, 1.0, size=(n_anchor, 2))
            anchors = tuple(
                Anchor(float(x), float(y), i + 1) for i, (x, y) in enumerate(pts)
            )
            polyline = RatingPolyline(kind="rating", anchors=anchors)
            point = tuple(rng.uniform(-0.2, 1.2, size=2))
            foot = project_onto_polyline(point, polyline)
            ax, ay = polyline.anchor_array()
            oracle_dist, oracle_arc = dense_polyline_oracle(point, ax, ay)
            assert abs(foot.distance - oracle_dist) < 1e-4
            assert abs(foot.arc_position - oracle_arc) < 1e-4
        assert time.perf_counter() - start < 5.0


def test_one_dimensional_consistency_theorem():
    with criterion("1-D identity projection: no gate-passing triple is inconsistent"):
        rng = np.random.default_rng(7)
        for _ in range(200):
            n = int(rng.integers(3, 13))
            values = rng.normal(size=n)
            for i, j in itertools.combinations(range(n), 2):
                for k in range(n):
                    if k in (i, j):
                        continue
                    verdict = classify_triple(
                        values[i],
                        values[j],
                        values[k],
                        abs(values[i] - values[k]),
                        abs(values[j] - values[k]),
                        abs(values[i] - values[j]),
                    )
                    assert verdict.verdict != "inconsistent"


def test_triple_enumeration_oracle():
    with criterion("N=30 triple enumeration equals the exhaustive O(N^3) oracle, < 1 s"):
        rng = np.random.default_rng(30)
        n = 30
        coords = rng.uniform(0.0, 1.0, size=(n, 2))
        ids = tuple(f"p{i:02d}" for i in range(n))
        scores = {i: float(s) for i, s in zip(ids, rng.uniform(0.0, 1.0, size=n))}
        proj = Projection(
            coords=coords,
            item_ids=ids,
            config=ProjectionConfig(method="pca"),
            weights_fingerprint="fixture",
        )
        start = time.perf_counter()
        got = enumerate_inconsistencies(scores, proj, budget=10**9)
        assert time.perf_counter() - start < 1.0
        expected = inconsistent_triples_oracle(scores, ids, coords.tolist())
        assert [(v.ids, v.witness, v.severity) for v in got] == [
            ((ids[i], ids[j], ids[k]), w, s) for i, j, k, w, s in expected
        ]


def test_determinism(tmp_path):
    with criterion("CLI byte-identical reruns; PCA within 1e-9; t-SNE identical per seed"):
        inp = write_fixture(tmp_path)
        runner = CliRunner()
        outputs = []
        for sub in ("a", "b"):
            out = tmp_path / sub
            res = runner.invoke(
                cli_main,
                [
                    "run", "--input", str(inp), "--method", "tsne", "--seed", "5",
                    "--perplexity", "6", "--ratings", "4", "--out", str(out),
                ],
            )
            assert res.exit_code == 0, res.output
            outputs.append({name: (out / name).read_bytes() for name in OUTPUT_FILES})
        assert outputs[0] == outputs[1]

        ds, w_star = separable_fixture()
        pca_cfg = ProjectionConfig(method="pca")
        a = project_dataset(ds, w_star, pca_cfg)
        b = project_dataset(ds, w_star, pca_cfg)
        assert np.max(np.abs(a.coords - b.coords)) < 1e-9

        tsne_cfg = ProjectionConfig(method="tsne", seed=42, perplexity=10.0, iterations=300)
        t1 = project_dataset(ds, w_star, tsne_cfg)
        t2 = project_dataset(ds, w_star, tsne_cfg)
        assert np.array_equal(t1.coords, t2.coords)


def test_scheme_comparison_arithmetic():
    with criterion("rank 16->26 gives delta -10 down; 33->31 gives +2 up"):
        n = 40
        ids = [f"bank{i:02d}" for i in range(n)]

        def scheme(ranks):
            return RankingScheme(
                name="s",
                created_at="2026-01-01T00:00:00",
                weights={"a": 1.0},
                scores={i: float(n - r) for i, r in ranks.items()},
                ranks=ranks,
                split_points=(10.0,),
                ratings={i: 1 for i in ids},
                n_ratings=2,
                projection_config={},
            )

        before = {i: r for r, i in enumerate(ids, start=1)}
        after = dict(before)
        after[ids[15]], after[ids[25]] = 26, 16
        after[ids[32]], after[ids[30]] = 31, 33
        rows = {r.item_id: r for r in compare_schemes(scheme(before), scheme(after)).rows}
        assert rows[ids[15]].delta == -10 and rows[ids[15]].arrow == "down"
        assert rows[ids[32]].delta == 2 and rows[ids[32]].arrow == "up"


def test_api_module_equivalence(tmp_path):
    with criterion("every endpoint response equals the direct module invocation"):
        ds, w_star = separable_fixture(seed=4)
        csv_lines = ["label," + ",".join(ds.attribute_names)]
        for item in ds.items:
            csv_lines.append(item.label + "," + ",".join(repr(v) for v in item.raw_values))
        csv_text = "\n".join(csv_lines) + "\n"

        client = TestClient(create_app(ServiceConfig(scheme_root=str(tmp_path / "s"))))
        sid = client.post("/sessions", content=csv_text).json()["session_id"]

        # rerank
        scores0 = ds.normalized @ w_star
        order = sorted(range(ds.n_items), key=lambda i: (-scores0[i], ds.items[i].id))
        marked = [ds.items[order[r]].id for r in (0, 9, 19, 29, 39, 49)]
        api = client.post(f"/sessions/{sid}/rerank", json={"marked": marked}).json()
        trained = train_ranking_svm(derive_constraints(marked, ds))
        ranked = rank_all(trained, ds)
        assert api["weights"] == {
            n: float(v) for n, v in zip(ds.attribute_names, trained.w)
        }
        assert api["ranking"] == [
            {"id": r.id, "score": r.score, "rank": r.rank} for r in ranked
        ]
        partition = partition_scores([r.id for r in ranked], [r.score for r in ranked], 5)
        assert api["partition"]["split_points"] == [float(s) for s in partition.split_points]
        assert api["partition"]["assignment"] == dict(partition.assignment)

        # ratings slider
        api = client.post(f"/sessions/{sid}/ratings", json={"n": 3}).json()
        partition3 = partition_scores([r.id for r in ranked], [r.score for r in ranked], 3)
        assert api["partition"]["split_points"] == [float(s) for s in partition3.split_points]
        assert api["partition"]["assignment"] == dict(partition3.assignment)

        # projection
        api = client.post(f"/sessions/{sid}/projection", json={"method": "pca"}).json()
        proj = project_dataset(ds, trained, ProjectionConfig(method="pca"))
        assert api["coords"] == [
            {"id": i, "x": float(x), "y": float(y)}
            for i, (x, y) in zip(proj.item_ids, proj.coords)
        ]

        # polyline + axis
        api = client.post(f"/sessions/{sid}/polyline", json={"kind": "rating"}).json()
        line = rating_line(partition3, proj)
        assert api["anchors"] == [
            {"x": a.x, "y": a.y, "label": a.label} for a in line.anchors
        ]
        api = client.post(f"/sessions/{sid}/axis").json()
        placements = build_axis(partition3, line, proj)
        assert api["placements"] == [
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

        # inconsistencies
        api = client.get(f"/sessions/{sid}/inconsistencies", params={"budget": 40}).json()
        verdicts = enumerate_inconsistencies({r.id: r.score for r in ranked}, proj, 40)
        assert api["inconsistencies"] == [
            {
                "ids": list(v.ids),
                "verdict": v.verdict,
                "witness": v.witness,
                "severity": v.severity,
            }
            for v in verdicts
        ]

        # align
        api = client.get(f"/sessions/{sid}/align", params={"item": ds.items[0].id}).json()
        assert api["order"] == align_order(ds, ds.items[0].id)

        # scheme compare: save twice under different weights
        client.post(f"/sessions/{sid}/schemes", json={"name": "one"})
        client.post(
            f"/sessions/{sid}/rerank", json={"marked": list(reversed(marked))}
        )
        client.post(f"/sessions/{sid}/schemes", json={"name": "two"})
        api = client.get(
            f"/sessions/{sid}/schemes/compare", params={"a": "one", "b": "two"}
        ).json()
        trained_rev = train_ranking_svm(derive_constraints(list(reversed(marked)), ds))
        ranked_rev = rank_all(trained_rev, ds)
        ranks_one = {r.id: r.rank for r in ranked}
        ranks_rev = {r.id: r.rank for r in ranked_rev}
        for row in api["rows"]:
            item = row["item_id"]
            assert row["rank_a"] == ranks_one[item]
            assert row["rank_b"] == ranks_rev[item]
            assert row["delta"] == ranks_one[item] - ranks_rev[item]
