import itertools

import numpy as np

from rankproj import (
    Projection,
    ProjectionConfig,
    classify_triple,
    cluster_gate,
    enumerate_inconsistencies,
    preference,
)
from rankproj.consistency import (
    BETWEEN_ASC,
    BETWEEN_DESC,
    CONSISTENT,
    GATE_FAILED,
    INCONSISTENT,
    PAIR_ABOVE,
    PAIR_BELOW,
    TIE,
    export_report_csv,
)

from oracles import inconsistent_triples_oracle


def projection_of(coords, ids=None):
    coords = np.asarray(coords, dtype=np.float64)
    if ids is None:
        ids = tuple(f"p{i}" for i in range(len(coords)))
    return Projection(
        coords=coords,
        item_ids=tuple(ids),
        config=ProjectionConfig(method="pca"),
        weights_fingerprint="test",
    )


def test_preference_direction():
    assert preference(0.9, 0.1) == 1
    assert preference(0.1, 0.9) == -1
    assert preference(0.5, 0.5) == 0


def test_preference_random_pairs():
    rng = np.random.default_rng(0)
    for _ in range(50):
        a, b = rng.normal(size=2)
        assert preference(a, b) == (1 if a > b else (-1 if a < b else 0))


def test_cluster_gate_examples():
    assert cluster_gate(5.0, 5.0, 1.0) is True
    assert cluster_gate(1.0, 5.0, 2.0) is False


def test_cluster_gate_matches_formula():
    rng = np.random.default_rng(1)
    for _ in range(100):
        gik, gjk, gij = rng.uniform(0, 3, size=3)
        assert cluster_gate(gik, gjk, gij) == (min(gik, gjk) > gij)


def test_classify_inconsistent_descending():
    v = classify_triple(3.0, 1.0, 2.0, 5.0, 5.0, 1.0)
    assert v.verdict == INCONSISTENT
    assert v.witness == BETWEEN_DESC
    assert v.gate_holds


def test_classify_inconsistent_ascending():
    v = classify_triple(1.0, 3.0, 2.0, 5.0, 5.0, 1.0)
    assert v.verdict == INCONSISTENT
    assert v.witness == BETWEEN_ASC


def test_classify_consistent_pair_above():
    v = classify_triple(3.0, 2.0, 1.0, 5.0, 5.0, 1.0)
    assert v.verdict == CONSISTENT
    assert v.witness == PAIR_ABOVE


def test_classify_consistent_pair_below():
    v = classify_triple(1.0, 2.0, 9.0, 5.0, 5.0, 1.0)
    assert v.verdict == CONSISTENT
    assert v.witness == PAIR_BELOW


def test_classify_gate_failed():
    v = classify_triple(3.0, 1.0, 2.0, 1.0, 5.0, 2.0)
    assert v.verdict == GATE_FAILED
    assert not v.gate_holds
    assert v.witness is None


def test_classify_tie_at_k():
    v = classify_triple(3.0, 1.0, 3.0, 5.0, 5.0, 1.0)
    assert v.verdict == TIE
    assert v.witness is None


def test_classify_symmetric_in_pair():
    rng = np.random.default_rng(2)
    for _ in range(200):
        fi, fj, fk = rng.normal(size=3)
        gik, gjk, gij = rng.uniform(0, 2, size=3)
        a = classify_triple(fi, fj, fk, gik, gjk, gij)
        b = classify_triple(fj, fi, fk, gjk, gik, gij)
        assert a.verdict == b.verdict
        assert a.severity == b.severity


def test_exclusivity_on_strict_scores():
    rng = np.random.default_rng(3)
    for _ in range(300):
        fi, fj, fk = rng.choice(100, size=3, replace=False).astype(float)
        v = classify_triple(fi, fj, fk, 5.0, 5.0, 1.0)
        assert v.verdict in (INCONSISTENT, CONSISTENT)
        assert v.witness is not None


def test_one_dimensional_identity_projection_never_inconsistent():
    rng = np.random.default_rng(4)
    for _ in range(30):
        n = int(rng.integers(3, 13))
        values = rng.normal(size=n)
        for i, j, k in itertools.permutations(range(n), 3):
            if i > j:
                continue
            f = values
            g = np.abs(values[:, None] - values[None, :])
            v = classify_triple(f[i], f[j], f[k], g[i, k], g[j, k], g[i, j])
            assert v.verdict != INCONSISTENT


def test_enumerate_recovers_planted_inconsistency():
    # a, b close together; c far; c's score between a's and b's
    coords = [(0.0, 0.0), (1.0, 0.0), (10.0, 0.0), (30.0, 30.0)]
    ids = ("a", "b", "c", "far")
    scores = {"a": 3.0, "b": 1.0, "c": 2.0, "far": 10.0}
    verdicts = enumerate_inconsistencies(scores, projection_of(coords, ids), budget=10)
    assert len(verdicts) == 1
    assert verdicts[0].ids == ("a", "b", "c")
    assert verdicts[0].witness == BETWEEN_DESC


def test_enumerate_consistent_by_construction_is_empty():
    rng = np.random.default_rng(5)
    values = np.sort(rng.uniform(0, 1, size=12))
    coords = np.stack([values, np.zeros(12)], axis=1)
    ids = tuple(f"p{i}" for i in range(12))
    scores = {i: float(v) for i, v in zip(ids, values)}
    assert enumerate_inconsistencies(scores, projection_of(coords, ids), budget=100) == []


def test_enumerate_matches_bruteforce_oracle():
    rng = np.random.default_rng(6)
    n = 30
    coords = rng.uniform(0, 1, size=(n, 2))
    ids = tuple(f"p{i:02d}" for i in range(n))
    scores = {i: float(s) for i, s in zip(ids, rng.uniform(0, 1, size=n))}
    got = enumerate_inconsistencies(scores, projection_of(coords, ids), budget=10**9)
    expected = inconsistent_triples_oracle(scores, ids, coords.tolist())
    assert len(got) == len(expected)
    for verdict, (i, j, k, witness, severity) in zip(got, expected):
        assert verdict.ids == (ids[i], ids[j], ids[k])
        assert verdict.witness == witness
        assert verdict.severity == severity


def test_enumerate_budget_caps_output():
    rng = np.random.default_rng(7)
    n = 25
    coords = rng.uniform(0, 1, size=(n, 2))
    ids = tuple(f"p{i:02d}" for i in range(n))
    scores = {i: float(s) for i, s in zip(ids, rng.uniform(0, 1, size=n))}
    proj = projection_of(coords, ids)
    full = enumerate_inconsistencies(scores, proj, budget=10**9)
    capped = enumerate_inconsistencies(scores, proj, budget=5)
    assert capped == full[:5]
    # severity sorted descending
    sevs = [v.severity for v in full]
    assert sevs == sorted(sevs, reverse=True)


def test_sampled_path_for_large_n():
    rng = np.random.default_rng(8)
    n = 80
    coords = rng.uniform(0, 1, size=(n, 2))
    ids = tuple(f"p{i:02d}" for i in range(n))
    scores = {i: float(s) for i, s in zip(ids, rng.uniform(0, 1, size=n))}
    proj = projection_of(coords, ids)
    a = enumerate_inconsistencies(scores, proj, budget=20)
    b = enumerate_inconsistencies(scores, proj, budget=20)
    assert a == b  # deterministic sampling
    assert all(v.verdict == INCONSISTENT for v in a)


def test_report_csv_shape():
    coords = [(0.0, 0.0), (1.0, 0.0), (10.0, 0.0), (30.0, 30.0)]
    ids = ("a", "b", "c", "far")
    scores = {"a": 3.0, "b": 1.0, "c": 2.0, "far": 10.0}
    verdicts = enumerate_inconsistencies(scores, projection_of(coords, ids), budget=10)
    text = export_report_csv(verdicts)
    lines = text.strip().split("\n")
    assert lines[0] == "i,j,k,verdict,witness_equation,severity"
    assert lines[1].startswith("a,b,c,inconsistent,score_between_desc,")
