"""Triple-consistency test between ranking scores and projection distances.

For a triple (i, j, k): when i and j are projection-co-clustered
relative to k (min(g_ik, g_jk) > g_ij) but k's score falls strictly
between theirs, the projection's "proximity = similarity" reading and
the ranking disagree. Gate-passing triples with k's score strictly
outside the pair's scores are consistent; score ties at k are reported
as a distinct tie verdict and excluded from inconsistency reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import _kernels
from .errors import InvalidParameterError
from .projection import Projection, distance_matrix

INCONSISTENT = "inconsistent"
CONSISTENT = "consistent"
GATE_FAILED = "gate_failed"
TIE = "tie"

# Witness names for report exports.
BETWEEN_DESC = "score_between_desc"  # f_i > f_k > f_j
BETWEEN_ASC = "score_between_asc"  # f_i < f_k < f_j
PAIR_ABOVE = "pair_above"  # min(f_i, f_j) > f_k
PAIR_BELOW = "pair_below"  # max(f_i, f_j) < f_k

_WITNESS_BY_CODE = {_kernels.BETWEEN_DESC: BETWEEN_DESC, _kernels.BETWEEN_ASC: BETWEEN_ASC}

EXHAUSTIVE_LIMIT = 60
SAMPLE_COUNT = 200_000


@dataclass(frozen=True)
class TripleVerdict:
    ids: tuple[str, str, str]
    gate_holds: bool
    verdict: str
    witness: str | None
    severity: float = 0.0


def preference(f_i: float, f_j: float) -> int:
    """+1 if i is preferred, -1 if j is, 0 when the scores tie."""
    if f_i > f_j:
        return 1
    if f_i < f_j:
        return -1
    return 0


def cluster_gate(g_ik: float, g_jk: float, g_ij: float) -> bool:
    """True when i and j sit together while k sits apart."""
    return min(g_ik, g_jk) > g_ij


def classify_triple(
    f_i: float,
    f_j: float,
    f_k: float,
    g_ik: float,
    g_jk: float,
    g_ij: float,
    ids: tuple[str, str, str] = ("i", "j", "k"),
) -> TripleVerdict:
    if not cluster_gate(g_ik, g_jk, g_ij):
        return TripleVerdict(ids=ids, gate_holds=False, verdict=GATE_FAILED, witness=None)
    severity = abs(f_k - (f_i + f_j) / 2.0)
    if f_i > f_k > f_j:
        return TripleVerdict(ids, True, INCONSISTENT, BETWEEN_DESC, severity)
    if f_i < f_k < f_j:
        return TripleVerdict(ids, True, INCONSISTENT, BETWEEN_ASC, severity)
    if min(f_i, f_j) > f_k:
        return TripleVerdict(ids, True, CONSISTENT, PAIR_ABOVE, severity)
    if max(f_i, f_j) < f_k:
        return TripleVerdict(ids, True, CONSISTENT, PAIR_BELOW, severity)
    # f_k equals f_i or f_j: neither inequality family strictly holds.
    return TripleVerdict(ids, True, TIE, None, severity)


def enumerate_inconsistencies(
    scores: Mapping[str, float],
    projection: Projection,
    budget: int = 50,
    *,
    sample_seed: int = 0,
) -> list[TripleVerdict]:
    """Inconsistent triples sorted by severity (descending), capped at
    ``budget``. Exhaustive for up to 60 items, seeded uniform sampling
    above that; either way the output order is deterministic.
    """
    if budget < 0:
        raise InvalidParameterError("budget must be non-negative")
    ids = projection.item_ids
    f = np.array([scores[i] for i in ids], dtype=np.float64)
    g = distance_matrix(projection)
    n = len(ids)

    if n <= EXHAUSTIVE_LIMIT:
        raw = _kernels.triple_scan(f, g)
    else:
        raw = _sampled_scan(f, g, sample_seed)

    raw.sort(key=lambda r: (-r[4], r[0], r[1], r[2]))
    out = []
    for i, j, k, code, severity in raw[:budget]:
        out.append(
            TripleVerdict(
                ids=(ids[i], ids[j], ids[k]),
                gate_holds=True,
                verdict=INCONSISTENT,
                witness=_WITNESS_BY_CODE[code],
                severity=float(severity),
            )
        )
    return out


def _sampled_scan(f: np.ndarray, g: np.ndarray, seed: int) -> list[tuple]:
    n = len(f)
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, n, size=(SAMPLE_COUNT, 3))
    seen = set()
    out = []
    for a, b, k in draws:
        i, j = (int(a), int(b)) if a < b else (int(b), int(a))
        k = int(k)
        if i == j or k == i or k == j or (i, j, k) in seen:
            continue
        seen.add((i, j, k))
        if not min(g[i, k], g[j, k]) > g[i, j]:
            continue
        fi, fj, fk = f[i], f[j], f[k]
        if fi > fk > fj:
            code = _kernels.BETWEEN_DESC
        elif fi < fk < fj:
            code = _kernels.BETWEEN_ASC
        else:
            continue
        out.append((i, j, k, code, abs(fk - (fi + fj) / 2.0)))
    return out


def export_report_csv(verdicts: Sequence[TripleVerdict]) -> str:
    """CSV report: i, j, k, verdict, witness_equation, severity."""
    lines = ["i,j,k,verdict,witness_equation,severity"]
    for v in verdicts:
        witness = v.witness or ""
        lines.append(f"{v.ids[0]},{v.ids[1]},{v.ids[2]},{v.verdict},{witness},{repr(v.severity)}")
    return "\n".join(lines) + "\n"
