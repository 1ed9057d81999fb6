"""Pure-Python/numpy fallbacks for the compiled kernels.

polyline_project and triple_scan follow the exact scalar arithmetic of
the native kernels (same operations, same order), so the two backends
agree bit-for-bit. tsne_gradient is numpy-vectorized and agrees with
the native loop only to floating-point tolerance.
"""

from __future__ import annotations

import math

import numpy as np

NAME = "pure"


def tsne_gradient(p: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Gradient of the KL objective wrt the embedding, Student-t kernel."""
    sq = (y**2).sum(axis=1)
    d = sq[:, None] + sq[None, :] - 2.0 * (y @ y.T)
    num = 1.0 / (1.0 + d)
    np.fill_diagonal(num, 0.0)
    q_sum = num.sum()
    pq = (p - num / q_sum) * num
    return 4.0 * (pq.sum(axis=1)[:, None] * y - pq @ y)


def polyline_project(px, py, ax, ay):
    """Project each point onto the polyline with anchors (ax, ay).

    Returns (segment, t, foot_x, foot_y, distance, arc_position) arrays.
    Ties between equidistant segments go to the lower index; clamped
    feet reuse the anchor coordinates exactly.
    """
    px = np.asarray(px, dtype=np.float64)
    py = np.asarray(py, dtype=np.float64)
    ax = np.asarray(ax, dtype=np.float64)
    ay = np.asarray(ay, dtype=np.float64)
    n_seg = len(ax) - 1
    prefix = [0.0] * (n_seg + 1)
    seg_len = [0.0] * n_seg
    for s in range(n_seg):
        dx = ax[s + 1] - ax[s]
        dy = ay[s + 1] - ay[s]
        seg_len[s] = math.sqrt(dx * dx + dy * dy)
        prefix[s + 1] = prefix[s] + seg_len[s]

    k = len(px)
    seg_out = np.empty(k, dtype=np.int64)
    t_out = np.empty(k, dtype=np.float64)
    fx_out = np.empty(k, dtype=np.float64)
    fy_out = np.empty(k, dtype=np.float64)
    dist_out = np.empty(k, dtype=np.float64)
    arc_out = np.empty(k, dtype=np.float64)
    for i in range(k):
        x = px[i]
        yy = py[i]
        best_d = math.inf
        best_s = 0
        best_t = 0.0
        best_fx = ax[0]
        best_fy = ay[0]
        for s in range(n_seg):
            dx = ax[s + 1] - ax[s]
            dy = ay[s + 1] - ay[s]
            l2 = dx * dx + dy * dy
            t = ((x - ax[s]) * dx + (yy - ay[s]) * dy) / l2
            if t <= 0.0:
                t = 0.0
                fx = ax[s]
                fy = ay[s]
            elif t >= 1.0:
                t = 1.0
                fx = ax[s + 1]
                fy = ay[s + 1]
            else:
                fx = ax[s] + t * dx
                fy = ay[s] + t * dy
            ddx = x - fx
            ddy = yy - fy
            d = math.sqrt(ddx * ddx + ddy * ddy)
            if d < best_d:
                best_d = d
                best_s = s
                best_t = t
                best_fx = fx
                best_fy = fy
        seg_out[i] = best_s
        t_out[i] = best_t
        fx_out[i] = best_fx
        fy_out[i] = best_fy
        dist_out[i] = best_d
        arc_out[i] = prefix[best_s] + best_t * seg_len[best_s]
    return seg_out, t_out, fx_out, fy_out, dist_out, arc_out


# Witness codes shared with the native kernel.
BETWEEN_DESC = 0  # f_i > f_k > f_j
BETWEEN_ASC = 1  # f_i < f_k < f_j


def triple_scan(f, g):
    """Exhaustive scan over triples (i < j, k != i, j).

    Emits (i, j, k, witness, severity) for every gate-passing triple
    whose middle score falls strictly between the pair's scores, where
    severity = |f_k - (f_i + f_j)/2|.
    """
    f = np.asarray(f, dtype=np.float64)
    g = np.asarray(g, dtype=np.float64)
    n = len(f)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            gij = g[i, j]
            for k in range(n):
                if k == i or k == j:
                    continue
                gik = g[i, k]
                gjk = g[j, k]
                m = gik if gik < gjk else gjk
                if not m > gij:
                    continue
                fi = f[i]
                fj = f[j]
                fk = f[k]
                if fi > fk > fj:
                    witness = BETWEEN_DESC
                elif fi < fk < fj:
                    witness = BETWEEN_ASC
                else:
                    continue
                severity = abs(fk - (fi + fj) / 2.0)
                out.append((i, j, k, witness, severity))
    return out
