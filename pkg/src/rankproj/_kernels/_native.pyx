# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: t-SNE gradient, polyline projection, triple scan.

polyline_project and triple_scan run the same scalar arithmetic as the
pure fallback (same operations, same order) so results match it
bit-for-bit; tsne_gradient uses explicit loops and matches the numpy
fallback to floating-point tolerance only.
"""

from libc.math cimport sqrt, fabs, INFINITY

import numpy as np

cimport numpy as cnp

cnp.import_array()

NAME = "native"

DEF BETWEEN_DESC = 0
DEF BETWEEN_ASC = 1


def tsne_gradient(double[:, ::1] p, double[:, ::1] y):
    cdef Py_ssize_t n = p.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] num_arr = np.empty((n, n), dtype=np.float64)
    cdef double[:, ::1] num = num_arr
    cdef cnp.ndarray[cnp.float64_t, ndim=2] dy_arr = np.zeros((n, 2), dtype=np.float64)
    cdef double[:, ::1] dy = dy_arr
    cdef Py_ssize_t i, j
    cdef double dx, dz, q_sum = 0.0, v, coef

    for i in range(n):
        num[i, i] = 0.0
        for j in range(i + 1, n):
            dx = y[i, 0] - y[j, 0]
            dz = y[i, 1] - y[j, 1]
            v = 1.0 / (1.0 + dx * dx + dz * dz)
            num[i, j] = v
            num[j, i] = v
            q_sum += 2.0 * v

    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            v = num[i, j]
            coef = 4.0 * (p[i, j] - v / q_sum) * v
            dy[i, 0] += coef * (y[i, 0] - y[j, 0])
            dy[i, 1] += coef * (y[i, 1] - y[j, 1])
    return dy_arr


def polyline_project(px_in, py_in, ax_in, ay_in):
    cdef double[::1] px = np.ascontiguousarray(px_in, dtype=np.float64)
    cdef double[::1] py = np.ascontiguousarray(py_in, dtype=np.float64)
    cdef double[::1] ax = np.ascontiguousarray(ax_in, dtype=np.float64)
    cdef double[::1] ay = np.ascontiguousarray(ay_in, dtype=np.float64)
    cdef Py_ssize_t n_seg = ax.shape[0] - 1
    cdef Py_ssize_t k = px.shape[0]

    cdef cnp.ndarray[cnp.float64_t, ndim=1] prefix_arr = np.empty(n_seg + 1, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] seglen_arr = np.empty(n_seg, dtype=np.float64)
    cdef double[::1] prefix = prefix_arr
    cdef double[::1] seg_len = seglen_arr
    cdef Py_ssize_t s, i
    cdef double dx, dy

    prefix[0] = 0.0
    for s in range(n_seg):
        dx = ax[s + 1] - ax[s]
        dy = ay[s + 1] - ay[s]
        seg_len[s] = sqrt(dx * dx + dy * dy)
        prefix[s + 1] = prefix[s] + seg_len[s]

    cdef cnp.ndarray[cnp.int64_t, ndim=1] seg_out = np.empty(k, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] t_out = np.empty(k, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] fx_out = np.empty(k, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] fy_out = np.empty(k, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] dist_out = np.empty(k, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] arc_out = np.empty(k, dtype=np.float64)

    cdef double x, yy, l2, t, fx, fy, ddx, ddy, d
    cdef double best_d, best_t, best_fx, best_fy
    cdef Py_ssize_t best_s

    for i in range(k):
        x = px[i]
        yy = py[i]
        best_d = INFINITY
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
            d = sqrt(ddx * ddx + ddy * ddy)
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


def triple_scan(f_in, g_in):
    cdef double[::1] f = np.ascontiguousarray(f_in, dtype=np.float64)
    cdef double[:, ::1] g = np.ascontiguousarray(g_in, dtype=np.float64)
    cdef Py_ssize_t n = f.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double gij, gik, gjk, m, fi, fj, fk, severity
    cdef int witness
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
                severity = fabs(fk - (fi + fj) / 2.0)
                out.append((i, j, k, witness, severity))
    return out
