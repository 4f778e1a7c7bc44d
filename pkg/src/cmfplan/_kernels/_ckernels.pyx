# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled point-cloud kernels.

Mirrors ``pure.py`` exactly: same tie-breaking (distance, then point
coordinates lexicographically, then index), same padding rules, same
accumulation order.  The parity tests in tests/test_kernels.py hold the
two lanes together.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


cdef inline double _sqdist(const double[:, ::1] pts, Py_ssize_t j,
                           double cx, double cy, double cz) nogil:
    cdef double dx = pts[j, 0] - cx
    cdef double dy = pts[j, 1] - cy
    cdef double dz = pts[j, 2] - cz
    return dx * dx + dy * dy + dz * dz


cdef inline bint _key_less(double d1, double x1, double y1, double z1, Py_ssize_t i1,
                           double d2, double x2, double y2, double z2, Py_ssize_t i2) nogil:
    if d1 != d2:
        return d1 < d2
    if x1 != x2:
        return x1 < x2
    if y1 != y2:
        return y1 < y2
    if z1 != z2:
        return z1 < z2
    return i1 < i2


cdef inline bint _point_less(const double[:, ::1] pts, Py_ssize_t a, Py_ssize_t b) nogil:
    if pts[a, 0] != pts[b, 0]:
        return pts[a, 0] < pts[b, 0]
    if pts[a, 1] != pts[b, 1]:
        return pts[a, 1] < pts[b, 1]
    if pts[a, 2] != pts[b, 2]:
        return pts[a, 2] < pts[b, 2]
    return a < b


def lex_smallest_index(const double[:, ::1] coords):
    cdef Py_ssize_t n = coords.shape[0]
    cdef Py_ssize_t best = 0, j
    for j in range(1, n):
        if _point_less(coords, j, best):
            best = j
    return int(best)


def fps(const double[:, ::1] coords, Py_ssize_t k, Py_ssize_t seed_index, bint lex_ties=False):
    cdef Py_ssize_t n = coords.shape[0]
    out_arr = np.empty(k, dtype=np.int64)
    mind_arr = np.empty(n, dtype=np.float64)
    cdef cnp.int64_t[::1] out = out_arr
    cdef double[::1] mind = mind_arr
    cdef Py_ssize_t step, j, best
    cdef double d, cx, cy, cz

    out[0] = seed_index
    cx = coords[seed_index, 0]
    cy = coords[seed_index, 1]
    cz = coords[seed_index, 2]
    for j in range(n):
        mind[j] = _sqdist(coords, j, cx, cy, cz)
    for step in range(1, k):
        best = 0
        for j in range(1, n):
            if mind[j] > mind[best]:
                best = j
            elif lex_ties and mind[j] == mind[best] and _point_less(coords, j, best):
                best = j
        out[step] = best
        cx = coords[best, 0]
        cy = coords[best, 1]
        cz = coords[best, 2]
        for j in range(n):
            d = _sqdist(coords, j, cx, cy, cz)
            if d < mind[j]:
                mind[j] = d
    return out_arr


def ball_query(const double[:, ::1] points, const double[:, ::1] centers,
               double radius, Py_ssize_t cap):
    cdef Py_ssize_t m = centers.shape[0]
    cdef Py_ssize_t n = points.shape[0]
    out_arr = np.empty((m, cap), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] out = out_arr
    buf_idx_arr = np.empty(cap, dtype=np.int64)
    buf_d_arr = np.empty(cap, dtype=np.float64)
    cdef cnp.int64_t[::1] buf_idx = buf_idx_arr
    cdef double[::1] buf_d = buf_d_arr
    cdef double r2 = radius * radius
    cdef Py_ssize_t i, j, t, pos, cnt, near
    cdef double d, cx, cy, cz, near_d

    for i in range(m):
        cx = centers[i, 0]
        cy = centers[i, 1]
        cz = centers[i, 2]
        cnt = 0
        near = 0
        near_d = _sqdist(points, 0, cx, cy, cz)
        for j in range(n):
            d = _sqdist(points, j, cx, cy, cz)
            if j > 0 and _key_less(d, points[j, 0], points[j, 1], points[j, 2], j,
                                   near_d, points[near, 0], points[near, 1],
                                   points[near, 2], near):
                near = j
                near_d = d
            if d <= r2:
                if cnt < cap:
                    pos = cnt
                    cnt += 1
                elif _key_less(d, points[j, 0], points[j, 1], points[j, 2], j,
                               buf_d[cap - 1], points[buf_idx[cap - 1], 0],
                               points[buf_idx[cap - 1], 1], points[buf_idx[cap - 1], 2],
                               buf_idx[cap - 1]):
                    pos = cap - 1
                else:
                    continue
                while pos > 0 and _key_less(d, points[j, 0], points[j, 1], points[j, 2], j,
                                            buf_d[pos - 1], points[buf_idx[pos - 1], 0],
                                            points[buf_idx[pos - 1], 1],
                                            points[buf_idx[pos - 1], 2], buf_idx[pos - 1]):
                    buf_d[pos] = buf_d[pos - 1]
                    buf_idx[pos] = buf_idx[pos - 1]
                    pos -= 1
                buf_d[pos] = d
                buf_idx[pos] = j
        if cnt == 0:
            buf_idx[0] = near
            cnt = 1
        for t in range(cap):
            out[i, t] = buf_idx[t] if t < cnt else buf_idx[0]
    return out_arr


def three_nn(const double[:, ::1] queries, const double[:, ::1] refs):
    cdef Py_ssize_t q = queries.shape[0]
    cdef Py_ssize_t n = refs.shape[0]
    idx_arr = np.empty((q, 3), dtype=np.int64)
    dist_arr = np.empty((q, 3), dtype=np.float64)
    cdef cnp.int64_t[:, ::1] idx = idx_arr
    cdef double[:, ::1] dist = dist_arr
    cdef Py_ssize_t i, j, t, pos, cnt
    cdef double d, cx, cy, cz
    cdef double bd[3]
    cdef Py_ssize_t bi[3]

    for i in range(q):
        cx = queries[i, 0]
        cy = queries[i, 1]
        cz = queries[i, 2]
        cnt = 0
        for j in range(n):
            d = _sqdist(refs, j, cx, cy, cz)
            if cnt < 3:
                pos = cnt
                cnt += 1
            elif _key_less(d, refs[j, 0], refs[j, 1], refs[j, 2], j,
                           bd[2], refs[bi[2], 0], refs[bi[2], 1], refs[bi[2], 2], bi[2]):
                pos = 2
            else:
                continue
            while pos > 0 and _key_less(d, refs[j, 0], refs[j, 1], refs[j, 2], j,
                                        bd[pos - 1], refs[bi[pos - 1], 0],
                                        refs[bi[pos - 1], 1], refs[bi[pos - 1], 2],
                                        bi[pos - 1]):
                bd[pos] = bd[pos - 1]
                bi[pos] = bi[pos - 1]
                pos -= 1
            bd[pos] = d
            bi[pos] = j
        for t in range(3):
            if t < cnt:
                idx[i, t] = bi[t]
                dist[i, t] = sqrt(bd[t])
            else:
                idx[i, t] = bi[0]
                dist[i, t] = sqrt(bd[0])
    return idx_arr, dist_arr


def scatter_add_rows(double[:, ::1] out, const cnp.int64_t[::1] idx,
                     const double[:, ::1] src):
    cdef Py_ssize_t m = src.shape[0]
    cdef Py_ssize_t d = src.shape[1]
    cdef Py_ssize_t i, j, row
    for i in range(m):
        row = idx[i]
        for j in range(d):
            out[row, j] += src[i, j]
