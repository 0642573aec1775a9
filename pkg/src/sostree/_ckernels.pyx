# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel; same contract as ``_pykernels.ball_weights``."""
import numpy as np


def ball_weights(parent, vertex_factors, edge_factors):
    cdef long long[::1] par = np.ascontiguousarray(parent, dtype=np.int64)
    cdef double[:, ::1] vf = np.ascontiguousarray(vertex_factors, dtype=np.float64)
    cdef double[:, ::1] ef = np.ascontiguousarray(edge_factors, dtype=np.float64)
    cdef Py_ssize_t n = vf.shape[0]
    cdef Py_ssize_t q = vf.shape[1]
    cdef Py_ssize_t total = 1
    cdef Py_ssize_t i
    for i in range(n):
        total *= q
    out_arr = np.empty(total, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef long long[::1] digit = np.zeros(n, dtype=np.int64)
    # prefix[v] = product of vertex and edge factors for vertices 0..v
    cdef double[::1] prefix = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t v, start, c
    cdef long long p

    start = 0
    for c in range(total):
        for v in range(start, n):
            if v == 0:
                prefix[0] = vf[0, digit[0]]
            else:
                p = par[v]
                prefix[v] = prefix[v - 1] * vf[v, digit[v]] * ef[digit[p], digit[v]]
        out[c] = prefix[n - 1]
        # odometer: last vertex varies fastest
        v = n - 1
        while v >= 0:
            digit[v] += 1
            if digit[v] < q:
                break
            digit[v] = 0
            v -= 1
        start = v if v > 0 else 0
    return out_arr
