# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernel for the direction-weight evaluation."""

from libc.math cimport exp, log

import numpy as np


def eval_batch(const double[:, ::1] points, const double[:, :, ::1] pair_dirs,
               double eps, const double[:, ::1] dirs):
    """Per-direction weights, log factors, and image points.

    Results for each direction depend only on that direction's row, so any
    batch split yields bitwise-identical output.
    """
    cdef Py_ssize_t n = points.shape[0]
    cdef Py_ssize_t d = points.shape[1]
    cdef Py_ssize_t nb = dirs.shape[0]

    lambdas_arr = np.empty((nb, n), dtype=np.float64)
    logc_arr = np.empty((nb, n), dtype=np.float64)
    images_arr = np.zeros((nb, d), dtype=np.float64)
    cdef double[:, ::1] lam = lambdas_arr
    cdef double[:, ::1] lc = logc_arr
    cdef double[:, ::1] img = images_arr

    cdef Py_ssize_t k, i, j, c
    cdef double s, t, acc, m, delta, w

    for k in range(nb):
        for i in range(n):
            acc = 0.0
            for j in range(n):
                if j == i:
                    continue
                s = 0.0
                for c in range(d):
                    s += dirs[k, c] * pair_dirs[i, j, c]
                t = -s
                if t < 0.0:
                    t = 0.0
                acc += log(eps + t)
            lc[k, i] = acc
        m = lc[k, 0]
        for i in range(1, n):
            if lc[k, i] > m:
                m = lc[k, i]
        delta = 0.0
        for i in range(n):
            w = exp(lc[k, i] - m)
            lam[k, i] = w
            delta += w
        for i in range(n):
            lam[k, i] /= delta
        for i in range(n):
            w = lam[k, i]
            for c in range(d):
                img[k, c] += w * points[i, c]

    return lambdas_arr, logc_arr, images_arr
