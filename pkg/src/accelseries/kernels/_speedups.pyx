# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled float64 kernels.

Keep every expression in lockstep with _fallback.py: same evaluation order,
same loop-multiply integer powers, same rescaling and zero guards.  The
build pins -ffp-contract=off so no fused multiply-adds sneak in; outputs are
bitwise identical to the fallback.
"""

import numpy as np

cimport cython
from libc.math cimport fabs, NAN


cdef inline double _ipow(double base, Py_ssize_t e):
    cdef double r = 1.0
    cdef Py_ssize_t i
    for i in range(e):
        r = r * base
    return r


def partial_sums(double[::1] alpha, Py_ssize_t count):
    out_arr = np.empty(count, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double s = 0.0
    cdef double a
    cdef Py_ssize_t n
    for n in range(count):
        a = alpha[n]
        if n % 2 == 0:
            s = s + a
        else:
            s = s - a
        out[n] = s
    return out_arr


cdef void _betas(double[::1] alpha, double[::1] beta, Py_ssize_t M):
    cdef Py_ssize_t j
    beta[0] = NAN
    if alpha[0] != 0.0:
        beta[0] = alpha[1] / alpha[0]
    for j in range(1, M):
        beta[j] = alpha[j + 1] / alpha[j]


def method_s_table(double[::1] alpha, Py_ssize_t K):
    """Method S table from M+1 terms; returns a (K+1, M) array, NaN padded."""
    cdef Py_ssize_t M = alpha.shape[0] - 1
    table_arr = np.full((K + 1, M), np.nan, dtype=np.float64)
    cdef double[:, ::1] table = table_arr
    beta_arr = np.empty(M, dtype=np.float64)
    cdef double[::1] beta = beta_arr
    _betas(alpha, beta, M)
    cdef double[::1] row0 = partial_sums(alpha, M)
    cdef Py_ssize_t k, n
    cdef double t, den
    for n in range(M):
        table[0, n] = row0[n]
    for k in range(1, K + 1):
        for n in range(M - k):
            t = (n + 2 * k - 1) / ((n + 1) * beta[n + 1])
            den = 1.0 + t
            if den == 0.0:
                table[k, n] = NAN
            else:
                table[k, n] = (table[k - 1, n] + t * table[k - 1, n + 1]) / den
    return table_arr


def levin_weniger_table(double[::1] alpha, Py_ssize_t K, bint weniger, double b):
    """Levin/Weniger table via the p/q recurrences, rescaled per level."""
    cdef Py_ssize_t M = alpha.shape[0] - 1
    table_arr = np.full((K + 1, M), np.nan, dtype=np.float64)
    cdef double[:, ::1] table = table_arr
    beta_arr = np.empty(M, dtype=np.float64)
    cdef double[::1] beta = beta_arr
    _betas(alpha, beta, M)
    cdef double[::1] p = partial_sums(alpha, M)
    q_arr = np.ones(M, dtype=np.float64)
    cdef double[::1] q = q_arr
    cdef Py_ssize_t k, n, width
    cdef double ph, bb, peak, aq
    for n in range(M):
        table[0, n] = p[n]
    for k in range(1, K + 1):
        width = M - k
        for n in range(width):
            if weniger:
                ph = (n + b + 2 * k - 2) / (n + b)
            elif k == 1:
                ph = 1.0
            else:
                ph = _ipow(n + b + 1.0, k - 2) * (n + k + b) / _ipow(n + b, k - 1)
            bb = beta[n + k]
            p[n] = bb * p[n] + ph * p[n + 1]
            q[n] = bb * q[n] + ph * q[n + 1]
        peak = 0.0
        for n in range(width):
            aq = fabs(q[n])
            if aq > peak:
                peak = aq
        if peak > 0.0:
            for n in range(width):
                p[n] = p[n] / peak
                q[n] = q[n] / peak
        for n in range(width):
            if q[n] == 0.0:
                table[k, n] = NAN
            else:
                table[k, n] = p[n] / q[n]
    return table_arr
