"""Pure-Python float64 kernels.

Mirror of the compiled extension, operation for operation: same evaluation
order, same loop-multiply integer powers, same per-level rescaling, same
explicit zero-denominator guards.  Results are bitwise identical to the
compiled kernels; only speed differs.
"""

import numpy as np


def _ipow(base, e):
    r = 1.0
    for _ in range(e):
        r = r * base
    return r


def partial_sums(alpha, count):
    out = np.empty(count, dtype=np.float64)
    s = 0.0
    for n in range(count):
        a = float(alpha[n])
        if n % 2 == 0:
            s = s + a
        else:
            s = s - a
        out[n] = s
    return out


def _betas(alpha, M):
    beta = np.full(M, np.nan, dtype=np.float64)
    if float(alpha[0]) != 0.0:
        beta[0] = float(alpha[1]) / float(alpha[0])
    for j in range(1, M):
        beta[j] = float(alpha[j + 1]) / float(alpha[j])
    return beta


def method_s_table(alpha, K):
    """Method S table from M+1 terms; returns a (K+1, M) array, NaN padded."""
    M = alpha.shape[0] - 1
    table = np.full((K + 1, M), np.nan, dtype=np.float64)
    beta = _betas(alpha, M)
    table[0, :] = partial_sums(alpha, M)
    for k in range(1, K + 1):
        for n in range(M - k):
            t = (n + 2 * k - 1) / ((n + 1) * beta[n + 1])
            den = 1.0 + t
            if den == 0.0:
                table[k, n] = np.nan
            else:
                table[k, n] = (table[k - 1, n] + t * table[k - 1, n + 1]) / den
    return table


def levin_weniger_table(alpha, K, weniger, b):
    """Levin/Weniger table via the p/q recurrences, rescaled per level.

    Each completed level is divided by max |q| to keep the recurrences away
    from overflow; the factor cancels in p/q.
    """
    M = alpha.shape[0] - 1
    table = np.full((K + 1, M), np.nan, dtype=np.float64)
    beta = _betas(alpha, M)
    p = partial_sums(alpha, M)
    q = np.ones(M, dtype=np.float64)
    table[0, :] = p
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
            aq = abs(q[n])
            if aq > peak:
                peak = aq
        if peak > 0.0:
            for n in range(width):
                p[n] = p[n] / peak
                q[n] = q[n] / peak
        for n in range(width):
            if q[n] == 0.0:
                table[k, n] = np.nan
            else:
                table[k, n] = p[n] / q[n]
    return table
