# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled numerical kernels: per-family log-density, cdf and AD sums.

Mirrors ``evdkit._kernels_py`` function for function; the test-suite
checks both backends against each other.
"""

import numpy as np

from libc.math cimport exp, log, log1p, expm1, lgamma, fabs, INFINITY, isinf

DEF MAX_ITER = 500
DEF EPS = 1e-16
DEF FPMIN = 1e-300
DEF LN2 = 0.6931471805599453

cdef enum:
    EV = 0
    GEV = 1
    EGU = 2
    TEV = 3
    GTIEV3 = 4
    EGA = 5
    GGU = 6
    GLIV = 7
    TCEV = 8


cdef inline double _softplus(double u) nogil:
    if u > 0.0:
        return u + log1p(exp(-u))
    return log1p(exp(u))


cdef inline double _logaddexp(double a, double b) nogil:
    cdef double m
    if a == -INFINITY:
        return b
    if b == -INFINITY:
        return a
    m = a if a > b else b
    return m + log1p(exp(-fabs(a - b)))


cdef inline double _log1m_gumbel(double z) nogil:
    # log(1 - exp(-exp(-z)))
    if z > 700.0:
        return -z
    if z > 0.0:
        return log(-expm1(-exp(-z)))
    return log1p(-exp(-exp(-z)))


cdef inline double _log_expm1_exp(double z) nogil:
    # log(expm1(exp(-z)))
    cdef double t
    if z > 700.0:
        return -z
    t = exp(-z)
    if t > 30.0:
        return t + log1p(-exp(-t))
    return log(expm1(t))


cdef double _gammaincc(double s, double x) nogil:
    cdef double lpre, ap, term, total, b, c, d, h, an, delta
    cdef int i
    if x <= 0.0:
        return 1.0
    if isinf(x):
        return 0.0
    lpre = -x + s * log(x) - lgamma(s)
    if x < s + 1.0:
        ap = s
        term = 1.0 / s
        total = term
        for i in range(MAX_ITER):
            ap += 1.0
            term *= x / ap
            total += term
            if fabs(term) < fabs(total) * EPS:
                break
        h = 1.0 - total * exp(lpre)
    else:
        b = x + 1.0 - s
        c = 1.0 / FPMIN
        d = 1.0 / b
        h = d
        for i in range(1, MAX_ITER + 1):
            an = -i * (i - s)
            b += 2.0
            d = an * d + b
            if fabs(d) < FPMIN:
                d = FPMIN
            c = b + an / c
            if fabs(c) < FPMIN:
                c = FPMIN
            d = 1.0 / d
            delta = d * c
            h *= delta
            if fabs(delta - 1.0) < EPS:
                break
        h = exp(lpre) * h
    if h < 0.0:
        return 0.0
    if h > 1.0:
        return 1.0
    return h


cdef double _beta_cf(double a, double b, double w) nogil:
    cdef double qab = a + b, qap = a + 1.0, qam = a - 1.0
    cdef double c = 1.0, d, h, aa, delta
    cdef int m, m2
    d = 1.0 - qab * w / qap
    if fabs(d) < FPMIN:
        d = FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * w / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if fabs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if fabs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * w / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if fabs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if fabs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if fabs(delta - 1.0) < EPS:
            break
    return h


cdef double _betainc(double a, double b, double w, double wc) nogil:
    cdef double lbt, v
    if w <= 0.0:
        return 0.0
    if wc <= 0.0:
        return 1.0
    lbt = a * log(w) + b * log(wc) - (lgamma(a) + lgamma(b) - lgamma(a + b))
    if w < (a + 1.0) / (a + b + 2.0):
        v = exp(lbt) * _beta_cf(a, b, w) / a
    else:
        v = 1.0 - exp(lbt) * _beta_cf(b, a, wc) / b
    if v < 0.0:
        return 0.0
    if v > 1.0:
        return 1.0
    return v


cdef inline double _ev_logpdf(double x, double mu, double sigma) nogil:
    cdef double z = (x - mu) / sigma
    return -log(sigma) - z - exp(-z)


cdef struct Consts:
    double ls
    double la
    double lc


cdef Consts _consts(int code, double[:] p):
    cdef Consts k
    k.ls = log(p[1])
    k.la = 0.0
    k.lc = 0.0
    if code == EGU or code == GGU:
        k.la = log(p[2])
    elif code == GTIEV3:
        k.la = log(p[2])
    elif code == EGA:
        k.lc = lgamma(p[2])
    elif code == GLIV:
        k.la = log(p[2] / p[3])
        k.lc = lgamma(p[2]) + lgamma(p[3]) - lgamma(p[2] + p[3])
    elif code == TCEV:
        k.la = log(p[4]) if p[4] > 0.0 else -INFINITY
        k.lc = log1p(-p[4]) if p[4] < 1.0 else -INFINITY
    return k


cdef double _logpdf1(int code, double[:] p, Consts k, double x) nogil:
    cdef double z, a, s, lz, t, lw, core
    if code == TCEV:
        return _logaddexp(k.lc + _ev_logpdf(x, p[0], p[1]), k.la + _ev_logpdf(x, p[2], p[3]))
    z = (x - p[0]) / p[1]
    if code == EV:
        return -k.ls - z - exp(-z)
    a = p[2]
    if code == GEV:
        if a == 0.0:
            return -k.ls - z - exp(-z)
        s = 1.0 + a * z
        if s <= 0.0:
            return -INFINITY
        lz = log1p(a * z)
        return -k.ls - (1.0 + 1.0 / a) * lz - exp(-lz / a)
    if code == EGU:
        return k.la - k.ls - z - exp(-z) + (a - 1.0) * _log1m_gumbel(z)
    if code == TEV:
        t = exp(-z)
        if a == 1.0:
            return -k.ls - z - t + LN2 + _log1m_gumbel(z)
        return -k.ls - z - t + log((1.0 - a) + 2.0 * a * (-expm1(-t)))
    if code == GTIEV3:
        return -k.ls - z - (a + 1.0) * _softplus(-z - k.la)
    if code == EGA:
        return -k.lc - k.ls - a * z - exp(-z)
    if code == GGU:
        t = exp(-z)
        if isinf(t):
            return -INFINITY
        lw = _log_expm1_exp(z)
        if t > 30.0:
            core = -a * t - (a + 1.0) * (lw - t)
        else:
            core = t - (a + 1.0) * lw
        return k.la - k.ls - z + core - 2.0 * _softplus(-a * lw)
    if code == GLIV:
        return a * k.la - k.ls - k.lc - a * z - (a + p[3]) * _softplus(k.la - z)
    return -INFINITY


cdef double _cdf1(int code, double[:] p, Consts k, double x) nogil:
    cdef double z, a, s, t, r
    z = (x - p[0]) / p[1]
    if code == EV:
        return exp(-exp(-z))
    if code == TCEV:
        return (1.0 - p[4]) * exp(-exp(-z)) + p[4] * exp(-exp(-(x - p[2]) / p[3]))
    a = p[2]
    if code == GEV:
        if a == 0.0:
            return exp(-exp(-z))
        s = 1.0 + a * z
        if s <= 0.0:
            return 0.0 if a > 0.0 else 1.0
        return exp(-exp(-log1p(a * z) / a))
    if code == EGU:
        return -expm1(a * _log1m_gumbel(z))
    if code == TEV:
        t = exp(-z)
        return exp(-t) * (1.0 + a * (-expm1(-t)))
    if code == GTIEV3:
        return exp(-a * _softplus(-z - k.la))
    if code == EGA:
        return _gammaincc(a, exp(-z))
    if code == GGU:
        return 1.0 / (1.0 + exp(a * _log_expm1_exp(z)))
    if code == GLIV:
        r = exp(k.la - z)
        if isinf(r):
            return 0.0
        return _betainc(p[3], a, 1.0 / (1.0 + r), r / (1.0 + r))
    return 0.0


def _as_array(x):
    return np.ascontiguousarray(x, dtype=np.float64)


def logpdf(int code, params, x):
    cdef double[:] p = _as_array(params)
    arr = _as_array(x)
    flat = arr.reshape(-1)
    cdef double[:] xv = flat
    out = np.empty(flat.shape[0], dtype=np.float64)
    cdef double[:] ov = out
    cdef Consts k = _consts(code, p)
    cdef Py_ssize_t i, n = xv.shape[0]
    for i in range(n):
        ov[i] = _logpdf1(code, p, k, xv[i])
    return out.reshape(arr.shape)


def loglik(int code, params, x):
    cdef double[:] p = _as_array(params)
    cdef double[:] xv = _as_array(x).reshape(-1)
    cdef Consts k = _consts(code, p)
    cdef Py_ssize_t i, n = xv.shape[0]
    cdef double total = 0.0, v
    for i in range(n):
        v = _logpdf1(code, p, k, xv[i])
        if v == -INFINITY:
            return -INFINITY
        total += v
    return total


def cdf(int code, params, x):
    cdef double[:] p = _as_array(params)
    arr = _as_array(x)
    flat = arr.reshape(-1)
    cdef double[:] xv = flat
    out = np.empty(flat.shape[0], dtype=np.float64)
    cdef double[:] ov = out
    cdef Consts k = _consts(code, p)
    cdef Py_ssize_t i, n = xv.shape[0]
    for i in range(n):
        ov[i] = _cdf1(code, p, k, xv[i])
    return out.reshape(arr.shape)


def ad_stats(z):
    """Right-tail Anderson-Darling statistics (ADR, AD2R) of sorted z."""
    cdef double[:] zv = _as_array(z)
    cdef Py_ssize_t i, n = zv.shape[0]
    cdef double sz = 0.0, s1 = 0.0, s2 = 0.0, slog = 0.0, w, zr
    for i in range(n):
        sz += zv[i]
        slog += log1p(-zv[i])
        zr = zv[n - 1 - i]
        w = 2.0 * (i + 1) - 1.0
        s1 += w * log1p(-zr)
        s2 += w / (1.0 - zr)
    return n / 2.0 - 2.0 * sz - s1 / n, 2.0 * slog + s2 / n
