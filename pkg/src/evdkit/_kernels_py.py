"""Pure numpy implementation of the numerical kernels.

Same API as the compiled ``_kernels`` extension; selected automatically
when the extension is unavailable (or ``EVDKIT_PURE_PYTHON`` is set).
Family codes follow the declaration order of :class:`evdkit.Family`.
"""

import math

import numpy as np

from . import special

EV, GEV, EGU, TEV, GTIEV3, EGA, GGU, GLIV, TCEV = range(9)


def _softplus(u):
    # log(1 + exp(u)) without overflow
    return np.logaddexp(0.0, u)


def _log1m_gumbel(z):
    """log(1 - exp(-exp(-z))), accurate in both tails."""
    out = np.empty_like(z)
    right = z > 0.0
    with np.errstate(over="ignore"):
        t = np.exp(-z)
    tr = t[right]
    out[right] = np.where(z[right] > 700.0, -z[right], np.log(-np.expm1(-np.where(tr > 0, tr, 1.0))))
    out[~right] = np.log1p(-np.exp(-t[~right]))
    return out


def _log_expm1_exp(z):
    """log(expm1(exp(-z))) used by the GGu family."""
    out = np.empty_like(z)
    with np.errstate(over="ignore"):
        t = np.exp(-z)
    big = t > 30.0
    small = z > 700.0
    mid = ~(big | small)
    out[big] = t[big] + np.log1p(-np.exp(-t[big]))
    out[small] = -z[small]
    out[mid] = np.log(np.expm1(t[mid]))
    return out


def _ev_logpdf(x, mu, sigma):
    z = (x - mu) / sigma
    with np.errstate(over="ignore"):
        return -math.log(sigma) - z - np.exp(-z)


def logpdf(code, params, x):
    x = np.asarray(x, dtype=float)
    p = [float(v) for v in params]
    mu, sigma = p[0], p[1]
    if code == TCEV:
        a = p[4]
        l0 = (math.log1p(-a) if a < 1.0 else -math.inf) + _ev_logpdf(x, mu, sigma)
        l1 = (math.log(a) if a > 0.0 else -math.inf) + _ev_logpdf(x, p[2], p[3])
        return np.logaddexp(l0, l1)
    z = (x - mu) / sigma
    ls = math.log(sigma)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        if code == EV:
            return -ls - z - np.exp(-z)
        a = p[2]
        if code == GEV:
            if a == 0.0:
                return -ls - z - np.exp(-z)
            s = 1.0 + a * z
            lz = np.log1p(a * np.where(s > 0, z, 0.0))
            out = -ls - (1.0 + 1.0 / a) * lz - np.exp(-lz / a)
            return np.where(s > 0, out, -np.inf)
        if code == EGU:
            return math.log(a) - ls - z - np.exp(-z) + (a - 1.0) * _log1m_gumbel(z)
        if code == TEV:
            t = np.exp(-z)
            if a == 1.0:
                tail = math.log(2.0) + _log1m_gumbel(z)
            else:
                tail = np.log((1.0 - a) + 2.0 * a * (-np.expm1(-t)))
            return -ls - z - t + tail
        if code == GTIEV3:
            return -ls - z - (a + 1.0) * _softplus(-z - math.log(a))
        if code == EGA:
            return -special.log_gamma(a) - ls - a * z - np.exp(-z)
        if code == GGU:
            t = np.exp(-z)
            lw = _log_expm1_exp(z)
            big = t > 30.0
            core = np.where(big, -a * t - (a + 1.0) * (lw - np.where(big, t, 0.0)), t - (a + 1.0) * lw)
            core = np.where(np.isinf(t), -np.inf, core)
            return math.log(a) - ls - z + core - 2.0 * _softplus(-a * lw)
        if code == GLIV:
            b = p[3]
            lb = special.log_beta(a, b)
            return a * math.log(a / b) - ls - lb - a * z - (a + b) * _softplus(math.log(a / b) - z)
    raise ValueError(f"unknown family code {code}")


def loglik(code, params, x):
    return float(np.sum(logpdf(code, params, x)))


def cdf(code, params, x):
    x = np.asarray(x, dtype=float)
    p = [float(v) for v in params]
    mu, sigma = p[0], p[1]
    z = (x - mu) / sigma
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        if code == EV:
            return np.exp(-np.exp(-z))
        if code == TCEV:
            a = p[4]
            z1 = (x - p[2]) / p[3]
            return (1.0 - a) * np.exp(-np.exp(-z)) + a * np.exp(-np.exp(-z1))
        a = p[2]
        if code == GEV:
            if a == 0.0:
                return np.exp(-np.exp(-z))
            s = 1.0 + a * z
            lz = np.log1p(a * np.where(s > 0, z, 0.0))
            out = np.exp(-np.exp(-lz / a))
            return np.where(s > 0, out, 0.0 if a > 0 else 1.0)
        if code == EGU:
            return -np.expm1(a * _log1m_gumbel(z))
        if code == TEV:
            t = np.exp(-z)
            return np.exp(-t) * (1.0 + a * (-np.expm1(-t)))
        if code == GTIEV3:
            return np.exp(-a * _softplus(-z - math.log(a)))
        if code == EGA:
            t = np.exp(-z)
            return np.array([special.upper_incomplete_gamma_regularized(a, ti) for ti in t.ravel()]).reshape(t.shape)
        if code == GGU:
            lw = _log_expm1_exp(z)
            return 1.0 / (1.0 + np.exp(a * lw))
        if code == GLIV:
            b = p[3]
            r = np.exp(math.log(a / b) - z)
            u = 1.0 / (1.0 + r)
            uc = r / (1.0 + r)
            uc = np.where(np.isnan(uc), 1.0, uc)
            flat = [special.incomplete_beta_complement(b, a, ui, uci) for ui, uci in zip(u.ravel(), uc.ravel())]
            return np.array(flat).reshape(u.shape)
    raise ValueError(f"unknown family code {code}")


def ad_stats(z):
    """Right-tail Anderson-Darling statistics (ADR, AD2R) of sorted z."""
    z = np.asarray(z, dtype=float)
    n = z.size
    i = np.arange(1, n + 1)
    rev = z[::-1]  # z_(n+1-i)
    adr = n / 2.0 - 2.0 * z.sum() - np.sum((2 * i - 1) * np.log1p(-rev)) / n
    ad2r = 2.0 * np.sum(np.log1p(-z)) + np.sum((2 * i - 1) / (1.0 - rev)) / n
    return float(adr), float(ad2r)
