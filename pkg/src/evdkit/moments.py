"""Moment engine: mean, variance, skewness and kurtosis of every family.

Closed forms are used wherever a family is a log-gamma transform
(EGa, GTIEV3, GLIV) or has gamma-function raw moments (GEV).  TEV and
TCEV are finite (signed) mixtures of Gumbel laws and go through raw
moments; EGu and GGu are integrated numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy import integrate

from . import special
from ._family import Family
from .errors import NonConvergenceError

LN2 = math.log(2.0)
_QUAD_LIMIT = 200
_QUAD_RTOL = 1e-11
# |alpha| below this is treated as the Gumbel limit in the GEV formulas
# (Gamma-difference cancellation grows like eps / alpha**2)
_GEV_ZERO = 5e-6


@dataclass(frozen=True)
class MomentSummary:
    """First four moment characteristics; ``None`` marks an undefined value.

    ``kurtosis`` is the ordinary (non-excess) coefficient, 3 for the normal.
    """

    mean: Optional[float]
    variance: Optional[float]
    skewness: Optional[float]
    kurtosis: Optional[float]

    @property
    def std(self) -> Optional[float]:
        return None if self.variance is None else math.sqrt(self.variance)

    def as_dict(self) -> dict:
        return {
            "mean": self.mean,
            "variance": self.variance,
            "skewness": self.skewness,
            "kurtosis": self.kurtosis,
        }


def _from_cumulants(k1, k2, k3, k4) -> MomentSummary:
    return MomentSummary(k1, k2, k3 / k2**1.5, 3.0 + k4 / (k2 * k2))


def _from_raw(raw, mu=0.0, sigma=1.0) -> MomentSummary:
    """Summary of mu + sigma*Z given raw moments E Z^1..E Z^4."""
    m1, m2, m3, m4 = raw
    var = m2 - m1 * m1
    c3 = m3 - 3.0 * m1 * m2 + 2.0 * m1**3
    c4 = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1**4
    return MomentSummary(mu + sigma * m1, sigma * sigma * var, c3 / var**1.5, c4 / (var * var))


def _quad(f, a, b, points=None):
    val, err, info = integrate.quad(f, a, b, limit=_QUAD_LIMIT, epsrel=_QUAD_RTOL, epsabs=0.0, points=points, full_output=1)[:3]
    if not math.isfinite(val) or err > 1e-7 * max(1.0, abs(val)):
        raise NonConvergenceError(f"moment quadrature failed on ({a}, {b}): value={val}, abserr={err}")
    return val


@lru_cache(maxsize=None)
def gamma_derivative_at_one(n: int) -> float:
    """n-th derivative of the gamma function at 1, by quadrature.

    Gamma^(n)(1) = int_0^inf (ln t)^n exp(-t) dt.
    """
    if n == 0:
        return 1.0
    f = lambda t: math.log(t) ** n * math.exp(-t)
    return _quad(f, 0.0, 1.0) + _quad(f, 1.0, 60.0) + _quad(f, 60.0, np.inf)


def gumbel_raw_moments(mu: float = 0.0, sigma: float = 1.0, order: int = 4) -> np.ndarray:
    """E X^n, n = 1..order, for X ~ EV(mu, sigma).

    With Z = -ln T, T ~ Exp(1), E Z^k = (-1)^k Gamma^(k)(1); the binomial
    expansion of (mu + sigma Z)^n gives the rest.
    """
    ez = [(-1.0) ** k * gamma_derivative_at_one(k) for k in range(order + 1)]
    out = np.empty(order)
    for n in range(1, order + 1):
        out[n - 1] = sum(math.comb(n, k) * mu ** (n - k) * sigma**k * ez[k] for k in range(n + 1))
    return out


def _ev(mu, sigma):
    pg = special.polygamma
    k1 = mu + sigma * special.EULER_GAMMA
    return _from_cumulants(k1, sigma**2 * pg(1, 1.0), -(sigma**3) * pg(2, 1.0), sigma**4 * pg(3, 1.0))


def _gev(mu, sigma, a):
    if abs(a) < _GEV_ZERO:
        return _ev(mu, sigma)
    g = [None] + [math.gamma(1.0 - k * a) if k * a < 1.0 else None for k in range(1, 5)]
    mean = mu + sigma * (g[1] - 1.0) / a if g[1] is not None else None
    var = skew = kurt = None
    if g[2] is not None:
        v = g[2] - g[1] ** 2
        var = sigma * sigma * v / (a * a)
        if g[3] is not None:
            skew = math.copysign(1.0, a) * (g[3] - 3.0 * g[1] * g[2] + 2.0 * g[1] ** 3) / v**1.5
        if g[4] is not None:
            kurt = (g[4] - 4.0 * g[1] * g[3] + 6.0 * g[1] ** 2 * g[2] - 3.0 * g[1] ** 4) / (v * v)
    return MomentSummary(mean, var, skew, kurt)


def _ega(mu, sigma, a):
    # X = mu - sigma ln Y, Y ~ Gamma(a)
    pg = special.polygamma
    return _from_cumulants(mu - sigma * pg(0, a), sigma**2 * pg(1, a), -(sigma**3) * pg(2, a), sigma**4 * pg(3, a))


def _gtiev3(mu, sigma, a):
    # X = mu - sigma ln a - sigma ln G1 + sigma ln Ga with independent gammas
    pg = special.polygamma
    k1 = mu - sigma * math.log(a) - sigma * pg(0, 1.0) + sigma * pg(0, a)
    k2 = sigma**2 * (pg(1, a) + pg(1, 1.0))
    k3 = sigma**3 * (pg(2, a) - pg(2, 1.0))
    k4 = sigma**4 * (pg(3, a) + pg(3, 1.0))
    return _from_cumulants(k1, k2, k3, k4)


def _gliv(mu, sigma, a, b):
    # X = mu + sigma ln(a/b) - sigma ln Ga + sigma ln Gb
    pg = special.polygamma
    k1 = mu + sigma * (math.log(a / b) - pg(0, a) + pg(0, b))
    k2 = sigma**2 * (pg(1, a) + pg(1, b))
    k3 = sigma**3 * (pg(2, b) - pg(2, a))
    k4 = sigma**4 * (pg(3, a) + pg(3, b))
    return _from_cumulants(k1, k2, k3, k4)


def _tev(mu, sigma, a):
    # F = (1 + a) G - a G^2 and G^2 is the Gumbel cdf shifted by ln 2
    raw = (1.0 + a) * gumbel_raw_moments(0.0, 1.0) - a * gumbel_raw_moments(LN2, 1.0)
    return _from_raw(raw, mu, sigma)


def _tcev(mu, sigma, mu1, sigma1, a):
    raw = (1.0 - a) * gumbel_raw_moments(0.0, 1.0) + a * gumbel_raw_moments((mu1 - mu) / sigma, sigma1 / sigma)
    return _from_raw(raw, mu, sigma)


def _egu_raw(a):
    # E Z^n = int_0^1 a (-ln(-ln y))^n (1 - y)^(a - 1) dy, Z standard EGu
    out = []
    for n in range(1, 5):
        f = lambda y, n=n: a * (-math.log(-math.log(y))) ** n * (1.0 - y) ** (a - 1.0) if 0.0 < y < 1.0 else 0.0
        out.append(_quad(f, 0.0, 0.5) + _quad(f, 0.5, 1.0))
    return out


def _ggu_quantile_std(p, a):
    w = math.exp(math.log((1.0 - p) / p) / a)
    return -math.log(math.log1p(w))


def _ggu_raw(a):
    # E Z^n = int_0^1 Q(p)^n dp on the standard quantile function
    out = []
    for n in range(1, 5):
        f = lambda p, n=n: _ggu_quantile_std(p, a) ** n if 0.0 < p < 1.0 else 0.0
        out.append(_quad(f, 0.0, 0.5) + _quad(f, 0.5, 1.0))
    return out


def compute(family: Family, params) -> MomentSummary:
    """Moments of ``family`` at an already validated parameter tuple."""
    p = [float(v) for v in params]
    if family is Family.EV:
        return _ev(*p)
    if family is Family.GEV:
        return _gev(*p)
    if family is Family.EGu:
        return _from_raw(_egu_raw(p[2]), p[0], p[1])
    if family is Family.TEV:
        return _tev(*p)
    if family is Family.GTIEV3:
        return _gtiev3(*p)
    if family is Family.EGa:
        return _ega(*p)
    if family is Family.GGu:
        return _from_raw(_ggu_raw(p[2]), p[0], p[1])
    if family is Family.GLIV:
        return _gliv(*p)
    if family is Family.TCEV:
        return _tcev(*p)
    raise ValueError(f"unsupported family {family!r}")
