"""Real-valued special functions used by the distribution and moment code.

Everything here is scalar, pure Python and dependency free so that the
compiled kernels have a readable reference to be checked against.

Algorithms
----------
log_gamma
    Lanczos approximation (g=7, 9 terms) below 10, Stirling series above.
polygamma
    Upward recurrence to x >= 15 followed by the Bernoulli-number
    asymptotic expansion.
upper_incomplete_gamma_regularized
    Power series for P when x < s + 1, modified-Lentz continued fraction
    for Q otherwise.
incomplete_beta_regularized
    Modified-Lentz continued fraction with the usual symmetry swap.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import DomainError

EULER_GAMMA = 0.57721566490153286060651209008240243
ZETA3 = 1.20205690315959428539973816151144999
LOG_SQRT_2PI = 0.91893853320467274178032973640561764

MAX_ITER = 500
_EPS = 1e-16
_FPMIN = 1e-300

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# B_2, B_4, ..., B_20
_BERNOULLI = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
)


@dataclass(frozen=True)
class SpecialFnResult:
    """Value of an iterative evaluation plus its convergence record.

    ``converged`` is False only when the iteration cap was exceeded.
    """

    value: float
    converged: bool
    iterations: int


def _check_positive(name, x):
    if not (x > 0.0) or math.isnan(x):
        raise DomainError(f"{name} must be > 0, got {x!r}")


def log_gamma(x: float) -> float:
    """Natural logarithm of the gamma function for x > 0."""
    x = float(x)
    _check_positive("x", x)
    if math.isinf(x):
        return math.inf
    shift = 0.0
    # lnG(x) = lnG(x+1) - ln x keeps Lanczos on its accurate range
    while x < 0.5:
        shift -= math.log(x)
        x += 1.0
    if x >= 10.0:
        inv = 1.0 / x
        inv2 = inv * inv
        series = inv * (
            1.0 / 12.0
            - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0)))
        )
        return shift + (x - 0.5) * math.log(x) - x + LOG_SQRT_2PI + series
    xm1 = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, 9):
        acc += _LANCZOS[i] / (xm1 + i)
    t = xm1 + _LANCZOS_G + 0.5
    return shift + LOG_SQRT_2PI + (xm1 + 0.5) * math.log(t) - t + math.log(acc)


def log_beta(a: float, b: float) -> float:
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)


def polygamma(n: int, x: float) -> float:
    """Polygamma function of order ``n`` in {0, 1, 2, 3}; n=0 is digamma."""
    if n not in (0, 1, 2, 3):
        raise DomainError(f"polygamma order must be 0..3, got {n!r}")
    x = float(x)
    _check_positive("x", x)
    acc = 0.0
    if n == 0:
        while x < 15.0:
            acc -= 1.0 / x
            x += 1.0
        inv2 = 1.0 / (x * x)
        series = 0.0
        xp = inv2
        for k, b2k in enumerate(_BERNOULLI, start=1):
            series += b2k / (2 * k) * xp
            xp *= inv2
        return acc + math.log(x) - 0.5 / x - series

    nfact = math.factorial(n)
    sign = -1.0 if n % 2 == 0 else 1.0  # (-1)**(n+1)
    # psi_n(x) = psi_n(x+1) - (-1)**n n! / x**(n+1)
    while x < 15.0:
        acc += sign * nfact / x ** (n + 1)
        x += 1.0
    series = math.factorial(n - 1) / x**n + nfact / (2.0 * x ** (n + 1))
    for k, b2k in enumerate(_BERNOULLI, start=1):
        term = b2k * math.factorial(2 * k + n - 1) / (math.factorial(2 * k) * x ** (2 * k + n))
        series += term
        if abs(term) < 1e-18 * abs(series):
            break
    return acc + sign * series


def digamma(x: float) -> float:
    return polygamma(0, x)


def _gamma_series(s, x, log_prefactor):
    ap = s
    term = 1.0 / s
    total = term
    for it in range(1, MAX_ITER + 1):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            return SpecialFnResult(total * math.exp(log_prefactor), True, it)
    return SpecialFnResult(total * math.exp(log_prefactor), False, MAX_ITER)


def _gamma_cf(s, x, log_prefactor):
    b = x + 1.0 - s
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, MAX_ITER + 1):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return SpecialFnResult(math.exp(log_prefactor) * h, True, i)
    return SpecialFnResult(math.exp(log_prefactor) * h, False, MAX_ITER)


def upper_incomplete_gamma_regularized(s: float, x: float, full_output: bool = False):
    """Regularized upper incomplete gamma Q(s, x) = Gamma(s, x) / Gamma(s).

    Parameters
    ----------
    s : float
        Shape, s > 0.
    x : float
        Lower integration limit, x >= 0.
    full_output : bool
        Return a :class:`SpecialFnResult` instead of a bare float.
    """
    s = float(s)
    x = float(x)
    _check_positive("s", s)
    if not (x >= 0.0):
        raise DomainError(f"x must be >= 0, got {x!r}")
    if x == 0.0:
        res = SpecialFnResult(1.0, True, 0)
    elif math.isinf(x):
        res = SpecialFnResult(0.0, True, 0)
    else:
        log_prefactor = -x + s * math.log(x) - log_gamma(s)
        if x < s + 1.0:
            p = _gamma_series(s, x, log_prefactor)
            res = SpecialFnResult(min(1.0, max(0.0, 1.0 - p.value)), p.converged, p.iterations)
        else:
            q = _gamma_cf(s, x, log_prefactor)
            res = SpecialFnResult(min(1.0, max(0.0, q.value)), q.converged, q.iterations)
    if not res.converged:
        warnings.warn(f"incomplete gamma did not converge for s={s}, x={x}", RuntimeWarning, stacklevel=2)
    return res if full_output else res.value


def lower_incomplete_gamma_regularized(s: float, x: float) -> float:
    return 1.0 - upper_incomplete_gamma_regularized(s, x)


def _beta_cf(a, b, w):
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * w / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * w / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * w / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h, True, m
    return h, False, MAX_ITER


def _betainc(a, b, w, wc):
    """I_w(a, b) with ``wc`` = 1 - w supplied separately for accuracy."""
    if w <= 0.0:
        return SpecialFnResult(0.0, True, 0)
    if wc <= 0.0:
        return SpecialFnResult(1.0, True, 0)
    log_bt = a * math.log(w) + b * math.log(wc) - log_beta(a, b)
    if w < (a + 1.0) / (a + b + 2.0):
        h, ok, it = _beta_cf(a, b, w)
        value = math.exp(log_bt) * h / a
    else:
        h, ok, it = _beta_cf(b, a, wc)
        value = 1.0 - math.exp(log_bt) * h / b
    return SpecialFnResult(min(1.0, max(0.0, value)), ok, it)


def incomplete_beta_regularized(a: float, b: float, w: float, full_output: bool = False):
    """Regularized incomplete beta ratio I_w(a, b) = B_w(a, b) / B(a, b)."""
    a = float(a)
    b = float(b)
    w = float(w)
    _check_positive("a", a)
    _check_positive("b", b)
    if not (0.0 <= w <= 1.0):
        raise DomainError(f"w must lie in [0, 1], got {w!r}")
    res = _betainc(a, b, w, 1.0 - w)
    if not res.converged:
        warnings.warn(f"incomplete beta did not converge for a={a}, b={b}, w={w}", RuntimeWarning, stacklevel=2)
    return res if full_output else res.value


def incomplete_beta_complement(a: float, b: float, w: float, wc: float) -> float:
    """I_w(a, b) when the caller can supply 1 - w without cancellation."""
    return _betainc(float(a), float(b), float(w), float(wc)).value
