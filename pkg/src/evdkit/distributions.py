"""The nine identifiable Gumbel generalizations.

Every family is a location-scale law with standardized variable
``z = (x - mu) / sigma`` and Gumbel kernel ``G = exp(-exp(-z))``:

========  =============================================  ====================
family    cdf                                            shape space
========  =============================================  ====================
EV        G                                              none
GEV       exp(-(1 + a z)^(-1/a))                         a real (0 = EV)
EGu       1 - (1 - G)^a                                  a > 0
TEV       G (1 + a (1 - G))                              -1 < a <= 1
GTIEV3    (1 + exp(-z) / a)^(-a)                         a > 0
EGa       Q(a, exp(-z))                                  a > 0
GGu       1 / (1 + (exp(exp(-z)) - 1)^a)                 a > 0
GLIV      I_u(b, a), u = 1 / (1 + (a / b) exp(-z))       a, b > 0
TCEV      (1 - a) G + a G1                               0 < a < 0.5
========  =============================================  ====================

Q is the regularized upper incomplete gamma and I the regularized
incomplete beta.  TCEV mixes two Gumbel laws, the second with its own
location ``mu1`` and scale ``sigma1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import optimize

from . import moments as _moments
from ._core import kernels
from ._family import Family
from .errors import DomainError, InvalidSpecError, NonConvergenceError
from .moments import MomentSummary

__all__ = [
    "Family",
    "DistributionSpec",
    "MomentSummary",
    "pdf",
    "logpdf",
    "cdf",
    "sf",
    "quantile",
    "sample",
    "moments",
    "reduce_to_identifiable",
    "REDUCIBLE_FAMILIES",
    "PRESETS",
    "TABLE3_PRESETS",
]

# TEV quantile falls back to the Gumbel closed form below this |alpha|
_TEV_ZERO = 1e-10
_ROOT_XTOL = 1e-12
_MAX_EXPAND = 200


@dataclass(frozen=True)
class DistributionSpec:
    """A family tag plus a validated parameter vector.

    Parameters
    ----------
    family : Family or str
        Family name, case-insensitive.
    params : sequence of float
        ``(mu, sigma)`` followed by the shape parameters; GLIV takes
        ``(mu, sigma, alpha, beta)`` and TCEV ``(mu, sigma, mu1, sigma1, alpha)``.

    Raises
    ------
    InvalidSpecError
        If the parameters fall outside the family's parameter space.
    """

    family: Family
    params: tuple

    def __post_init__(self):
        try:
            fam = Family.parse(self.family)
        except ValueError as exc:
            raise InvalidSpecError(str(exc)) from None
        try:
            params = tuple(float(v) for v in self.params)
        except (TypeError, ValueError):
            raise InvalidSpecError(f"parameters must be real numbers, got {self.params!r}") from None
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "params", params)
        _validate(fam, params)

    @classmethod
    def of(cls, family, *params) -> "DistributionSpec":
        """Shorthand: ``DistributionSpec.of("gev", 0, 1, 0.1)``."""
        return cls(family, params)

    @property
    def mu(self) -> float:
        return self.params[0]

    @property
    def sigma(self) -> float:
        return self.params[1]

    @property
    def param_dict(self) -> dict:
        return dict(zip(self.family.param_names, self.params))

    def __str__(self):
        return f"{self.family.value}({', '.join(f'{v:g}' for v in self.params)})"


def _validate(fam: Family, p: tuple) -> None:
    if len(p) != fam.n_params:
        raise InvalidSpecError(f"{fam.value} takes {fam.n_params} parameters {fam.param_names}, got {len(p)}")
    if not all(math.isfinite(v) for v in p):
        raise InvalidSpecError(f"{fam.value} parameters must be finite, got {p}")
    if not p[1] > 0.0:
        raise InvalidSpecError(f"sigma must be > 0, got {p[1]}")
    if fam in (Family.EGu, Family.GTIEV3, Family.EGa, Family.GGu) and not p[2] > 0.0:
        raise InvalidSpecError(f"{fam.value} requires alpha > 0, got {p[2]}")
    if fam is Family.TEV and not (-1.0 < p[2] <= 1.0):
        raise InvalidSpecError(f"TEV requires -1 < alpha <= 1, got {p[2]}")
    if fam is Family.GLIV and not (p[2] > 0.0 and p[3] > 0.0):
        raise InvalidSpecError(f"GLIV requires alpha, beta > 0, got {p[2:]}")
    if fam is Family.TCEV:
        if not p[3] > 0.0:
            raise InvalidSpecError(f"sigma1 must be > 0, got {p[3]}")
        if not (0.0 < p[4] < 0.5):
            raise InvalidSpecError(f"TCEV requires 0 < alpha < 0.5, got {p[4]}")


def _as_spec(spec) -> DistributionSpec:
    if not isinstance(spec, DistributionSpec):
        raise TypeError(f"expected DistributionSpec, got {type(spec).__name__}")
    return spec


def _shaped(values, like):
    return float(values) if np.ndim(like) == 0 else values


def logpdf(spec: DistributionSpec, x):
    """Log-density; ``-inf`` outside the support."""
    spec = _as_spec(spec)
    xa = np.asarray(x, dtype=float)
    out = kernels.logpdf(spec.family.code, np.asarray(spec.params), np.atleast_1d(xa))
    return _shaped(out.reshape(xa.shape), x)


def pdf(spec: DistributionSpec, x):
    """Probability density; 0 outside the support (GEV with alpha != 0)."""
    lp = logpdf(spec, x)
    return float(math.exp(lp)) if np.ndim(x) == 0 else np.exp(lp)


def cdf(spec: DistributionSpec, x):
    """Cumulative distribution function."""
    spec = _as_spec(spec)
    xa = np.asarray(x, dtype=float)
    out = kernels.cdf(spec.family.code, np.asarray(spec.params), np.atleast_1d(xa))
    return _shaped(out.reshape(xa.shape), x)


def sf(spec: DistributionSpec, x):
    """Survival function 1 - F, accurate in the right tail where a closed form allows."""
    spec = _as_spec(spec)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    fam, p = spec.family, spec.params
    z = (xa - p[0]) / p[1]
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        if fam is Family.EV:
            out = -np.expm1(-np.exp(-z))
        elif fam is Family.GEV and p[2] != 0.0:
            s = 1.0 + p[2] * z
            lz = np.log1p(p[2] * np.where(s > 0, z, 0.0))
            out = np.where(s > 0, -np.expm1(-np.exp(-lz / p[2])), 1.0 if p[2] > 0 else 0.0)
        elif fam is Family.GEV:
            out = -np.expm1(-np.exp(-z))
        elif fam is Family.TCEV:
            z1 = (xa - p[2]) / p[3]
            out = (1.0 - p[4]) * -np.expm1(-np.exp(-z)) + p[4] * -np.expm1(-np.exp(-z1))
        else:
            out = 1.0 - kernels.cdf(fam.code, np.asarray(p), xa)
    return _shaped(out.reshape(np.shape(x)), x)


def _check_p(p):
    pa = np.asarray(p, dtype=float)
    if not np.all((pa > 0.0) & (pa < 1.0)):
        raise DomainError(f"probabilities must lie strictly in (0, 1), got {p!r}")
    return pa


def _closed_quantile(fam: Family, par: tuple, p: np.ndarray):
    mu, sigma = par[0], par[1]
    if fam is Family.EV:
        return mu - sigma * np.log(-np.log(p))
    a = par[2]
    if fam is Family.GEV:
        if a == 0.0:
            return mu - sigma * np.log(-np.log(p))
        return mu + sigma * np.expm1(-a * np.log(-np.log(p))) / a
    if fam is Family.EGu:
        # G = 1 - t with t = (1 - p)^(1/a); -ln G = -log1p(-t) keeps the upper tail
        t = np.exp(np.log1p(-p) / a)
        return mu - sigma * np.log(-np.log1p(-t))
    if fam is Family.TEV:
        if abs(a) < _TEV_ZERO:
            return mu - sigma * np.log(-np.log(p))
        # root of a G^2 - (1 + a) G + p = 0 in rationalized form
        g = 2.0 * p / (1.0 + a + np.sqrt((1.0 + a) ** 2 - 4.0 * a * p))
        return mu - sigma * np.log(-np.log(g))
    if fam is Family.GTIEV3:
        t = a * np.expm1(-np.log(p) / a)
        return mu - sigma * np.log(t)
    if fam is Family.GGu:
        w = np.exp((np.log1p(-p) - np.log(p)) / a)
        return mu - sigma * np.log(np.log1p(w))
    return None


def _root_quantile(spec: DistributionSpec, p: float) -> float:
    """Invert the cdf by a bracketed bisection-secant (Brent) search."""
    mu, sigma = spec.params[0], spec.params[1]
    code, par = spec.family.code, np.asarray(spec.params)

    def g(x):
        return kernels.cdf(code, par, np.array([x]))[0] - p

    x0 = mu - sigma * math.log(-math.log(p))
    width = sigma
    if spec.family is Family.TCEV:
        width = max(sigma, spec.params[3])
    lo, hi = x0 - width, x0 + width
    for _ in range(_MAX_EXPAND):
        if g(lo) < 0.0:
            break
        width *= 2.0
        lo = x0 - width
    else:
        raise NonConvergenceError(f"could not bracket the {p} quantile of {spec} from below")
    width = max(width, sigma)
    for _ in range(_MAX_EXPAND):
        if g(hi) > 0.0:
            break
        width *= 2.0
        hi = x0 + width
    else:
        raise NonConvergenceError(f"could not bracket the {p} quantile of {spec} from above")
    try:
        return optimize.brentq(g, lo, hi, xtol=_ROOT_XTOL * max(1.0, sigma), rtol=4 * np.finfo(float).eps, maxiter=500)
    except RuntimeError as exc:
        raise NonConvergenceError(str(exc)) from None


def quantile(spec: DistributionSpec, p):
    """Quantile function Q(p) for p in (0, 1).

    Closed form for EV, GEV, EGu, TEV, GTIEV3 and GGu; EGa, GLIV and TCEV
    are inverted numerically.

    Raises
    ------
    DomainError
        If any ``p`` lies outside (0, 1).
    NonConvergenceError
        If the root search cannot bracket the quantile.
    """
    spec = _as_spec(spec)
    pa = _check_p(p)
    out = _closed_quantile(spec.family, spec.params, np.atleast_1d(pa))
    if out is None:
        out = np.array([_root_quantile(spec, float(v)) for v in np.atleast_1d(pa)])
    return _shaped(out.reshape(pa.shape), p)


def _uniforms(rng: np.random.Generator, n: int) -> np.ndarray:
    u = rng.random(n)
    bad = u == 0.0
    while bad.any():
        u[bad] = rng.random(int(bad.sum()))
        bad = u == 0.0
    return u


def _log_gamma_variates(rng: np.random.Generator, shape: float, n: int) -> np.ndarray:
    """ln of Gamma(shape, 1) variates, boosted in log space when shape < 1.

    ``G(a) = G(a + 1) * U^(1/a)``; taking logs keeps tiny variates finite.
    """
    if shape >= 1.0:
        return np.log(rng.standard_gamma(shape, n))
    return np.log(rng.standard_gamma(shape + 1.0, n)) + np.log(_uniforms(rng, n)) / shape


def sample(spec: DistributionSpec, n: int, seed=None) -> np.ndarray:
    """Draw ``n`` i.i.d. variates.

    Parameters
    ----------
    spec : DistributionSpec
    n : int
        Sample size, at least 1.
    seed : int, sequence of int, or numpy Generator
        Passed to :func:`numpy.random.default_rng`; a private generator is
        created per call so results depend only on ``seed``.

    Notes
    -----
    EGa uses ``mu - sigma ln Y`` with Y gamma, GLIV the same with Y an F
    variate built as a ratio of gammas, TCEV picks its component by a
    Bernoulli draw; all other families use inverse transform sampling.
    """
    spec = _as_spec(spec)
    n = int(n)
    if n < 1:
        raise DomainError(f"sample size must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    fam, p = spec.family, spec.params
    mu, sigma = p[0], p[1]
    if fam is Family.EGa:
        return mu - sigma * _log_gamma_variates(rng, p[2], n)
    if fam is Family.GLIV:
        a, b = p[2], p[3]
        log_y = _log_gamma_variates(rng, a, n) - _log_gamma_variates(rng, b, n) - math.log(a / b)
        return mu - sigma * log_y
    if fam is Family.TCEV:
        upper = rng.random(n) < p[4]
        u = _uniforms(rng, n)
        loc = np.where(upper, p[2], mu)
        scale = np.where(upper, p[3], sigma)
        return loc - scale * np.log(-np.log(u))
    return _closed_quantile(fam, p, _uniforms(rng, n))


def moments(spec: DistributionSpec) -> MomentSummary:
    """Mean, variance, skewness and (non-excess) kurtosis.

    GEV moments of order k exist only for k * alpha < 1; undefined entries
    are ``None``.
    """
    spec = _as_spec(spec)
    return _moments.compute(spec.family, spec.params)


# -- reductions of nonidentifiable families -------------------------------

REDUCIBLE_FAMILIES = ("KumGum", "GTIEV", "ExpGama", "EGGu_beta_only", "BG_beta1", "KBGGu_beta1_gamma0")


def _positive(name, value):
    if not (value > 0.0 and math.isfinite(value)):
        raise DomainError(f"{name} must be > 0, got {value!r}")


def reduce_to_identifiable(family: str, params: Sequence[float]) -> DistributionSpec:
    """Map a nonidentifiable family onto the identifiable family it equals.

    ======================  =================  =================================
    source                  parameters         target
    ======================  =================  =================================
    KumGum                  mu, sigma, a, b    EGu(mu + sigma ln a, sigma, b)
    GTIEV                   mu, sigma, a, b    GTIEV3(mu + sigma ln(sigma a / b), sigma, a)
    ExpGama                 mu, sigma, a, b    EGa(mu + sigma ln a, sigma, b)
    EGGu_beta_only          mu, sigma, 1, b    EV(mu + sigma ln b, sigma)
    BG_beta1                mu, sigma, a, 1    EV(mu + sigma ln a, sigma)
    KBGGu_beta1_gamma0      mu, sigma, a, 1, 0 EV(mu + sigma ln a, sigma)
    ======================  =================  =================================

    Raises
    ------
    DomainError
        For an unknown source family, a wrong parameter count, or
        parameters outside the reducible slice.
    """
    key = {name.lower(): name for name in REDUCIBLE_FAMILIES}.get(str(family).lower())
    if key is None:
        raise DomainError(f"unknown reducible family {family!r}; expected one of {REDUCIBLE_FAMILIES}")
    p = [float(v) for v in params]
    expected = 5 if key == "KBGGu_beta1_gamma0" else 4
    if len(p) != expected:
        raise DomainError(f"{key} takes {expected} parameters, got {len(p)}")
    mu, sigma = p[0], p[1]
    if not math.isfinite(mu):
        raise DomainError(f"mu must be finite, got {mu!r}")
    _positive("sigma", sigma)
    _positive("alpha", p[2])
    _positive("beta", p[3])
    if key == "KumGum":
        return DistributionSpec(Family.EGu, (mu + sigma * math.log(p[2]), sigma, p[3]))
    if key == "GTIEV":
        return DistributionSpec(Family.GTIEV3, (mu + sigma * math.log(sigma * p[2] / p[3]), sigma, p[2]))
    if key == "ExpGama":
        return DistributionSpec(Family.EGa, (mu + sigma * math.log(p[2]), sigma, p[3]))
    if key == "EGGu_beta_only":
        if p[2] != 1.0:
            raise DomainError(f"EGGu reduces to EV only when alpha = 1, got {p[2]}")
        return DistributionSpec(Family.EV, (mu + sigma * math.log(p[3]), sigma))
    if key == "BG_beta1":
        if p[3] != 1.0:
            raise DomainError(f"BG reduces to EV only when beta = 1, got {p[3]}")
        return DistributionSpec(Family.EV, (mu + sigma * math.log(p[2]), sigma))
    if p[3] != 1.0 or p[4] != 0.0:
        raise DomainError(f"KBGGu reduces to EV only when beta = 1 and gamma = 0, got {p[3:]}")
    return DistributionSpec(Family.EV, (mu + sigma * math.log(p[2]), sigma))


# -- presets ---------------------------------------------------------------

TABLE3_PRESETS = {
    "EV": DistributionSpec(Family.EV, (0.0, 1.0)),
    "GEV": DistributionSpec(Family.GEV, (0.0, 1.0, 0.1)),
    "EGu": DistributionSpec(Family.EGu, (0.0, 1.0, 0.7)),
    "TEV": DistributionSpec(Family.TEV, (0.0, 1.0, -0.99)),
    "EGa": DistributionSpec(Family.EGa, (0.0, 1.0, 0.7)),
    "GGu": DistributionSpec(Family.GGu, (0.0, 1.0, 0.7)),
    "GLIV": DistributionSpec(Family.GLIV, (0.0, 1.0, 0.65, 15.0)),
    "TCEV": DistributionSpec(Family.TCEV, (0.0, 1.0, 10.0, 5.0, 0.0016)),
}
"""The eight simulation-study generators."""

PRESETS = {
    **TABLE3_PRESETS,
    "EGu_alt": DistributionSpec(Family.EGu, (0.0, 1.0, 0.6)),
    "EGa_alt": DistributionSpec(Family.EGa, (0.0, 1.0, 0.6)),
    "GLIV_alt": DistributionSpec(Family.GLIV, (0.0, 1.0, 0.55, 10.0)),
    "TCEV_alt": DistributionSpec(Family.TCEV, (0.0, 1.0, 10.0, 5.0, 0.0125)),
}
"""All named presets: the study generators plus alternate shape settings."""
