"""Parameter estimation: bounded maximum likelihood, TEV profile likelihood
and the probability-weighted-moments estimator for the GEV.

All likelihood work happens on standardized data ``(x - mean) / sd`` so
the optimizer sees parameters of order one whatever the data units;
estimates are mapped back before being reported.  Scale parameters and
strictly positive shapes are optimized on the log scale, bounded shapes
on their natural scale, with box constraints handled by L-BFGS-B.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from . import special
from ._core import kernels
from ._family import Family
from .distributions import DistributionSpec
from .errors import DataError, DomainError, InsufficientDataError

__all__ = [
    "Method",
    "FitConfig",
    "FitResult",
    "ProfilePoint",
    "default_bounds",
    "loglik",
    "fit_mle",
    "fit_tev_profile",
    "fit_gev_pwm",
    "profile_loglik_curve",
    "standard_errors",
]

MIN_N = 10
_PENALTY = 1e10
_INF = math.inf
# GTIEV3 approaches the Gumbel law as alpha grows; this cap keeps the
# collapse start within ~1e-7 of the EV log-likelihood at n ~ 1e3
_GTIEV3_ALPHA_MAX = 1e10
_POS_SHAPE = (1e-6, 1e6)

# parameter roles: location, scale, shape
_LOC, _SCALE, _SHAPE = "loc", "scale", "shape"
_ROLES = {
    Family.EV: (_LOC, _SCALE),
    Family.GLIV: (_LOC, _SCALE, _SHAPE, _SHAPE),
    Family.TCEV: (_LOC, _SCALE, _LOC, _SCALE, _SHAPE),
}


def _roles(fam: Family):
    return _ROLES.get(fam, (_LOC, _SCALE, _SHAPE))


def _log_scaled(fam: Family) -> tuple:
    """Which parameters the optimizer sees on the log scale."""
    out = []
    for i, role in enumerate(_roles(fam)):
        if role == _SCALE:
            out.append(True)
        elif role == _SHAPE:
            out.append(fam in (Family.EGu, Family.GTIEV3, Family.EGa, Family.GGu, Family.GLIV))
        else:
            out.append(False)
    return tuple(out)


def default_bounds(family) -> List[Tuple[float, float]]:
    """Default estimation box for ``family`` in natural parameter units.

    GEV shape in [-0.6, 0.6] and GLIV shapes in (0, 1] x (0, 20] follow the
    usual simulation-study settings; TEV keeps its identifiable range and
    TCEV lets the mixing weight roam over [0, 1] before relabelling.
    """
    fam = Family.parse(family)
    b = []
    for role in _roles(fam):
        b.append((-_INF, _INF) if role == _LOC else (0.0, _INF) if role == _SCALE else None)
    if fam is Family.GEV:
        b[2] = (-0.6, 0.6)
    elif fam is Family.TEV:
        b[2] = (-1.0 + 1e-9, 1.0)
    elif fam is Family.GTIEV3:
        b[2] = (_POS_SHAPE[0], _GTIEV3_ALPHA_MAX)
    elif fam in (Family.EGu, Family.EGa, Family.GGu):
        b[2] = _POS_SHAPE
    elif fam is Family.GLIV:
        b[2] = (_POS_SHAPE[0], 1.0)
        b[3] = (_POS_SHAPE[0], 20.0)
    elif fam is Family.TCEV:
        b[4] = (0.0, 1.0)
    return b


class Method(str, Enum):
    MLE = "MLE"
    PWM = "PWM"
    PROFILE = "ProfileMLE"


@dataclass(frozen=True)
class FitConfig:
    """Estimation settings.

    Attributes
    ----------
    bounds : sequence of (lo, hi), optional
        Box constraints in natural units; ``None`` uses :func:`default_bounds`.
    start : sequence of float, optional
        A single starting vector; when given, the default multi-start set
        is not used.
    tol : float
        Projected-gradient tolerance of the optimizer.
    max_iters : int
        Iteration cap per local search; hitting it marks the fit unconverged.
    profile_grid : int
        Number of shape values on the TEV profile grid over (-1, 1].
    pwm_plotting_a : float
        Plotting-position offset ``a`` in ``p_j = (j - a) / n`` for PWM.
    multistart : bool
        Run the extra deterministic starts (collapse and mixture starts).
    """

    bounds: Optional[Sequence[Tuple[float, float]]] = None
    start: Optional[Sequence[float]] = None
    tol: float = 1e-8
    max_iters: int = 500
    profile_grid: int = 201
    pwm_plotting_a: float = 0.35
    multistart: bool = True

    def __post_init__(self):
        if self.tol <= 0:
            raise DomainError(f"tol must be > 0, got {self.tol}")
        if self.max_iters < 1:
            raise DomainError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.profile_grid < 3:
            raise DomainError(f"profile_grid must be >= 3, got {self.profile_grid}")

    def bounds_for(self, family) -> List[Tuple[float, float]]:
        fam = Family.parse(family)
        if self.bounds is None:
            return default_bounds(fam)
        b = [(float(lo), float(hi)) for lo, hi in self.bounds]
        if len(b) != fam.n_params:
            raise DomainError(f"{fam.value} needs {fam.n_params} bound pairs, got {len(b)}")
        for lo, hi in b:
            if not lo < hi:
                raise DomainError(f"empty bound interval ({lo}, {hi})")
        return b


@dataclass(frozen=True)
class ProfilePoint:
    """One point of a profile log-likelihood curve."""

    value: float
    loglik: float
    params: tuple
    ok: bool = True


@dataclass(frozen=True)
class FitResult:
    """Outcome of a fit.

    ``std_errors`` holds NaN where undefined (parameter on a bound, or an
    observed information that is not positive definite).
    """

    spec: DistributionSpec
    std_errors: tuple
    loglik: float
    method: Method
    converged: bool
    n_evals: int
    bounds_active: tuple
    message: str = ""
    profile: Optional[Tuple[ProfilePoint, ...]] = field(default=None, repr=False)

    @property
    def family(self) -> Family:
        return self.spec.family

    @property
    def params(self) -> tuple:
        return self.spec.params

    @property
    def n_params(self) -> int:
        return self.spec.family.n_params

    @property
    def nll(self) -> float:
        return -self.loglik

    def as_dict(self) -> dict:
        fam = self.spec.family
        return {
            "family": fam.value,
            "method": self.method.value,
            "params": dict(zip(fam.param_names, self.spec.params)),
            "std_errors": dict(zip(fam.param_names, (None if math.isnan(s) else s for s in self.std_errors))),
            "loglik": self.loglik,
            "converged": self.converged,
            "n_evals": self.n_evals,
            "bounds_active": dict(zip(fam.param_names, self.bounds_active)),
        }


# -- data handling -------------------------------------------------------------


def _clean(data) -> np.ndarray:
    x = np.asarray(data, dtype=float).ravel()
    if x.size < MIN_N:
        raise InsufficientDataError(f"need at least {MIN_N} observations, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise DataError("data contain non-finite values")
    if np.ptp(x) == 0.0:
        raise InsufficientDataError("all observations are equal; the scale estimate is degenerate")
    return x


def loglik(family, params, data) -> float:
    """Summed log-density of ``data`` at ``params`` (no validation)."""
    fam = Family.parse(family)
    return float(kernels.loglik(fam.code, np.asarray(params, dtype=float), np.asarray(data, dtype=float)))


class _Standardizer:
    def __init__(self, x):
        self.m = float(np.mean(x))
        self.s = float(np.std(x))

    def to_std(self, fam, theta):
        out = list(theta)
        for i, role in enumerate(_roles(fam)):
            if role == _LOC:
                out[i] = (out[i] - self.m) / self.s
            elif role == _SCALE:
                out[i] = out[i] / self.s
        return out

    def to_natural(self, fam, theta):
        out = list(theta)
        for i, role in enumerate(_roles(fam)):
            if role == _LOC:
                out[i] = self.m + self.s * out[i]
            elif role == _SCALE:
                out[i] = self.s * out[i]
        return out

    def bounds_to_std(self, fam, bounds):
        out = []
        for (lo, hi), role in zip(bounds, _roles(fam)):
            if role == _LOC:
                out.append(((lo - self.m) / self.s, (hi - self.m) / self.s))
            elif role == _SCALE:
                out.append((lo / self.s, hi / self.s))
            else:
                out.append((lo, hi))
        return out


class _Objective:
    """Mean negative log-likelihood over a subset of free parameters.

    Works in optimizer coordinates ``u`` (log for positive parameters) on
    standardized data; parameters listed in ``fixed`` are held constant.
    """

    def __init__(self, fam: Family, xs: np.ndarray, bounds, fixed=None):
        self.fam = fam
        self.code = fam.code
        self.xs = xs
        self.n = xs.size
        self.fixed = dict(fixed or {})
        self.free = [i for i in range(fam.n_params) if i not in self.fixed]
        logs = _log_scaled(fam)
        self.logs = [logs[i] for i in self.free]
        self.ubounds = []
        for i, lg in zip(self.free, self.logs):
            lo, hi = bounds[i]
            if lg:
                # standardized data keep scales far inside (1e-12, 1e12)
                lo = math.log(max(lo, 1e-12))
                hi = math.log(min(hi, 1e12))
            self.ubounds.append((lo, hi))
        self.n_evals = 0
        self._theta = np.empty(fam.n_params)
        for i, v in self.fixed.items():
            self._theta[i] = v

    def theta(self, u) -> np.ndarray:
        th = self._theta.copy()
        for k, i in enumerate(self.free):
            th[i] = math.exp(u[k]) if self.logs[k] else u[k]
        return th

    def to_u(self, theta) -> np.ndarray:
        u = []
        for k, i in enumerate(self.free):
            v = float(theta[i])
            u.append(math.log(v) if self.logs[k] else v)
        return np.clip(np.array(u), [b[0] for b in self.ubounds], [b[1] for b in self.ubounds])

    def __call__(self, u) -> float:
        self.n_evals += 1
        ll = kernels.loglik(self.code, self.theta(u), self.xs)
        if not math.isfinite(ll):
            return _PENALTY
        return -ll / self.n

    def grad(self, u) -> np.ndarray:
        """Central differences, one-sided at bounds or at the support edge."""
        u = np.asarray(u, dtype=float)
        g = np.zeros_like(u)
        f0 = None
        for k in range(u.size):
            h = 1e-6 * max(1.0, abs(u[k]))
            lo, hi = self.ubounds[k]
            up, dn = u.copy(), u.copy()
            up[k] = min(u[k] + h, hi)
            dn[k] = max(u[k] - h, lo)
            fu, fd = self(up), self(dn)
            if fu >= _PENALTY or fd >= _PENALTY or up[k] == u[k] or dn[k] == u[k]:
                if f0 is None:
                    f0 = self(u)
                if fu < _PENALTY and up[k] > u[k]:
                    g[k] = (fu - f0) / (up[k] - u[k])
                elif fd < _PENALTY and dn[k] < u[k]:
                    g[k] = (f0 - fd) / (u[k] - dn[k])
                continue
            g[k] = (fu - fd) / (up[k] - dn[k])
        return g


def _minimize(obj: _Objective, theta0, cfg: FitConfig):
    u0 = obj.to_u(theta0)
    if obj(u0) >= _PENALTY:
        return None
    bounds = [(None if not math.isfinite(lo) else lo, None if not math.isfinite(hi) else hi) for lo, hi in obj.ubounds]
    res = optimize.minimize(
        obj,
        u0,
        jac=obj.grad,
        method="L-BFGS-B",
        bounds=bounds,
        options={"maxiter": cfg.max_iters, "gtol": cfg.tol, "ftol": 1e-15, "maxls": 50},
    )
    return res


# -- starting values -----------------------------------------------------------


def _ev_moment_start(xs):
    s0 = math.sqrt(6.0) * float(np.std(xs)) / math.pi
    return float(np.mean(xs)) - special.EULER_GAMMA * s0, s0


def _starts(fam: Family, xs: np.ndarray, ev_hat, cfg: FitConfig):
    """Deterministic starting vectors in standardized units."""
    m0, s0 = _ev_moment_start(xs)
    me, se = ev_hat
    if fam is Family.EV:
        return [[m0, s0]]
    if fam is Family.GEV:
        out = [[m0, s0, 0.1]]
        if cfg.multistart:
            out.append([me, se, 0.0])
            pw = _pwm_params(xs, cfg.pwm_plotting_a)
            if pw is not None and -0.6 < pw[2] < 0.6:
                out.append(list(pw))
        return out
    if fam is Family.TEV:
        return [[m0, s0, 0.01]] + ([[me, se, 0.0]] if cfg.multistart else [])
    if fam in (Family.EGu, Family.EGa, Family.GGu):
        return [[m0, s0, 1.0]] + ([[me, se, 1.0]] if cfg.multistart else [])
    if fam is Family.GTIEV3:
        return [[m0, s0, 10.0]] + ([[me, se, _GTIEV3_ALPHA_MAX]] if cfg.multistart else [])
    if fam is Family.GLIV:
        return [[m0, s0, 1.0, 10.0]]
    if fam is Family.TCEV:
        out = [[m0, s0, m0 + 2.0 * s0, 2.0 * s0, 0.05]]
        if cfg.multistart:
            out.append([me, se, me, se, 0.0])
            for q in (0.95, 0.99):
                loc = float(np.quantile(xs, q))
                for mult in (1.5, 3.0):
                    for a in (0.05, 0.01):
                        out.append([me, se, loc, mult * se, a])
        return out
    raise ValueError(f"unsupported family {fam!r}")


def _clip_start(theta, bounds):
    out = []
    for v, (lo, hi) in zip(theta, bounds):
        if lo > -_INF and v <= lo:
            v = lo if lo != 0.0 else 1e-8
        if hi < _INF and v > hi:
            v = hi
        out.append(v)
    return out


# -- result assembly -----------------------------------------------------------


def _canonical_tcev(theta):
    mu, sigma, mu1, sigma1, a = theta
    if a > 0.5:
        mu, sigma, mu1, sigma1, a = mu1, sigma1, mu, sigma, 1.0 - a
    if a <= 0.0:
        # no upper component: identical components keep the density exact
        return [mu, sigma, mu, sigma, 1e-12]
    if a >= 0.5:
        a = 0.5 - 1e-12
    return [mu, sigma, mu1, sigma1, a]


def _active(theta, bounds, fam):
    flags = []
    for v, (lo, hi) in zip(theta, bounds):
        tol = 1e-7 * max(1.0, abs(v))
        flags.append(bool((lo > -_INF and v - lo <= tol) or (hi < _INF and hi - v <= tol)))
    if fam is Family.TCEV and theta[4] <= 1e-9:
        flags = [flags[0], flags[1], True, True, True]
    return tuple(flags)


def standard_errors(family, params, data, active=None) -> tuple:
    """Standard errors from the inverse observed information.

    The Hessian of the negative log-likelihood is taken by central
    differences with step ``max(1e-4, 1e-4 |theta_i|)``.  Parameters flagged
    in ``active`` are held fixed; if the remaining block is not positive
    definite every entry is NaN.
    """
    fam = Family.parse(family)
    theta = np.asarray(params, dtype=float)
    x = np.asarray(data, dtype=float)
    k = theta.size
    active = tuple(active) if active is not None else (False,) * k
    idx = [i for i in range(k) if not active[i]]
    se = np.full(k, np.nan)
    if not idx:
        return tuple(se)
    h = np.maximum(1e-4, 1e-4 * np.abs(theta))

    def nll(t):
        return -kernels.loglik(fam.code, t, x)

    f0 = nll(theta)
    m = len(idx)
    H = np.empty((m, m))
    for a in range(m):
        i = idx[a]
        for b in range(a, m):
            j = idx[b]
            if i == j:
                tp, tm = theta.copy(), theta.copy()
                tp[i] += h[i]
                tm[i] -= h[i]
                H[a, a] = (nll(tp) - 2.0 * f0 + nll(tm)) / h[i] ** 2
            else:
                vals = []
                for si, sj in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                    t = theta.copy()
                    t[i] += si * h[i]
                    t[j] += sj * h[j]
                    vals.append(nll(t))
                H[a, b] = H[b, a] = (vals[0] - vals[1] - vals[2] + vals[3]) / (4.0 * h[i] * h[j])
    if not np.all(np.isfinite(H)):
        return tuple(se)
    try:
        L = np.linalg.cholesky(H)
    except np.linalg.LinAlgError:
        return tuple(se)
    cov = np.linalg.inv(L.T) @ np.linalg.inv(L)
    d = np.diag(cov)
    if np.any(d <= 0):
        return tuple(se)
    se[idx] = np.sqrt(d)
    return tuple(float(v) for v in se)


def _finish(fam, theta_nat, x, bounds, method, converged, n_evals, message="", profile=None, with_se=True):
    theta_nat = list(theta_nat)
    if fam is Family.TCEV:
        theta_nat = _canonical_tcev(theta_nat)
        bounds = list(bounds)
    spec = DistributionSpec(fam, tuple(theta_nat))
    active = _active(spec.params, bounds, fam)
    se = standard_errors(fam, spec.params, x, active) if with_se else (math.nan,) * fam.n_params
    ll = loglik(fam, spec.params, x)
    return FitResult(spec, se, ll, method, converged, n_evals, active, message, profile)


# -- public fitting API --------------------------------------------------------


def _ev_std_fit(xs, cfg):
    fam = Family.EV
    obj = _Objective(fam, xs, [(-_INF, _INF), (0.0, _INF)])
    res = _minimize(obj, list(_ev_moment_start(xs)), cfg)
    return list(obj.theta(res.x)), res, obj.n_evals


def fit_mle(data, family, config: Optional[FitConfig] = None) -> FitResult:
    """Maximum-likelihood fit of ``family`` within box constraints.

    Parameters
    ----------
    data : array_like
        At least 10 finite observations.
    family : Family or str
    config : FitConfig, optional

    Returns
    -------
    FitResult
        ``converged`` is False only when the iteration cap was reached.

    Raises
    ------
    InsufficientDataError
        Fewer than 10 observations or all observations equal.
    """
    cfg = config or FitConfig()
    fam = Family.parse(family)
    x = _clean(data)
    st = _Standardizer(x)
    xs = (x - st.m) / st.s
    nat_bounds = cfg.bounds_for(fam)
    std_bounds = st.bounds_to_std(fam, nat_bounds)

    n_evals = 0
    ev_hat, ev_res, ne = _ev_std_fit(xs, cfg)
    n_evals += ne
    if fam is Family.EV and cfg.start is None and cfg.bounds is None:
        theta = st.to_natural(fam, ev_hat)
        return _finish(fam, theta, x, nat_bounds, Method.MLE, ev_res.status != 1, n_evals)

    if cfg.start is not None:
        if len(cfg.start) != fam.n_params:
            raise DomainError(f"{fam.value} start needs {fam.n_params} values, got {len(cfg.start)}")
        starts = [st.to_std(fam, [float(v) for v in cfg.start])]
    else:
        starts = _starts(fam, xs, ev_hat, cfg)

    best = None
    obj = _Objective(fam, xs, std_bounds)
    for s in starts:
        res = _minimize(obj, _clip_start(s, std_bounds), cfg)
        if res is None:
            continue
        if best is None or res.fun < best.fun:
            best = res
    n_evals += obj.n_evals
    if best is None:
        raise DataError(f"no admissible starting value for {fam.value} on these data")
    theta = st.to_natural(fam, obj.theta(best.x))
    return _finish(fam, theta, x, nat_bounds, Method.MLE, best.status != 1, n_evals, str(best.message))


def _profile_sweep(fam, xs, std_bounds, index, grid, start, cfg, order=None):
    """Inner maximizations along ``grid`` with neighbour warm starts.

    ``order`` lists grid positions in visiting order; each point starts
    from the maximizer of the previously visited neighbour.
    """
    n = len(grid)
    order = list(range(n)) if order is None else order
    lls = np.full(n, -_INF)
    thetas = [None] * n
    ok = [False] * n
    n_evals = 0
    prev = {}
    for pos in order:
        val = float(grid[pos])
        obj = _Objective(fam, xs, std_bounds, fixed={index: val})
        seeds = []
        for nb in (pos - 1, pos + 1):
            if nb in prev:
                seeds.append(prev[nb])
        seeds.append(start)
        res = None
        for s in seeds:
            th = list(s)
            th[index] = val
            th = _feasible(obj, _clip_start(th, std_bounds), std_bounds, index)
            r = _minimize(obj, th, cfg)
            if r is not None:
                res = r if res is None or r.fun < res.fun else res
                if r.fun < _PENALTY:
                    break
        n_evals += obj.n_evals
        if res is None or res.fun >= _PENALTY:
            continue
        th = obj.theta(res.x)
        thetas[pos] = list(th)
        lls[pos] = -res.fun * xs.size
        ok[pos] = True
        prev[pos] = list(th)
    return lls, thetas, ok, n_evals


def _feasible(obj, theta, bounds, fixed_index):
    """Widen the scale of an infeasible start until the data lie in the
    support (a fixed GEV shape can exclude the sample extremes)."""
    if fixed_index == 1 or obj(obj.to_u(theta)) < _PENALTY:
        return theta
    th = list(theta)
    for _ in range(40):
        th[1] = min(th[1] * 2.0, bounds[1][1])
        if obj(obj.to_u(th)) < _PENALTY:
            return th
    return list(theta)


def _center_out(grid, center_value):
    c = int(np.argmin(np.abs(np.asarray(grid) - center_value)))
    order = [c]
    for d in range(1, len(grid)):
        if c - d >= 0:
            order.append(c - d)
        if c + d < len(grid):
            order.append(c + d)
    return order


def fit_tev_profile(data, config: Optional[FitConfig] = None) -> FitResult:
    """TEV fit through its profile log-likelihood in the shape parameter.

    The shape is scanned on ``config.profile_grid`` equispaced points over
    (-1, 1] (0 included for odd grid sizes), maximizing over location and
    scale at each; the best grid point is polished by a full local search.
    The profile guards against the multimodality of the TEV likelihood.
    """
    cfg = config or FitConfig()
    fam = Family.TEV
    x = _clean(data)
    st = _Standardizer(x)
    xs = (x - st.m) / st.s
    nat_bounds = cfg.bounds_for(fam)
    std_bounds = st.bounds_to_std(fam, nat_bounds)
    lo, hi = std_bounds[2]
    grid = np.linspace(-1.0, 1.0, cfg.profile_grid)
    grid = np.clip(grid, lo, hi)

    ev_hat, _, n_evals = _ev_std_fit(xs, cfg)
    start = [ev_hat[0], ev_hat[1], 0.0]
    lls, thetas, ok, ne = _profile_sweep(fam, xs, std_bounds, 2, grid, start, cfg, order=_center_out(grid, 0.0))
    n_evals += ne
    if not any(ok):
        raise DataError("TEV profile likelihood is undefined on the whole grid")
    best = int(np.argmax(lls))
    obj = _Objective(fam, xs, std_bounds)
    res = _minimize(obj, thetas[best], cfg)
    n_evals += obj.n_evals
    theta_std = thetas[best]
    converged = True
    if res is not None and -res.fun * xs.size >= lls[best]:
        theta_std = list(obj.theta(res.x))
        converged = res.status != 1
    theta = st.to_natural(fam, theta_std)
    shift = -xs.size * math.log(st.s)
    profile = tuple(
        ProfilePoint(float(g), float(l + shift) if o else -_INF, tuple(st.to_natural(fam, t)) if o else (), o)
        for g, l, t, o in zip(grid, lls, thetas, ok)
    )
    return _finish(fam, theta, x, nat_bounds, Method.PROFILE, converged, n_evals, profile=profile)


def profile_loglik_curve(data, family, param_index: int, grid, config: Optional[FitConfig] = None) -> List[ProfilePoint]:
    """Profile log-likelihood of one parameter over ``grid``.

    For each grid value the remaining parameters are maximized, starting
    from the maximizer at the neighbouring grid point (the sweep begins at
    the grid point nearest the unrestricted MLE).  Failed points are kept
    with ``ok=False`` and ``loglik=-inf``.

    Parameters
    ----------
    param_index : int
        Position of the profiled parameter in the family's parameter vector.
    grid : sequence of float
        Values of the profiled parameter, in natural units.
    """
    cfg = config or FitConfig()
    fam = Family.parse(family)
    if not 0 <= param_index < fam.n_params:
        raise DomainError(f"param_index must be in [0, {fam.n_params}), got {param_index}")
    x = _clean(data)
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("grid must be a non-empty 1-d sequence")
    st = _Standardizer(x)
    xs = (x - st.m) / st.s
    nat_bounds = cfg.bounds_for(fam)
    role = _roles(fam)[param_index]
    if role != _SHAPE:
        # a profiled location/scale needs its own (fixed) bounds relaxed
        lo, hi = nat_bounds[param_index]
        nat_bounds[param_index] = (min(lo, grid.min()), max(hi, grid.max()))
    std_bounds = st.bounds_to_std(fam, nat_bounds)
    if role == _LOC:
        grid_std = (grid - st.m) / st.s
    elif role == _SCALE:
        grid_std = grid / st.s
    else:
        grid_std = grid
    lo, hi = std_bounds[param_index]
    if np.any(grid_std < lo) or np.any(grid_std > hi):
        raise DomainError(f"grid values must lie within the bounds {nat_bounds[param_index]}")
    full = fit_mle(x, fam, cfg)
    start = st.to_std(fam, list(full.params))
    if fam is Family.TCEV:
        start = st.to_std(fam, _canonical_tcev(list(full.params)))
    order = _center_out(grid_std, start[param_index])
    lls, thetas, ok, _ = _profile_sweep(fam, xs, std_bounds, param_index, grid_std, start, cfg, order=order)
    shift = -xs.size * math.log(st.s)
    return [
        ProfilePoint(float(g), float(l + shift) if o else -_INF, tuple(st.to_natural(fam, t)) if o else (), o)
        for g, l, t, o in zip(grid, lls, thetas, ok)
    ]


def _pwm_params(x, a=0.35):
    """GEV (mu, sigma, alpha) from sample PWMs with the rational shape approximation."""
    xs = np.sort(np.asarray(x, dtype=float))
    n = xs.size
    p = (np.arange(1, n + 1) - a) / n
    b0 = xs.mean()
    b1 = np.mean(p * xs)
    b2 = np.mean(p * p * xs)
    denom = 3.0 * b2 - b0
    if denom == 0.0:
        return None
    c = (2.0 * b1 - b0) / denom - math.log(2.0) / math.log(3.0)
    k = 7.8590 * c + 2.9554 * c * c
    l2 = 2.0 * b1 - b0
    if abs(k) < 1e-8:
        sigma = l2 / math.log(2.0)
        mu = b0 - special.EULER_GAMMA * sigma
    else:
        g = math.gamma(1.0 + k)
        sigma = l2 * k / (g * (1.0 - 2.0 ** (-k)))
        mu = b0 + sigma * (g - 1.0) / k
    if not (sigma > 0.0 and math.isfinite(mu)):
        return None
    # the approximation's k is the negated heavy-tail shape
    return mu, sigma, -k


def fit_gev_pwm(data, config: Optional[FitConfig] = None) -> FitResult:
    """GEV fit by probability-weighted moments.

    Uses plotting positions ``p_j = (j - a) / n`` (``a = 0.35`` by default)
    for ``b0, b1, b2`` and the rational approximation
    ``k = 7.8590 c + 2.9554 c^2``, ``c = (2 b1 - b0) / (3 b2 - b0) - ln 2 / ln 3``.
    The returned shape follows the heavy-tail-positive sign convention.
    No standard errors are produced; the log-likelihood is ``-inf`` when
    an observation falls outside the fitted support.
    """
    cfg = config or FitConfig()
    x = _clean(data)
    est = _pwm_params(x, cfg.pwm_plotting_a)
    if est is None:
        raise DataError("probability-weighted moments give a degenerate GEV estimate")
    fam = Family.GEV
    spec = DistributionSpec(fam, est)
    ll = loglik(fam, spec.params, x)
    return FitResult(spec, (math.nan,) * 3, ll, Method.PWM, True, 0, (False,) * 3)
