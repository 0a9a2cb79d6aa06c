"""Goodness-of-fit measures: AIC, right-tail Anderson-Darling statistics,
the relative .999-quantile discrepancy and bootstrap QQ envelopes.

The right-tail statistics of a sample with fitted cdf values
``z_(1) <= ... <= z_(n)`` are

    ADR  = n/2 - 2 sum z_(i) - (1/n) sum (2i - 1) ln(1 - z_(n+1-i))
    AD2R = 2 sum ln(1 - z_(i)) + (1/n) sum (2i - 1) / (1 - z_(n+1-i))

which equal ``n int (F_n - u)^2 / (1 - u) du`` and
``n int (F_n - u)^2 / (1 - u)^2 du`` over (0, 1), with ``F_n`` the
empirical cdf of the z values.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from ._core import kernels
from .distributions import DistributionSpec, cdf, quantile, sample
from .errors import DataError, DomainError

__all__ = [
    "GofReport",
    "QqEnvelope",
    "Z_CLAMP",
    "aic",
    "adr",
    "ad2r",
    "adr_from_z",
    "ad2r_from_z",
    "q999_discrepancy",
    "gof_report",
    "qq_envelope",
    "worker_count",
]

Z_CLAMP = 1e-12


@dataclass(frozen=True)
class GofReport:
    """Fit-quality summary for one model on one sample."""

    family: str
    n: int
    loglik: float
    aic: float
    adr: float
    ad2r: float
    q999_discrepancy: Optional[float] = None

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "nll": -self.loglik,
            "aic": self.aic,
            "adr": self.adr,
            "ad2r": self.ad2r,
            "q999_discrepancy": self.q999_discrepancy,
        }


def aic(loglik: float, k: int) -> float:
    """Akaike information criterion ``-2 loglik + 2k``."""
    if k < 1:
        raise DomainError(f"parameter count must be >= 1, got {k}")
    return -2.0 * float(loglik) + 2.0 * k


def _z_values(z) -> np.ndarray:
    z = np.sort(np.asarray(z, dtype=float).ravel())
    if z.size == 0:
        raise DataError("no observations")
    if np.any(np.isnan(z)):
        raise DataError("cdf values contain NaN")
    z = np.clip(z, Z_CLAMP, 1.0 - Z_CLAMP)
    if np.any(z <= 0.0) or np.any(z >= 1.0):
        raise DataError("degenerate cdf values after clamping")
    return z


def adr_from_z(z) -> float:
    """ADR from cdf values (sorted and clamped to [1e-12, 1 - 1e-12])."""
    return float(kernels.ad_stats(_z_values(z))[0])


def ad2r_from_z(z) -> float:
    """AD2R from cdf values (sorted and clamped to [1e-12, 1 - 1e-12])."""
    return float(kernels.ad_stats(_z_values(z))[1])


def adr(data, spec: DistributionSpec) -> float:
    """Right-tail Anderson-Darling statistic of ``data`` under ``spec``."""
    return adr_from_z(cdf(spec, np.asarray(data, dtype=float)))


def ad2r(data, spec: DistributionSpec) -> float:
    """Second-order right-tail Anderson-Darling statistic."""
    return ad2r_from_z(cdf(spec, np.asarray(data, dtype=float)))


def q999_discrepancy(fitted: DistributionSpec, reference: DistributionSpec, p: float = 0.999) -> float:
    """Relative error ``(q_fit - q_ref) / q_ref`` of the ``p`` quantile."""
    qr = float(quantile(reference, p))
    if qr == 0.0:
        raise ZeroDivisionError("reference quantile is zero")
    qf = float(quantile(fitted, p))
    if not (math.isfinite(qf) and math.isfinite(qr)):
        raise DomainError("quantiles must be finite")
    return (qf - qr) / qr


def gof_report(data, spec: DistributionSpec, reference: Optional[DistributionSpec] = None) -> GofReport:
    """AIC, ADR, AD2R and (with a reference law) the quantile discrepancy."""
    x = np.asarray(data, dtype=float)
    ll = float(kernels.loglik(spec.family.code, np.asarray(spec.params), x))
    z = _z_values(cdf(spec, x))
    a, a2 = kernels.ad_stats(z)
    q = q999_discrepancy(spec, reference) if reference is not None else None
    return GofReport(spec.family.value, int(x.size), ll, aic(ll, spec.family.n_params), float(a), float(a2), q)


# -- QQ envelope -------------------------------------------------------------


def worker_count() -> int:
    """Worker processes allowed by ``EVDKIT_THREADS`` (default: 1)."""
    raw = os.environ.get("EVDKIT_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(frozen=True)
class QqEnvelope:
    """Pointwise bootstrap band around a QQ plot.

    ``lower_band``/``upper_band`` are the ``(1 -/+ coverage) / 2`` empirical
    quantiles of the sorted bootstrap samples at each order statistic.
    """

    p: np.ndarray
    theoretical_q: np.ndarray
    empirical_q: np.ndarray
    lower_band: np.ndarray
    upper_band: np.ndarray
    coverage: float = 0.90
    replicates: int = 0

    @property
    def inside(self) -> np.ndarray:
        return (self.empirical_q >= self.lower_band) & (self.empirical_q <= self.upper_band)

    def write_csv(self, path) -> None:
        """CSV with columns ``index,p,theoretical_q,empirical_q,lower,upper``."""
        with Path(path).open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["index", "p", "theoretical_q", "empirical_q", "lower", "upper"])
            for i in range(self.p.size):
                w.writerow(
                    [
                        i + 1,
                        repr(float(self.p[i])),
                        repr(float(self.theoretical_q[i])),
                        repr(float(self.empirical_q[i])),
                        repr(float(self.lower_band[i])),
                        repr(float(self.upper_band[i])),
                    ]
                )


def _boot_block(args):
    spec, n, seed, reps = args
    return np.stack([np.sort(sample(spec, n, [seed, r])) for r in reps])


def qq_envelope(data, spec: DistributionSpec, replicates: int = 1000, coverage: float = 0.90, seed: int = 0) -> QqEnvelope:
    """Parametric-bootstrap QQ envelope of ``data`` against ``spec``.

    Replicate ``r`` is drawn with seed ``(seed, r)`` so the band does not
    depend on how replicates are split across workers.

    Raises
    ------
    DomainError
        ``replicates < 100`` or ``coverage`` outside (0, 1).
    """
    if replicates < 100:
        raise DomainError(f"replicates must be >= 100, got {replicates}")
    if not 0.0 < coverage < 1.0:
        raise DomainError(f"coverage must lie in (0, 1), got {coverage}")
    x = np.sort(np.asarray(data, dtype=float).ravel())
    n = x.size
    if n < 2:
        raise DataError("need at least two observations")
    p = (np.arange(1, n + 1) - 0.5) / n
    theo = np.asarray(quantile(spec, p))
    reps = list(range(replicates))
    workers = min(worker_count(), replicates)
    if workers > 1:
        chunks = [reps[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_boot_block, [(spec, n, seed, c) for c in chunks]))
        boot = np.empty((replicates, n))
        for c, part in zip(chunks, parts):
            boot[c] = part
    else:
        boot = _boot_block((spec, n, seed, reps))
    lo_q, hi_q = (1.0 - coverage) / 2.0, (1.0 + coverage) / 2.0
    lower = np.quantile(boot, lo_q, axis=0)
    upper = np.quantile(boot, hi_q, axis=0)
    return QqEnvelope(p, theo, x, lower, upper, coverage, replicates)
