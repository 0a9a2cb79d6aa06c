"""Simulation study: draw samples from generator laws, fit every competing
family, and collect AIC, ADR, AD2R and .999-quantile discrepancies.

Replicate ``r`` of generator ``g`` is drawn with seed ``(seed, g, r)``,
so each cell is independent of execution order and worker count.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ._family import Family
from .distributions import TABLE3_PRESETS, DistributionSpec, sample
from .errors import DomainError, EvdkitError
from .estimation import FitConfig, fit_gev_pwm, fit_mle, fit_tev_profile
from .gof import gof_report, worker_count

__all__ = ["StudyConfig", "StudyReport", "run_study", "METRICS", "DEFAULT_FITTERS", "PWM_LABEL"]

METRICS = ("loglik", "aic", "adr", "ad2r", "q999_discrepancy", "converged")
DEFAULT_FITTERS = ("EV", "GEV", "EGu", "TEV", "EGa", "GGu", "GLIV", "TCEV")
PWM_LABEL = "GEV-PWM"
# a coarser TEV profile grid keeps desk-scale studies within minutes
DESK_FIT_CONFIG = FitConfig(profile_grid=41)


def _default_generators():
    return tuple(TABLE3_PRESETS.items())


@dataclass(frozen=True)
class StudyConfig:
    """Design of a simulation study.

    Attributes
    ----------
    generators : sequence of (label, DistributionSpec)
        Laws to sample from; defaults to the eight study presets.
    fitters : sequence of family names
        Families fitted by maximum likelihood (TEV through its profile).
    gev_pwm : bool
        Also fit the GEV by probability-weighted moments.
    n_per_sample, n_replicates : int
        Sample size (>= 20) and replicates per generator (>= 10).
    seed : int
        Root of the derived per-replicate seeds.
    fit_config : FitConfig
    """

    generators: Tuple[Tuple[str, DistributionSpec], ...] = field(default_factory=_default_generators)
    fitters: Tuple[str, ...] = DEFAULT_FITTERS
    gev_pwm: bool = True
    n_per_sample: int = 500
    n_replicates: int = 200
    seed: int = 0
    fit_config: FitConfig = DESK_FIT_CONFIG

    def __post_init__(self):
        gens = []
        for item in self.generators:
            if isinstance(item, DistributionSpec):
                gens.append((str(item), item))
            else:
                label, spec = item
                if not isinstance(spec, DistributionSpec):
                    raise DomainError(f"generator {label!r} is not a DistributionSpec")
                gens.append((str(label), spec))
        if not gens:
            raise DomainError("at least one generator is required")
        labels = [g[0] for g in gens]
        if len(set(labels)) != len(labels):
            raise DomainError(f"generator labels must be unique, got {labels}")
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "fitters", tuple(Family.parse(f).value for f in self.fitters))
        if self.n_per_sample < 20:
            raise DomainError(f"n_per_sample must be >= 20, got {self.n_per_sample}")
        if self.n_replicates < 10:
            raise DomainError(f"n_replicates must be >= 10, got {self.n_replicates}")

    @property
    def fitter_labels(self) -> Tuple[str, ...]:
        labels = tuple("GEV-MLE" if f == "GEV" else f for f in self.fitters)
        return labels + ((PWM_LABEL,) if self.gev_pwm else ())


def _fit_one(label: str, x: np.ndarray, cfg: FitConfig):
    if label == PWM_LABEL:
        return fit_gev_pwm(x, cfg)
    fam = Family.parse("GEV" if label == "GEV-MLE" else label)
    if fam is Family.TEV:
        return fit_tev_profile(x, cfg)
    return fit_mle(x, fam, cfg)


def _replicate(args):
    g, r, spec, labels, n, seed, cfg = args
    x = sample(spec, n, [seed, g, r])
    out = {}
    for label in labels:
        try:
            res = _fit_one(label, x, cfg)
            rep = gof_report(x, res.spec, reference=spec)
            out[label] = (rep.loglik, rep.aic, rep.adr, rep.ad2r, rep.q999_discrepancy, 1.0 if res.converged else 0.0)
        except (EvdkitError, ArithmeticError, ValueError, FloatingPointError):
            out[label] = None
    return g, r, out


@dataclass
class StudyReport:
    """Per-cell metric sequences (one entry per replicate, NaN on failure)."""

    config: StudyConfig
    cells: Dict[Tuple[str, str], Dict[str, np.ndarray]]
    failures: Dict[Tuple[str, str], int]

    def metric(self, generator: str, fitter: str, name: str) -> np.ndarray:
        return self.cells[(generator, fitter)][name]

    def summary(self) -> dict:
        """Five-number summaries (NaN-aware) per cell and metric."""
        out = {}
        for (gen, fit), metrics in self.cells.items():
            conv = metrics["converged"]
            cell = {"failures": self.failures[(gen, fit)], "nonconverged": int(np.sum(conv == 0.0))}
            for name, v in metrics.items():
                ok = v[~np.isnan(v)]
                if ok.size:
                    q = np.quantile(ok, [0.0, 0.25, 0.5, 0.75, 1.0])
                    cell[name] = dict(zip(("min", "q1", "median", "q3", "max"), (float(t) for t in q)))
                else:
                    cell[name] = None
            out.setdefault(gen, {})[fit] = cell
        return out

    def to_csv(self) -> str:
        """Long format ``generator,fitter,replicate,metric,value``."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["generator", "fitter", "replicate", "metric", "value"])
        for (gen, fit), metrics in self.cells.items():
            for r in range(self.config.n_replicates):
                for name in METRICS:
                    w.writerow([gen, fit, r, name, repr(float(metrics[name][r]))])
        return buf.getvalue()

    def to_json(self) -> str:
        cfg = self.config
        payload = {
            "config": {
                "generators": {label: {"family": s.family.value, "params": list(s.params)} for label, s in cfg.generators},
                "fitters": list(cfg.fitter_labels),
                "n_per_sample": cfg.n_per_sample,
                "n_replicates": cfg.n_replicates,
                "seed": cfg.seed,
            },
            "summary": self.summary(),
        }
        return json.dumps(_finite(payload), indent=2, sort_keys=True, allow_nan=False, default=_json_default) + "\n"

    def write(self, out_dir) -> Tuple[Path, Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        csv_path, json_path = out / "study.csv", out / "study_summary.json"
        csv_path.write_text(self.to_csv(), encoding="utf-8")
        json_path.write_text(self.to_json(), encoding="utf-8")
        return csv_path, json_path


def _finite(obj):
    """Replace non-finite floats by strings so the JSON stays standard."""
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def run_study(config: StudyConfig = None, progress=None) -> StudyReport:
    """Run the simulation study described by ``config``.

    ``progress``, if given, is called with ``(done, total)`` after each
    replicate.  Parallelism follows ``EVDKIT_THREADS``; the report does
    not depend on it.
    """
    cfg = config or StudyConfig()
    labels = cfg.fitter_labels
    n_rep = cfg.n_replicates
    cells = {
        (gen, fit): {m: np.full(n_rep, np.nan) for m in METRICS} for gen, _ in cfg.generators for fit in labels
    }
    failures = {key: 0 for key in cells}
    jobs = [
        (g, r, spec, labels, cfg.n_per_sample, cfg.seed, cfg.fit_config)
        for g, (_, spec) in enumerate(cfg.generators)
        for r in range(n_rep)
    ]
    workers = worker_count()

    def consume(results):
        for done, (g, r, out) in enumerate(results, start=1):
            gen = cfg.generators[g][0]
            for label, vals in out.items():
                if vals is None:
                    failures[(gen, label)] += 1
                    continue
                cell = cells[(gen, label)]
                for name, v in zip(METRICS, vals):
                    cell[name][r] = math.nan if v is None else v
            if progress is not None:
                progress(done, len(jobs))

    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            consume(ex.map(_replicate, jobs, chunksize=4))
    else:
        consume(map(_replicate, jobs))
    return StudyReport(cfg, cells, failures)
