"""Command-line interface: ``evdkit <command> [options]``.

Commands: fit, gof, simulate, quantile, tail, envelope, profile.  Every
command prints a report (``--format json`` or ``text``) of the form
``{command, inputs, results, warnings}``.

Exit codes: 0 success, 2 configuration error, 3 data error, 4 numerical
failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import __version__
from ._family import Family
from .dataio import ADJUST_METHODS, load_embedded_wind, read_csv, seasonal_adjust
from .distributions import PRESETS, TABLE3_PRESETS, DistributionSpec, quantile
from .errors import DataError, DomainError, EvdkitError, NonConvergenceError
from .estimation import FitConfig, default_bounds, fit_gev_pwm, fit_mle, fit_tev_profile, profile_loglik_curve
from .gof import aic, gof_report, qq_envelope
from .montecarlo import DESK_FIT_CONFIG, StudyConfig, run_study
from .tails import rigby_classify

EXIT_OK, EXIT_CONFIG, EXIT_DATA, EXIT_NUMERIC = 0, 2, 3, 4

GOF_FAMILIES = ("EV", "GEV-MLE", "GEV-PWM", "EGu", "TEV", "GTIEV3", "EGa", "GGu", "GLIV", "TCEV")

# JSON shapes of the ``results`` payloads, checked by the test-suite
_NUM = {"type": ["number", "string", "null"]}
_FIT_RESULT = {
    "type": "object",
    "required": ["family", "method", "params", "std_errors", "loglik", "aic", "return_level", "converged"],
    "properties": {
        "family": {"type": "string"},
        "method": {"enum": ["MLE", "PWM", "ProfileMLE"]},
        "params": {"type": "object", "additionalProperties": {"type": "number"}},
        "std_errors": {"type": "object", "additionalProperties": _NUM},
        "loglik": _NUM,
        "aic": _NUM,
        "return_level": {"type": "object", "required": ["p", "value"]},
        "converged": {"type": "boolean"},
    },
}
SCHEMAS = {
    "report": {
        "type": "object",
        "required": ["command", "inputs", "results", "warnings"],
        "properties": {
            "command": {"type": "string"},
            "inputs": {"type": "object"},
            "warnings": {"type": "array", "items": {"type": "string"}},
        },
    },
    "fit": _FIT_RESULT,
    "gof": {
        "type": "object",
        "required": ["rows"],
        "properties": {
            "rows": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["family", "nll", "aic", "adr", "ad2r"],
                    "properties": {"family": {"type": "string"}, "nll": _NUM, "aic": _NUM, "adr": _NUM, "ad2r": _NUM},
                },
            }
        },
    },
    "simulate": {
        "type": "object",
        "required": ["files", "cells"],
        "properties": {"files": {"type": "array", "items": {"type": "string"}}, "cells": {"type": "array"}},
    },
    "quantile": {
        "type": "object",
        "required": ["family", "params", "quantiles"],
        "properties": {
            "quantiles": {
                "type": "array",
                "items": {"type": "object", "required": ["p", "value"], "properties": {"p": {"type": "number"}, "value": _NUM}},
            }
        },
    },
    "tail": {
        "type": "object",
        "required": ["family", "tail_index", "rigby_type", "k_values", "verdict_vs_gumbel"],
        "properties": {
            "family": {"type": "string"},
            "tail_index": {"type": "number"},
            "rigby_type": {"enum": ["I", "II", "III", None]},
            "k_values": {"type": "object", "additionalProperties": {"type": "number"}},
            "verdict_vs_gumbel": {"type": "string"},
        },
    },
    "envelope": {
        "type": "object",
        "required": ["file", "family", "params", "replicates", "coverage", "fraction_inside", "max_outside_upper"],
    },
    "profile": {
        "type": "object",
        "required": ["family", "parameter", "points"],
        "properties": {
            "points": {
                "type": "array",
                "items": {"type": "object", "required": ["value", "loglik", "ok"]},
            }
        },
    },
}


class ConfigError(EvdkitError):
    """Invalid command-line configuration."""


# -- argument helpers ------------------------------------------------------------


def _floats(text: str, what: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"{what}: expected comma-separated numbers, got {text!r}") from None


def _bounds(text: Optional[str], family: Family):
    if text is None:
        return None
    pairs = []
    for chunk in text.split(","):
        lo, sep, hi = chunk.partition(":")
        if not sep:
            raise ConfigError(f"--bounds: expected lo:hi pairs, got {chunk!r}")
        try:
            pairs.append((float(lo) if lo.strip() else -math.inf, float(hi) if hi.strip() else math.inf))
        except ValueError:
            raise ConfigError(f"--bounds: cannot parse {chunk!r}") from None
    if len(pairs) != family.n_params:
        raise ConfigError(f"--bounds: {family.value} needs {family.n_params} pairs, got {len(pairs)}")
    return pairs


def _family(text: Optional[str]) -> Family:
    if not text:
        raise ConfigError("--family is required")
    try:
        return Family.parse(text)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _spec(args) -> DistributionSpec:
    if args.preset and not args.params:
        if args.preset not in PRESETS:
            raise ConfigError(f"unknown preset {args.preset!r}; choose from {sorted(PRESETS)}")
        return PRESETS[args.preset]
    fam = _family(args.family)
    if not args.params:
        raise ConfigError("--params is required")
    return DistributionSpec(fam, _floats(args.params, "--params"))


def _load_data(args, warnings: List[str]) -> np.ndarray:
    source = args.data or "embedded"
    adjust = args.adjust
    if source == "embedded":
        series = load_embedded_wind()
        if adjust is None:
            adjust = "monthly_median"
        if adjust == "monthly_median":
            warnings.append(
                "embedded wind data adjusted by monthly medians; the published analysis used a robust "
                "seasonal-trend (stl) decomposition, so estimates differ slightly"
            )
    else:
        path = Path(source)
        if not path.exists():
            raise DataError(f"data file not found: {path}")
        series = _read_any(path)
        if adjust is None:
            adjust = "none"
        if not hasattr(series, "month"):
            if adjust != "none":
                raise ConfigError("--adjust monthly_median needs year,month,value columns")
            return series
    args.adjust = adjust
    return seasonal_adjust(series, adjust)


def _read_any(path: Path):
    """A year,month,value series, or a single ``value`` column."""
    with path.open(newline="", encoding="utf-8") as fh:
        header = next(csv.reader(fh), [])
    cols = [h.strip() for h in header]
    if {"year", "month", "value"} <= set(cols):
        return read_csv(path)
    if "value" in cols:
        idx = cols.index("value")
        vals = []
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            next(reader)
            for lineno, row in enumerate(reader, start=2):
                try:
                    vals.append(float(row[idx]))
                except (ValueError, IndexError):
                    raise DataError(f"{path}: line {lineno}, column 'value': cannot parse {row!r}") from None
        return np.asarray(vals)
    raise DataError(f"{path}: expected a 'value' column (optionally with 'year' and 'month'), got {cols}")


def _fit_config(args, family: Family) -> FitConfig:
    return FitConfig(bounds=_bounds(getattr(args, "bounds", None), family))


def _do_fit(x, family: Family, method: str, cfg: FitConfig):
    if method == "pwm":
        if family is not Family.GEV:
            raise ConfigError("--method pwm is only available for the GEV family")
        return fit_gev_pwm(x, cfg)
    if method == "profile":
        if family is not Family.TEV:
            raise ConfigError("--method profile is only available for the TEV family")
        return fit_tev_profile(x, cfg)
    if family is Family.TEV:
        # the profile guards against TEV's local maxima
        return fit_tev_profile(x, cfg)
    return fit_mle(x, family, cfg)


def _num(v):
    if v is None:
        return None
    v = float(v)
    return v if math.isfinite(v) else repr(v)


# -- commands ---------------------------------------------------------------------


def cmd_fit(args, warnings):
    fam = _family(args.family)
    x = _load_data(args, warnings)
    method = args.method or "mle"
    res = _do_fit(x, fam, method, _fit_config(args, fam))
    p = args.p if args.p is not None else 0.999
    out = res.as_dict()
    out["std_errors"] = {k: _num(v) for k, v in out["std_errors"].items()}
    out["loglik"] = _num(res.loglik)
    out["aic"] = _num(aic(res.loglik, fam.n_params))
    out["return_level"] = {"p": p, "value": _num(quantile(res.spec, p))}
    out["n"] = int(x.size)
    return out


def _text_fit(r):
    lines = [f"{r['family']} ({r['method']}), n={r['n']}", f"{'param':>8} {'estimate':>14} {'std.err':>12}"]
    for k, v in r["params"].items():
        se = r["std_errors"][k]
        lines.append(f"{k:>8} {v:14.6f} {('-' if se is None or isinstance(se, str) else f'{se:12.6f}'):>12}")
    lines.append(f"loglik {r['loglik']}  AIC {r['aic']}  x_{r['return_level']['p']} = {r['return_level']['value']}")
    return "\n".join(lines)


def cmd_gof(args, warnings):
    x = _load_data(args, warnings)
    names = GOF_FAMILIES if not args.family or args.family.lower() == "all" else [s.strip() for s in args.family.split(",")]
    rows = []
    for name in names:
        try:
            if name.upper() == "GEV-PWM":
                res = fit_gev_pwm(x)
            else:
                fam = Family.parse("GEV" if name.upper() == "GEV-MLE" else name)
                res = _do_fit(x, fam, "mle", FitConfig())
            rep = gof_report(x, res.spec)
        except ValueError as exc:
            if isinstance(exc, (DomainError, DataError)) or "unknown family" in str(exc):
                warnings.append(f"{name}: {exc}")
                continue
            raise
        except (EvdkitError, ArithmeticError) as exc:
            warnings.append(f"{name}: {exc}")
            continue
        rows.append(
            {
                "family": name if name.upper().startswith("GEV-") else res.family.value,
                "nll": _num(-rep.loglik),
                "aic": _num(rep.aic),
                "adr": _num(rep.adr),
                "ad2r": _num(rep.ad2r),
                "params": list(res.params),
            }
        )
    rows.sort(key=lambda r: (isinstance(r["aic"], str), r["aic"] if not isinstance(r["aic"], str) else 0.0))
    return {"n": int(x.size), "rows": rows}


def _text_gof(r):
    lines = [f"{'family':>8} {'-loglik':>10} {'AIC':>10} {'ADR':>8} {'AD2R':>10}"]
    for row in r["rows"]:
        lines.append(f"{row['family']:>8} {row['nll']:10.2f} {row['aic']:10.2f} {row['adr']:8.3f} {row['ad2r']:10.2f}")
    return "\n".join(lines)


def cmd_simulate(args, warnings):
    preset = args.preset or "table3"
    if preset == "table3":
        gens = tuple(TABLE3_PRESETS.items())
    elif preset in PRESETS:
        gens = ((preset, PRESETS[preset]),)
    else:
        raise ConfigError(f"unknown preset {preset!r}; use 'table3' or one of {sorted(PRESETS)}")
    fitters = StudyConfig.__dataclass_fields__["fitters"].default
    if args.family:
        fitters = tuple(s.strip() for s in args.family.split(","))
    try:
        cfg = StudyConfig(
            generators=gens,
            fitters=fitters,
            n_per_sample=args.n,
            n_replicates=args.replicates if args.replicates is not None else 200,
            seed=args.seed,
            fit_config=DESK_FIT_CONFIG,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    report = run_study(cfg)
    out_dir = Path(args.out or "evdkit_out")
    files = [str(p) for p in report.write(out_dir)]
    cells = []
    for gen, fits in report.summary().items():
        for fit, cell in fits.items():
            med = {m: (cell[m]["median"] if cell.get(m) else None) for m in ("aic", "adr", "ad2r", "q999_discrepancy")}
            cells.append({"generator": gen, "fitter": fit, "failures": cell["failures"], **{k: _num(v) for k, v in med.items()}})
    return {"files": files, "cells": cells}


def _text_simulate(r):
    lines = [f"wrote {', '.join(r['files'])}", f"{'generator':>10} {'fitter':>8} {'med AIC':>10} {'med ADR':>8} {'med AD2R':>10} {'med q999':>9}"]
    for c in r["cells"]:
        f = lambda v, w, d: f"{v:{w}.{d}f}" if isinstance(v, float) else f"{str(v):>{w}}"
        lines.append(
            f"{c['generator']:>10} {c['fitter']:>8} {f(c['aic'], 10, 2)} {f(c['adr'], 8, 3)} {f(c['ad2r'], 10, 2)} {f(c['q999_discrepancy'], 9, 4)}"
        )
    return "\n".join(lines)


def cmd_quantile(args, warnings):
    spec = _spec(args)
    ps = _floats(str(args.p), "--p") if args.p is not None else [0.999]
    vals = np.atleast_1d(quantile(spec, np.asarray(ps)))
    return {
        "family": spec.family.value,
        "params": list(spec.params),
        "quantiles": [{"p": p, "value": _num(v)} for p, v in zip(ps, vals)],
    }


def _text_quantile(r):
    return "\n".join(f"Q({q['p']}) = {q['value']}" for q in r["quantiles"])


def cmd_tail(args, warnings):
    tc = rigby_classify(_spec(args))
    d = tc.as_dict()
    return {k: d[k] for k in ("family", "tail_index", "rigby_type", "k_values", "verdict_vs_gumbel", "notes")}


def _text_tail(r):
    ks = ", ".join(f"{k}={v:g}" for k, v in r["k_values"].items())
    return f"{r['family']}: tail index {r['tail_index']:g}, Rigby type {r['rigby_type']} ({ks}), vs Gumbel: {r['verdict_vs_gumbel']}"


def cmd_envelope(args, warnings):
    fam = _family(args.family)
    x = _load_data(args, warnings)
    res = _do_fit(x, fam, args.method or "mle", _fit_config(args, fam))
    reps = args.replicates if args.replicates is not None else 1000
    env = qq_envelope(x, res.spec, replicates=reps, coverage=args.coverage, seed=args.seed)
    out_dir = Path(args.out or "evdkit_out")
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "envelope.csv"
    env.write_csv(path)
    above = env.empirical_q > env.upper_band
    return {
        "file": str(path),
        "family": fam.value,
        "method": res.method.value,
        "params": list(res.params),
        "replicates": reps,
        "coverage": args.coverage,
        "fraction_inside": float(env.inside.mean()),
        "max_outside_upper": bool(above[-1]),
    }


def _text_envelope(r):
    return (
        f"wrote {r['file']}: {r['family']} fit, {r['replicates']} replicates, "
        f"{100 * r['fraction_inside']:.1f}% of points inside the {r['coverage']:.0%} band"
    )


def _default_grid(fam: Family, index: int):
    if fam is Family.TEV:
        return np.linspace(-1.0, 1.0, 201)
    if fam is Family.GTIEV3:
        return np.logspace(0.0, 4.0, 41)
    if fam is Family.GEV:
        return np.linspace(-0.6, 0.6, 121)
    if fam in (Family.EGu, Family.EGa, Family.GGu):
        return np.linspace(0.2, 3.0, 57)
    if fam is Family.GLIV:
        return np.linspace(0.05, 1.0, 39) if index == 2 else np.linspace(0.5, 20.0, 40)
    if fam is Family.TCEV:
        return np.linspace(0.001, 0.2, 100)
    raise ConfigError(f"{fam.value} has no shape parameter to profile; pass --grid")


def _grid(text: str):
    parts = text.split(":")
    try:
        if len(parts) in (3, 4):
            lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
            if len(parts) == 4 and parts[3] == "log":
                return np.logspace(math.log10(lo), math.log10(hi), n)
            return np.linspace(lo, hi, n)
        return np.asarray(_floats(text, "--grid"))
    except ValueError:
        raise ConfigError(f"--grid: expected lo:hi:n[:log] or a comma list, got {text!r}") from None


def cmd_profile(args, warnings):
    fam = _family(args.family)
    x = _load_data(args, warnings)
    names = fam.param_names
    if args.param is None:
        index = 2 if fam.n_params > 2 else 1
    elif args.param in names:
        index = names.index(args.param)
    else:
        raise ConfigError(f"--param must be one of {names}, got {args.param!r}")
    grid = _grid(args.grid) if args.grid else _default_grid(fam, index)
    if fam is Family.TEV:
        grid = np.clip(grid, default_bounds(fam)[2][0], 1.0)
    points = profile_loglik_curve(x, fam, index, grid, _fit_config(args, fam))
    out_dir = Path(args.out or "evdkit_out")
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "profile.csv"
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([names[index], "loglik", *names, "ok"])
        for pt in points:
            w.writerow([repr(pt.value), repr(pt.loglik), *(repr(v) for v in (pt.params or (math.nan,) * len(names))), int(pt.ok)])
    return {
        "file": str(path),
        "family": fam.value,
        "parameter": names[index],
        "points": [{"value": pt.value, "loglik": _num(pt.loglik), "ok": pt.ok} for pt in points],
    }


def _text_profile(r):
    lines = [f"{r['parameter']:>14} {'loglik':>14}"]
    lines += [f"{p['value']:14.6g} {p['loglik']:>14}" for p in r["points"]]
    return "\n".join(lines)


COMMANDS = {
    "fit": (cmd_fit, _text_fit),
    "gof": (cmd_gof, _text_gof),
    "simulate": (cmd_simulate, _text_simulate),
    "quantile": (cmd_quantile, _text_quantile),
    "tail": (cmd_tail, _text_tail),
    "envelope": (cmd_envelope, _text_envelope),
    "profile": (cmd_profile, _text_profile),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evdkit", description="Gumbel-family extreme value toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data", default=None, help="'embedded' (default) or a CSV path")
    common.add_argument("--adjust", choices=ADJUST_METHODS, default=None, help="seasonal adjustment")
    common.add_argument("--family", default=None, help="family name (gof/simulate accept a comma list)")
    common.add_argument("--method", choices=("mle", "pwm", "profile"), default=None)
    common.add_argument("--params", default=None, help="comma-separated parameters, e.g. 0,1,0.1")
    common.add_argument("--p", default=None, help="probability (quantile accepts a comma list)")
    common.add_argument("--bounds", default=None, help="lo:hi pairs per parameter, comma-separated")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--replicates", type=int, default=None)
    common.add_argument("--preset", default=None, help="'table3' or a named preset")
    common.add_argument("--out", default=None, help="output directory")
    common.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "simulate":
            sp.add_argument("--n", type=int, default=500, help="sample size per replicate")
        if name == "envelope":
            sp.add_argument("--coverage", type=float, default=0.90)
        if name == "profile":
            sp.add_argument("--param", default=None, help="parameter name to profile (default: first shape)")
            sp.add_argument("--grid", default=None, help="lo:hi:n[:log] or comma list")
    return parser


def _inputs(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if v is not None and k != "command"}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "fit" and args.p is not None:
        try:
            args.p = float(args.p)
        except ValueError:
            print(f"evdkit: error: --p must be a number, got {args.p!r}", file=sys.stderr)
            return EXIT_CONFIG
    run, text = COMMANDS[args.command]
    warnings: List[str] = []
    try:
        results = run(args, warnings)
    except (ConfigError, DomainError) as exc:
        print(f"evdkit: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataError as exc:
        print(f"evdkit: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (NonConvergenceError, ArithmeticError) as exc:
        print(f"evdkit: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    report = {"command": args.command, "inputs": _inputs(args), "results": results, "warnings": warnings}
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for w in warnings:
            print(f"warning: {w}", file=sys.stderr)
        print(text(results))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
