"""Command line entry point.

Commands: crash-rate, threshold, overhead, ideal, decoder-audit.  Flags
override config-file keys; all randomness flows from --seed.  Output files
are written atomically (complete or absent).

Exit statuses: 0 success, 2 usage error, 3 resource-budget exhaustion,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import tempfile
from typing import Optional

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4

SWEEP_COLUMNS = [
    "gamma", "scheme", "checks", "rounds", "crashes", "crash_rate",
    "ci_low", "ci_high", "mean_time_units", "rejections_l1", "rejections_l2",
    "aborts", "xz_correlation", "seed",
]
ANCILLA_COLUMNS = ["anc_delivered", "anc_phys_rate", "anc_log_errors", "anc_log_rate"]
OVERHEAD_COLUMNS = [
    "gamma", "scheme", "checks", "delivered", "attempts", "mean_time_units",
    "overhead", "exceeds_budget", "seed",
]


class UsageError(ValueError):
    pass


def _parse_kv_config(path: str) -> dict[str, str]:
    """Flat `key = value` config file; '#' starts a comment."""
    out: dict[str, str] = {}
    with open(path) as fh:
        for ln, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{ln}: expected 'key = value'")
            k, v = line.split("=", 1)
            out[k.strip().replace("-", "_")] = v.strip()
    return out


_CONFIG_KEYS = {
    "scheme": str, "checks": int, "trials": int, "rounds": int, "seed": int,
    "gamma": str, "gamma_min": float, "gamma_max": float, "points": int,
    "pool_cap": int, "budget": int, "workers": int, "output": str,
    "format": str, "ancilla_stats": bool, "burnin": int,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="steanesim",
        description="Monte Carlo crash-rate experiments for the [[49,1,9]] "
                    "concatenated Steane code.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, scheme=True):
        sp.add_argument("--config", help="flat key = value config file")
        if scheme:
            sp.add_argument("--scheme", choices=["steane", "reject", "ideal"])
        sp.add_argument("--checks", type=int, choices=[3, 4])
        sp.add_argument("--gamma", help="comma-separated gamma list")
        sp.add_argument("--gamma-min", type=float)
        sp.add_argument("--gamma-max", type=float)
        sp.add_argument("--points", type=int)
        sp.add_argument("--trials", type=int)
        sp.add_argument("--rounds", type=int)
        sp.add_argument("--burnin", type=int)
        sp.add_argument("--seed", type=int)
        sp.add_argument("--pool-cap", type=int)
        sp.add_argument("--budget", type=int)
        sp.add_argument("--workers", type=int)
        sp.add_argument("--output", "-o")
        sp.add_argument("--format", choices=["csv", "json"])

    sp = sub.add_parser("crash-rate", help="per-round crash rate sweep")
    common(sp)
    sp.add_argument("--ancilla-stats", action="store_true", default=None,
                    help="append per-ancilla residual error-rate columns")
    sp = sub.add_parser("threshold", help="sweep plus slope-3/4 crossing")
    common(sp)
    sp = sub.add_parser("overhead", help="normalized ancilla time units")
    common(sp)
    sp = sub.add_parser("ideal", help="crash-rate sweep with ideal ancillas")
    common(sp, scheme=False)
    sp = sub.add_parser("decoder-audit", help="exhaustive decoder oracles")
    sp.add_argument("--output", "-o")
    sp.add_argument("--format", choices=["csv", "json"])
    return p


_DEFAULTS = {
    "scheme": "reject", "checks": 4, "trials": 10_000, "rounds": 20,
    "burnin": 3, "seed": 0, "pool_cap": 1024, "budget": 1_000_000,
    "workers": None, "output": None, "format": "csv", "ancilla_stats": False,
    "gamma": None, "gamma_min": None, "gamma_max": None, "points": None,
}


def resolve_config(args: argparse.Namespace) -> dict:
    """Defaults, then config file, then flags; validates the gamma grid."""
    cfg = dict(_DEFAULTS)
    path = getattr(args, "config", None)
    if path:
        for k, v in _parse_kv_config(path).items():
            if k not in _CONFIG_KEYS:
                raise UsageError(f"unknown config key {k!r}")
            ty = _CONFIG_KEYS[k]
            if ty is bool:
                cfg[k] = v.lower() in ("1", "true", "yes")
            else:
                try:
                    cfg[k] = ty(v)
                except ValueError:
                    raise UsageError(f"bad value for config key {k!r}: {v!r}")
    for k in cfg:
        v = getattr(args, k, None)
        if v is not None:
            cfg[k] = v
    cfg["command"] = args.command

    if cfg["gamma"] is not None:
        try:
            grid = [float(g) for g in str(cfg["gamma"]).split(",") if g.strip()]
        except ValueError:
            raise UsageError(f"bad --gamma list: {cfg['gamma']!r}")
    elif cfg["gamma_min"] is not None or cfg["gamma_max"] is not None:
        lo, hi, n = cfg["gamma_min"], cfg["gamma_max"], cfg["points"] or 5
        if lo is None or hi is None:
            raise UsageError("--gamma-min and --gamma-max must be given together")
        if not (0.0 < lo < hi):
            raise UsageError(f"need 0 < gamma-min < gamma-max, got {lo} .. {hi}")
        if n < 2:
            raise UsageError("--points must be at least 2")
        grid = [lo * (hi / lo) ** (i / (n - 1)) for i in range(n)]
    else:
        grid = [1e-3, 3e-3]
    for g in grid:
        if not 0.0 <= g <= 1.0:
            raise UsageError(f"gamma {g} outside [0, 1]")
    if args.command == "threshold" and len(grid) < 2:
        raise UsageError("threshold needs a grid of at least 2 points")
    cfg["grid"] = grid
    return cfg


def _atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _emit(rows: list[dict], columns: list[str], cfg: dict, summary: str) -> None:
    path = cfg.get("output")
    if path:
        outdir = os.environ.get("STEANESIM_OUTDIR")
        if outdir and not os.path.isabs(path):
            path = os.path.join(outdir, path)
        if cfg.get("format", "csv") == "json":
            text = json.dumps(
                {"columns": columns,
                 "rows": [{c: r.get(c) for c in columns} for r in rows]},
                indent=2) + "\n"
        else:
            import io

            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(columns)
            for r in rows:
                w.writerow([_format_value(r.get(c)) for c in columns])
            text = buf.getvalue()
        _atomic_write(path, text)
    print(summary)


def _sweep_rows(results, extra: Optional[dict] = None) -> list[dict]:
    rows = []
    for r in results:
        d = {c: getattr(r, c) for c in SWEEP_COLUMNS}
        if extra is not None:
            d.update(extra.get(r.gamma, {}))
        rows.append(d)
    return rows


def cmd_crash_rate(cfg: dict) -> int:
    from . import harness

    results = harness.run_sweep(
        cfg["grid"], cfg["scheme"], cfg["trials"], cfg["rounds"], cfg["seed"],
        checks=cfg["checks"], burnin=cfg["burnin"], pool_cap=cfg["pool_cap"],
        budget=cfg["budget"], workers=cfg["workers"])
    columns = list(SWEEP_COLUMNS)
    extra = None
    if cfg["ancilla_stats"]:
        columns += ANCILLA_COLUMNS
        pts = harness.ancilla_run(
            cfg["grid"], cfg["scheme"], cfg["trials"], cfg["seed"],
            checks=cfg["checks"], budget=cfg["budget"], workers=cfg["workers"])
        extra = {p.gamma: {
            "anc_delivered": p.delivered,
            "anc_phys_rate": p.phys_error_rate,
            "anc_log_errors": p.logical_errors,
            "anc_log_rate": p.logical_error_rate,
        } for p in pts}
    summary = " ".join(f"{r.gamma:g}:{r.crash_rate:.3e}" for r in results)
    _emit(_sweep_rows(results, extra), columns, cfg, f"crash_rate {summary}")
    return EXIT_OK


def cmd_threshold(cfg: dict) -> int:
    from . import harness

    results = harness.run_sweep(
        cfg["grid"], cfg["scheme"], cfg["trials"], cfg["rounds"], cfg["seed"],
        checks=cfg["checks"], burnin=cfg["burnin"], pool_cap=cfg["pool_cap"],
        budget=cfg["budget"], workers=cfg["workers"])
    est = harness.estimate_threshold(results)
    _emit(_sweep_rows(results), SWEEP_COLUMNS, cfg,
          f"gamma_star {est.gamma_star:.4e}" if est.crossed
          else "gamma_star no-crossing")
    return EXIT_OK


def cmd_overhead(cfg: dict) -> int:
    from . import harness

    pts = harness.measure_overhead(
        cfg["grid"], cfg["scheme"], cfg["trials"], cfg["seed"],
        checks=cfg["checks"], budget=cfg["budget"], workers=cfg["workers"])
    rows = []
    for p in pts:
        rows.append({
            "gamma": p.gamma, "scheme": p.scheme, "checks": p.checks,
            "delivered": p.delivered, "attempts": p.attempts,
            "mean_time_units": p.mean_time_units, "overhead": p.overhead,
            "exceeds_budget": 0 if p.overhead is not None else 1,
            "seed": cfg["seed"],
        })
    summary = " ".join(
        f"{p.gamma:g}:{p.overhead:.3f}" if p.overhead is not None
        else f"{p.gamma:g}:exceeds-budget" for p in pts)
    _emit(rows, OVERHEAD_COLUMNS, cfg, f"overhead {summary}")
    return EXIT_OK


def cmd_ideal(cfg: dict) -> int:
    from . import harness

    results = harness.run_ideal_experiment(
        cfg["grid"], cfg["trials"], cfg["rounds"], cfg["seed"],
        checks=cfg["checks"], burnin=cfg["burnin"], pool_cap=cfg["pool_cap"],
        budget=cfg["budget"], workers=cfg["workers"])
    summary = " ".join(f"{r.gamma:g}:{r.crash_rate:.3e}" for r in results)
    _emit(_sweep_rows(results), SWEEP_COLUMNS, cfg, f"crash_rate {summary}")
    return EXIT_OK


def cmd_decoder_audit(cfg: dict) -> int:
    from . import audit

    report = audit.run_audit()
    lines = [f"{name}: {'PASS' if ok else 'FAIL'}" for name, ok in report]
    rows = [{"check": name, "result": "PASS" if ok else "FAIL"}
            for name, ok in report]
    path = cfg.get("output")
    if path:
        _emit(rows, ["check", "result"], cfg, "\n".join(lines))
    else:
        print("\n".join(lines))
    return EXIT_OK if all(ok for _, ok in report) else EXIT_INTERNAL


_COMMANDS = {
    "crash-rate": cmd_crash_rate,
    "threshold": cmd_threshold,
    "overhead": cmd_overhead,
    "ideal": cmd_ideal,
    "decoder-audit": cmd_decoder_audit,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        if args.command == "decoder-audit":
            cfg = {"command": "decoder-audit",
                   "output": getattr(args, "output", None),
                   "format": getattr(args, "format", None) or "csv"}
        else:
            cfg = resolve_config(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](cfg)
    except Exception as e:
        from .ancilla import ResourceExhausted

        if isinstance(e, ResourceExhausted):
            print(f"error: {e}", file=sys.stderr)
            return EXIT_BUDGET
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
