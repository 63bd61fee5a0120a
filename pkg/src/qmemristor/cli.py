"""Command-line driver.

Verbs: ``run`` (one simulation), ``scan`` (coupling-strength sweep),
``export-qasm`` (circuit text), ``presets`` (catalog listing). Exit codes:
0 success, 2 configuration error, 3 numerical failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import qasm, runner
from .config import RunConfig, apply_overrides, load_config
from .errors import ConfigError, NumericsError
from .presets import PRESET_NAMES, PRESET_NOTES, preset


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmemristor",
        description="Digital simulation of dissipative two-level quantum memristors.")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute one configured simulation")
    _add_selection(run_p)
    _add_overrides(run_p)
    run_p.add_argument("--out", default="out", help="output directory root")

    scan_p = sub.add_parser("scan", help="sweep the coupling strength of a coupled run")
    _add_selection(scan_p)
    _add_overrides(scan_p, with_delta=False)
    scan_p.add_argument("--out", default="out", help="output directory root")
    scan_p.add_argument("--delta", dest="delta_list", default=None,
                        help="comma-separated coupling strengths "
                             "(default: 10 points in [0.1, 1.0])")
    scan_p.add_argument("--pinch-tol", type=float, default=runner.DEFAULT_PINCH_TOL,
                        help="pinch pass/fail threshold on normalized loops")

    qasm_p = sub.add_parser("export-qasm", help="write the run's circuit as OpenQASM 2.0")
    _add_selection(qasm_p)
    _add_overrides(qasm_p)
    qasm_p.add_argument("--out", default="out", help="output directory root")
    qasm_p.add_argument("--axis", choices=("x", "y"), default="x",
                        help="terminal measurement basis")
    qasm_p.add_argument("--ancilla-cap", type=int, default=qasm.DEFAULT_ANCILLA_CAP,
                        help="largest allowed total ancilla register")

    sub.add_parser("presets", help="list the preset catalog")
    return parser


def _add_selection(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--preset", choices=PRESET_NAMES, help="preset name")
    group.add_argument("--config", help="path to a key-value config file")


def _add_overrides(p: argparse.ArgumentParser, with_delta: bool = True) -> None:
    p.add_argument("--shots", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--steps-per-period", type=int, default=None)
    p.add_argument("--periods", type=int, default=None)
    if with_delta:
        p.add_argument("--delta", type=float, default=None)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true",
                      help="exact expectation values (no shot noise)")
    mode.add_argument("--sampled", action="store_true",
                      help="finite-shot binomial sampling")


def _select_config(args) -> RunConfig:
    cfg = preset(args.preset) if args.preset else load_config(args.config)
    shots_mode = None
    if getattr(args, "exact", False):
        shots_mode = "exact"
    elif getattr(args, "sampled", False):
        shots_mode = "sampled"
    return apply_overrides(
        cfg,
        shots=getattr(args, "shots", None),
        seed=getattr(args, "seed", None),
        steps_per_period=getattr(args, "steps_per_period", None),
        periods=getattr(args, "periods", None),
        delta=getattr(args, "delta", None),
        shots_mode=shots_mode,
    )


def _cmd_run(args) -> int:
    cfg = _select_config(args)
    result = runner.run(cfg, Path(args.out) / cfg.name)
    print(runner.summary_text(result))
    return 0


def _cmd_scan(args) -> int:
    cfg = _select_config(args)
    if args.delta_list is None:
        deltas = runner.DEFAULT_SCAN_DELTAS
    else:
        try:
            deltas = tuple(float(part) for part in args.delta_list.split(","))
        except ValueError as exc:
            raise ConfigError(f"bad --delta list {args.delta_list!r}") from exc
    out = Path(args.out) / f"{cfg.name}_scan"
    rows = runner.delta_scan(cfg, deltas, out, pinch_tol=args.pinch_tol)
    print(f"scan {cfg.name}: {len(rows)} points, pinch tolerance {args.pinch_tol:g}")
    for r in rows:
        flags = "/".join("pass" if ok else "FAIL" for ok in r.pinch_pass)
        print(f"  delta={r.delta:.4f}  mean F: q1={r.mean_f[0]:.3f} q2={r.mean_f[1]:.3f}"
              f"  pinch: {flags}  ESD={r.deaths} ESB={r.births}")
    print(f"  wrote: {out / 'scan_summary.csv'}")
    return 0


def _cmd_export(args) -> int:
    cfg = _select_config(args)
    text = qasm.export_circuit(cfg, axis=args.axis, max_ancillas=args.ancilla_cap)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{cfg.name}_{args.axis}.qasm"
    path.write_text(text, encoding="utf-8")
    print(f"wrote {path}")
    return 0


def _cmd_presets() -> int:
    width = max(len(name) for name in PRESET_NAMES)
    for name in PRESET_NAMES:
        print(f"{name:<{width}}  {PRESET_NOTES[name]}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "scan":
            return _cmd_scan(args)
        if args.command == "export-qasm":
            return _cmd_export(args)
        return _cmd_presets()
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (NumericsError, FloatingPointError, np.linalg.LinAlgError, ValueError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
