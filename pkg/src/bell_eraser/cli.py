"""Command-line front end: ``panel``, ``sweep``, ``pattern``, ``venn``, ``verify``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import runner
from .config import CHECK_KEYS, ConfigError, parse_config
from .eraser import analytic_panel, numeric_panel

# flag name -> config key
FLAG_KEYS = {
    "theta": "theta", "theta_start": "theta_start", "theta_stop": "theta_stop",
    "theta_count": "theta_count", "a": "a", "d": "d", "L": "L", "wavelength": "lambda",
    "x_min": "x_min", "x_max": "x_max", "n_points": "n_points", "far_field": "far_field",
    "out_dir": "out_dir",
}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="flat 'key = value' configuration file")
    p.add_argument("--theta", help="single erasure angle in radians (expressions like pi/8 allowed)")
    p.add_argument("--theta-start", dest="theta_start")
    p.add_argument("--theta-stop", dest="theta_stop")
    p.add_argument("--theta-count", dest="theta_count")
    p.add_argument("--a", help="slit width [m]")
    p.add_argument("--d", help="slit separation [m]")
    p.add_argument("--L", help="slit-to-screen distance [m]")
    p.add_argument("--lambda", dest="wavelength", help="wavelength [m]")
    p.add_argument("--x-min", dest="x_min")
    p.add_argument("--x-max", dest="x_max")
    p.add_argument("--n-points", dest="n_points")
    p.add_argument("--far-field", dest="far_field", help="true/false")
    p.add_argument("--out-dir", dest="out_dir")
    for c in CHECK_KEYS:
        p.add_argument(f"--check-{c.replace('_', '-')}", dest=f"check_{c}", help="true/false")


def _load(args) -> "runner.ExperimentConfig":
    text, source = "", ""
    if args.config is not None:
        text, source = args.config.read_text(), str(args.config)
    overrides = {key: getattr(args, flag) for flag, key in FLAG_KEYS.items()
                 if getattr(args, flag) is not None}
    for c in CHECK_KEYS:
        value = getattr(args, f"check_{c}")
        if value is not None:
            overrides[f"checks.{c}"] = value
    return parse_config(text, overrides, source)


def cmd_panel(cfg) -> int:
    status = 0
    print(",".join(runner.eraser.ScalarPanel.FIELDS))
    for theta in cfg.thetas:
        ana, num = analytic_panel(theta), numeric_panel(theta)
        print(",".join(runner.fmt(v) for v in ana.row()))
        gap = max(abs(a - b) for a, b in zip(ana.row(), num.row()))
        if gap > runner.venn.IDENTITY_TOL:
            print(f"numeric cross-check off by {gap:.3e} at theta={theta!r}", file=sys.stderr)
            status = 1
    return status


def cmd_venn(cfg) -> int:
    for theta in cfg.thetas:
        for triple, dgm in runner.venn_pair(theta).items():
            print(f"# theta = {runner.fmt(theta)}")
            print(dgm.to_text())
    return 0


def cmd_pattern(cfg) -> int:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    for theta in cfg.thetas:
        path = cfg.out_dir / runner.pattern_filename(theta)
        path.write_text(runner.pattern_csv(theta, cfg.geometry, cfg.grid))
        print(path)
    return 0


def cmd_sweep(cfg) -> int:
    report = runner.run_sweep(cfg)
    print(report.summary().splitlines()[-3])
    print(report.summary().splitlines()[-1])
    for path in report.files[:1]:
        print(f"wrote {len(report.files)} files to {path.parent}")
    return 0 if report.ok else 1


def cmd_verify(cfg) -> int:
    report = runner.run_oracle(cfg)
    sys.stdout.write(report.summary())
    return 0 if report.ok else 1


COMMANDS = {
    "panel": (cmd_panel, "analytic scalar panel with numeric cross-check"),
    "sweep": (cmd_sweep, "theta sweep: tradeoff.csv, Venn diagrams, optional patterns, checks"),
    "pattern": (cmd_pattern, "conditional and total screen patterns as CSV"),
    "venn": (cmd_venn, "entropic Venn diagrams for (Q,P,D_B) and (Q,D_A,D_B)"),
    "verify": (cmd_verify, "recompute every analytic entropy from the joint state"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bell-eraser", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        _add_common(sub.add_parser(name, help=help_text))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _load(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command][0](cfg)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
