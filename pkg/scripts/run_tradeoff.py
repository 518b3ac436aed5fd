"""Coherence / path-information tradeoff sweep with oracle checks.

    python3 scripts/run_tradeoff.py [n_angles] [out_dir]
"""
import sys
from pathlib import Path

from bell_eraser.config import parse_config
from bell_eraser.runner import run_sweep


def main():
    n = sys.argv[1] if len(sys.argv) > 1 else "64"
    out = Path(sys.argv[2] if len(sys.argv) > 2 else "out/tradeoff")
    cfg = parse_config("", {"theta_count": n, "out_dir": str(out)})
    report = run_sweep(cfg)
    print(f"{'theta':>8} {'S':>8} {'coh':>8} {'path':>8} {'D':>8} {'V':>8}")
    for p in report.panels:
        print(f"{p.theta:8.4f} {p.S:8.5f} {p.coherence:8.5f} {p.path_info:8.5f} {p.D:8.5f} {p.V:8.5f}")
    print(report.summary().splitlines()[-1], f"({len(report.files)} files in {out})")
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
