"""Fringe / antifringe patterns for a few erasure angles.

    python3 scripts/run_interference.py [out_dir]
"""
import sys
from pathlib import Path

import numpy as np

from bell_eraser.interference import ScreenGrid, SlitGeometry, conditional_pattern, estimate_visibility, \
    measure_fringe_period
from bell_eraser.runner import pattern_csv, pattern_filename

THETAS = [0.0, np.pi / 16, np.pi / 8, 3 * np.pi / 16, np.pi / 4]


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "out/patterns")
    out.mkdir(parents=True, exist_ok=True)
    geom, grid = SlitGeometry(), ScreenGrid()
    print(f"expected fringe period {geom.fringe_period * 1e3:.2f} mm")
    print(f"{'theta':>8} {'sin2t':>7} {'V0':>7} {'V1':>7} {'period[mm]':>11}")
    for t in THETAS:
        v0, v1 = (estimate_visibility(conditional_pattern(t, k, geom, grid)) for k in (0, 1))
        period = measure_fringe_period(t, geom, grid) * 1e3
        print(f"{t:8.4f} {np.sin(2 * t):7.4f} {v0:7.4f} {v1:7.4f} {period:11.4f}")
        (out / pattern_filename(t)).write_text(pattern_csv(t, geom, grid))
    print(f"patterns written to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
