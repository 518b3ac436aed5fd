"""Sweeps, oracle checks and artifact writers behind the command line."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import eraser, interference, venn
from .config import ExperimentConfig

DUALITY_TOL = 1e-12
VISIBILITY_TOL = 0.02


def fmt(x: float) -> str:
    """17 significant digits, enough to round-trip any double."""
    return format(float(x), ".17g")


@dataclass(frozen=True)
class CheckResult:
    name: str
    theta: float
    deviation: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance

    @property
    def status(self) -> str:
        if self.tolerance == venn.IDENTITY_TOL:
            return venn.classify_residual(self.deviation)
        return "pass" if self.passed else "fail"

    def line(self) -> str:
        extra = f" [{self.detail}]" if self.detail else ""
        return (f"{self.status.upper():4s} {self.name} theta={fmt(self.theta)} "
                f"max_dev={self.deviation:.3e} tol={self.tolerance:.0e}{extra}")


@dataclass
class RunReport:
    panels: list = field(default_factory=list)
    venns: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    files: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        # 'warn' results sit below the 1e-6 failure threshold
        return all(c.status != "fail" for c in self.checks)

    def summary(self) -> str:
        n_fail = sum(c.status == "fail" for c in self.checks)
        n_warn = sum(c.status == "warn" for c in self.checks)
        lines = [c.line() for c in self.checks]
        worst = max(self.checks, key=lambda c: c.deviation / c.tolerance, default=None)
        lines.append(f"checks: {len(self.checks)} total, {n_fail} failed, {n_warn} warnings")
        if worst is not None:
            lines.append(f"worst: {worst.name} at theta={fmt(worst.theta)} ({worst.deviation:.3e})")
        lines.append("RESULT: " + ("PASS" if self.ok else "FAIL"))
        return "\n".join(lines) + "\n"


# -- writers ------------------------------------------------------------

def tradeoff_csv(panels) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(eraser.ScalarPanel.FIELDS)
    for p in panels:
        w.writerow([fmt(v) for v in p.row()])
    return buf.getvalue()


def pattern_csv(theta, geom, grid) -> str:
    p0 = interference.conditional_pattern(theta, 0, geom, grid)
    p1 = interference.conditional_pattern(theta, 1, geom, grid)
    pt = interference.total_pattern(theta, geom, grid)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x_meters", "p0", "p1", "p_total"])
    for row in zip(grid.x, p0.values, p1.values, pt.values):
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def read_csv(path) -> dict[str, np.ndarray]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], np.array(rows[1:], dtype=float)
    return {name: body[:, i] for i, name in enumerate(header)}


def venn_filename(triple: tuple[str, str, str], theta: float) -> str:
    return f"venn_{'-'.join(triple)}_{fmt(theta)}.txt"


def pattern_filename(theta: float) -> str:
    return f"pattern_theta={fmt(theta)}.csv"


def _write(out_dir: Path, name: str, text: str, report: RunReport) -> None:
    path = out_dir / name
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    report.files.append(path)


# -- checks -------------------------------------------------------------

def venn_pair(theta) -> dict[tuple[str, str, str], venn.VennDiagram3]:
    b = eraser.measure_B(eraser.tag_paths(eraser.build_pretag()), theta)
    a = eraser.measure_A(b)
    return {
        ("Q", "P", "D_B"): venn.venn3(b.density(["Q", "P", "D_B"]), "Q", "P", "D_B"),
        ("Q", "D_A", "D_B"): venn.venn3(a.density(["Q", "D_A", "D_B"]), "Q", "D_A", "D_B"),
    }


def chain_rule_checks(theta, numeric: dict) -> list[CheckResult]:
    lhs = numeric["S(Q:D_B)"] + numeric["S(Q:D_A|D_B)"]
    return [
        CheckResult("chain_rule: S(Q:D_B)+S(Q:D_A|D_B)=1", theta, abs(lhs - 1.0), venn.IDENTITY_TOL),
        CheckResult("chain_rule: sum = S(Q:D_A D_B)", theta,
                    abs(lhs - numeric["S(Q:D_A D_B)"]), venn.IDENTITY_TOL),
    ]


def duality_check(panel: eraser.ScalarPanel) -> CheckResult:
    return CheckResult("duality: D^2+V^2=1", panel.theta,
                       abs(panel.D ** 2 + panel.V ** 2 - 1.0), DUALITY_TOL)


def venn_checks(theta, diagrams, numeric: dict) -> list[CheckResult]:
    out = []
    for triple, dgm in diagrams.items():
        name = "".join(triple)
        key = "S(Q:P:D_B)" if triple[1] == "P" else "S(Q:D_A:D_B)"
        out.append(CheckResult(f"venn {name}: center", theta, abs(dgm.center - numeric[key]),
                               venn.IDENTITY_TOL))
    return out


def oracle_checks(theta) -> list[CheckResult]:
    """Every analytic entropy against the partial-trace + eigendecomposition route."""
    analytic = eraser.analytic_quantities(theta)
    numeric = eraser.numeric_quantities(theta)
    results = []
    for key, a in analytic.items():
        gap = float(np.max(np.abs(np.subtract(a, numeric[key]))))
        results.append(CheckResult(f"oracle {key}", theta, gap, venn.IDENTITY_TOL))
    num = eraser.numeric_panel(theta)
    ana = eraser.analytic_panel(theta)
    for name in eraser.ScalarPanel.FIELDS[1:]:
        gap = abs(getattr(num, name) - getattr(ana, name))
        results.append(CheckResult(f"oracle panel.{name}", theta, gap, venn.IDENTITY_TOL))
    return results


def visibility_check(theta, geom, grid) -> CheckResult:
    p = interference.conditional_pattern(theta, 0, geom, grid)
    v = interference.estimate_visibility(p)
    return CheckResult("patterns: visibility ~ sin(2 theta)", theta,
                       abs(v - abs(np.sin(2 * theta))), VISIBILITY_TOL, detail=f"V={v:.4f}")


# -- entry points -------------------------------------------------------

def run_sweep(cfg: ExperimentConfig, write: bool = True) -> RunReport:
    report = RunReport()
    for theta in cfg.thetas:
        panel = eraser.analytic_panel(theta)
        report.panels.append(panel)
        report.checks.append(duality_check(panel))
        numeric = None
        if cfg.checks.chain_rule or cfg.checks.venn:
            numeric = eraser.numeric_quantities(theta)
        if cfg.checks.chain_rule:
            report.checks.extend(chain_rule_checks(theta, numeric))
        if cfg.checks.venn:
            diagrams = venn_pair(theta)
            for triple, dgm in diagrams.items():
                report.venns[triple, theta] = dgm
            report.checks.extend(venn_checks(theta, diagrams, numeric))
        if cfg.checks.oracle:
            report.checks.extend(oracle_checks(theta))
        if cfg.checks.patterns:
            report.checks.append(visibility_check(theta, cfg.geometry, cfg.grid))

    if write:
        _write(cfg.out_dir, "tradeoff.csv", tradeoff_csv(report.panels), report)
        for (triple, theta), dgm in report.venns.items():
            _write(cfg.out_dir, venn_filename(triple, theta), dgm.to_text(), report)
        if cfg.checks.patterns:
            for theta in cfg.thetas:
                _write(cfg.out_dir, pattern_filename(theta),
                       pattern_csv(theta, cfg.geometry, cfg.grid), report)
        _write(cfg.out_dir, "verify.txt", report.summary(), report)
    return report


def run_oracle(cfg: ExperimentConfig, write: bool = True) -> RunReport:
    report = RunReport()
    for theta in cfg.thetas:
        report.checks.extend(oracle_checks(theta))
        report.checks.extend(chain_rule_checks(theta, eraser.numeric_quantities(theta)))
    if write:
        _write(cfg.out_dir, "verify.txt", report.summary(), report)
    return report
