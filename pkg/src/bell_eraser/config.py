"""Flat ``key = value`` experiment configuration."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .eraser import THETA_MAX
from .interference import ScreenGrid, SlitGeometry

DEFAULT_THETA_COUNT = 64

CHECK_KEYS = ("venn", "chain_rule", "patterns", "oracle")
KNOWN_KEYS = (
    "theta", "theta_start", "theta_stop", "theta_count",
    "a", "d", "L", "lambda", "x_min", "x_max", "n_points", "far_field",
    "out_dir",
) + tuple(f"checks.{c}" for c in CHECK_KEYS)

_PI_EXPR = re.compile(r"^[0-9eE.+\-*/ ()]*(pi[0-9eE.+\-*/ ()]*)*$")


class ConfigError(ValueError):
    def __init__(self, key: str, line, message: str):
        self.key = key
        self.line = line
        super().__init__(f"{key} (line {line}): {message}")


@dataclass(frozen=True)
class Checks:
    venn: bool = True
    chain_rule: bool = True
    patterns: bool = False
    oracle: bool = True


@dataclass(frozen=True)
class ExperimentConfig:
    thetas: tuple[float, ...]
    geometry: SlitGeometry = SlitGeometry()
    grid: ScreenGrid = ScreenGrid()
    out_dir: Path = Path("out")
    checks: Checks = field(default_factory=Checks)


def parse_number(text: str) -> float:
    """Float literal, or an arithmetic expression in ``pi`` such as ``3*pi/16``."""
    text = text.strip()
    try:
        return float(text)
    except ValueError:
        pass
    if not text or not _PI_EXPR.match(text):
        raise ValueError(f"not a number: {text!r}")
    try:
        return float(eval(text, {"__builtins__": {}}, {"pi": math.pi}))  # noqa: S307 (whitelisted)
    except Exception:
        raise ValueError(f"not a number: {text!r}") from None


def parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def read_pairs(text: str, source: str = "") -> dict[str, tuple[str, object]]:
    """Raw ``key -> (value, line)``; ``#`` starts a comment."""
    pairs: dict[str, tuple[str, object]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}" if source else lineno
        if "=" not in line:
            raise ConfigError(line, where, "expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in KNOWN_KEYS:
            raise ConfigError(key, where, "unknown key")
        pairs[key] = (value.strip(), where)
    return pairs


def build_config(pairs: dict[str, tuple[str, object]]) -> ExperimentConfig:
    def get(key, conv, default):
        if key not in pairs:
            return default
        value, where = pairs[key]
        try:
            return conv(value)
        except ValueError as exc:
            raise ConfigError(key, where, str(exc)) from None

    def where(key):
        return pairs[key][1] if key in pairs else "-"

    def check_theta(key, t):
        if not 0.0 <= t <= THETA_MAX:
            raise ConfigError(key, where(key), f"theta {t!r} outside [0, pi/4]")

    sweep_keys = [k for k in ("theta_start", "theta_stop", "theta_count") if k in pairs]
    if "theta" in pairs and sweep_keys:
        raise ConfigError(sweep_keys[0], where(sweep_keys[0]), "cannot be combined with 'theta'")
    if "theta" in pairs:
        t = get("theta", parse_number, None)
        check_theta("theta", t)
        thetas = (t,)
    else:
        start = get("theta_start", parse_number, 0.0)
        stop = get("theta_stop", parse_number, THETA_MAX)
        count = get("theta_count", int, DEFAULT_THETA_COUNT)
        check_theta("theta_start", start)
        check_theta("theta_stop", stop)
        if count < 1:
            raise ConfigError("theta_count", where("theta_count"), "must be at least 1")
        thetas = tuple(float(t) for t in np.linspace(start, stop, count))
        # linspace endpoints can overshoot pi/4 by one ulp
        thetas = tuple(min(max(t, 0.0), THETA_MAX) for t in thetas)

    geo_defaults = SlitGeometry()
    geo = {}
    for key, attr in (("a", "a"), ("d", "d"), ("L", "L"), ("lambda", "wavelength")):
        value = get(key, parse_number, getattr(geo_defaults, attr))
        if not value > 0:
            raise ConfigError(key, where(key), f"must be positive, got {value!r}")
        geo[attr] = value
    far = get("far_field", parse_bool, True)
    try:
        geometry = SlitGeometry(far_field=far, **geo)
    except ValueError as exc:
        raise ConfigError("L", where("L"), str(exc)) from None

    g0 = ScreenGrid()
    x_min = get("x_min", parse_number, g0.x_min)
    x_max = get("x_max", parse_number, g0.x_max)
    n = get("n_points", int, g0.n)
    if n < 2:
        raise ConfigError("n_points", where("n_points"), "must be at least 2")
    if not x_min < x_max:
        raise ConfigError("x_max", where("x_max"), "must exceed x_min")
    grid = ScreenGrid(x_min, x_max, n)

    checks = Checks(**{c: get(f"checks.{c}", parse_bool, getattr(Checks(), c)) for c in CHECK_KEYS})
    out_dir = Path(get("out_dir", str, "out"))
    return ExperimentConfig(thetas=thetas, geometry=geometry, grid=grid, out_dir=out_dir, checks=checks)


def parse_config(text: str, overrides: Optional[dict[str, str]] = None, source: str = "") -> ExperimentConfig:
    """Validate a configuration document; ``overrides`` win over file entries."""
    pairs = read_pairs(text, source)
    for key, value in (overrides or {}).items():
        if key not in KNOWN_KEYS:
            raise ConfigError(key, "command line", "unknown key")
        if key == "theta":
            for k in ("theta_start", "theta_stop", "theta_count"):
                pairs.pop(k, None)
        elif key.startswith("theta_"):
            pairs.pop("theta", None)
        pairs[key] = (value, "command line")
    return build_config(pairs)
