"""Screen model: Fraunhofer slit amplitudes and conditional fringe patterns.

Raw probabilities (``*_probability`` functions) are the unnormalised
densities built from the slit amplitudes. :class:`Pattern` objects hold the
same curves normalised so that their Riemann sum over the grid is 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .eraser import ConsistencyError, _theta, spatial_states
from .tensor import CompositeSpace, DensityOperator

SINC_SERIES_CUTOFF = 1e-6
FAR_FIELD_MIN_RATIO = 1000.0
ROUTE_TOL = 1e-10
TOTAL_TOL = 1e-12


@dataclass(frozen=True)
class SlitGeometry:
    a: float = 10e-6
    d: float = 20e-6
    L: float = 1.0
    wavelength: float = 702e-9
    far_field: bool = True

    def __post_init__(self):
        for name in ("a", "d", "L", "wavelength"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)!r}")
        if self.far_field and self.L / self.d < FAR_FIELD_MIN_RATIO:
            raise ValueError(f"far-field approximation needs L/d >= {FAR_FIELD_MIN_RATIO:g}, "
                             f"got {self.L / self.d:g}")

    @property
    def slit_centers(self) -> tuple[float, float]:
        return -self.d / 2, self.d / 2

    @property
    def fringe_period(self) -> float:
        """Small-angle fringe spacing lambda L / d."""
        return self.wavelength * self.L / self.d

    @property
    def envelope_zero(self) -> float:
        """First zero of the single-slit envelope, lambda L / a."""
        return self.wavelength * self.L / self.a

    @property
    def peak_intensity(self) -> float:
        """|psi_j|^2 at the centre of the envelope, a / 2 pi."""
        return self.a / (2 * np.pi)


@dataclass(frozen=True)
class ScreenGrid:
    x_min: float = -0.15
    x_max: float = 0.15
    n: int = 2001

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"screen grid needs at least 2 points, got {self.n}")
        if not self.x_min < self.x_max:
            raise ValueError(f"x_min ({self.x_min}) must be below x_max ({self.x_max})")

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n)

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n - 1)


@dataclass(frozen=True, eq=False)
class Pattern:
    grid: ScreenGrid
    values: np.ndarray
    kind: str  # "conditional" or "total"
    k: Optional[int] = None
    theta: Optional[float] = None
    geometry: Optional[SlitGeometry] = None

    @classmethod
    def from_raw(cls, grid: ScreenGrid, raw: np.ndarray, **kw) -> "Pattern":
        raw = np.clip(np.asarray(raw, dtype=float), 0.0, None)
        return cls(grid, raw / (raw.sum() * grid.spacing), **kw)

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    def riemann_sum(self) -> float:
        return float(self.values.sum() * self.grid.spacing)


def sinc(alpha):
    """sin(alpha)/alpha with the removable singularity filled in."""
    alpha = np.asarray(alpha, dtype=float)
    small = np.abs(alpha) < SINC_SERIES_CUTOFF
    safe = np.where(small, 1.0, alpha)
    return np.where(small, 1.0 - alpha ** 2 / 6.0, np.sin(safe) / safe)


def _alpha(x, geom: SlitGeometry, j: int):
    xj = geom.slit_centers[j - 1]
    offset = x if geom.far_field else x - xj
    phi = np.arctan(offset / geom.L)
    return np.pi * geom.a * np.sin(phi) / geom.wavelength


def slit_amplitude(x, geom: SlitGeometry, j: int):
    """Far-zone amplitude of slit ``j`` (1 or 2) at screen position ``x``."""
    if j not in (1, 2):
        raise ValueError(f"slit index must be 1 or 2, got {j}")
    alpha = _alpha(np.asarray(x, dtype=float), geom, j)
    xj = geom.slit_centers[j - 1]
    return np.sqrt(geom.a / (2 * np.pi)) * sinc(alpha) * np.exp(-2j * alpha * xj / geom.a)


def single_slit_envelope(x, geom: SlitGeometry):
    """(a / 2 pi) sinc^2 for a slit at the origin."""
    alpha = np.pi * geom.a * np.sin(np.arctan(np.asarray(x, dtype=float) / geom.L)) / geom.wavelength
    return geom.peak_intensity * sinc(alpha) ** 2


def _check_k(k: int) -> None:
    if k not in (0, 1):
        raise ValueError(f"detector outcome must be 0 or 1, got {k}")


def conditional_probability(theta, k: int, geom: SlitGeometry, x) -> np.ndarray:
    """p_k(x) from the expanded cross-term form."""
    _check_k(k)
    s = np.sin(2 * _theta(theta))
    p1, p2 = slit_amplitude(x, geom, 1), slit_amplitude(x, geom, 2)
    cross = 1j * (-1) ** k * s * (p1 * np.conj(p2) - np.conj(p1) * p2)
    return 0.5 * (np.abs(p1) ** 2 + np.abs(p2) ** 2 + cross.real)


def conditional_probability_from_states(theta, k: int, geom: SlitGeometry, x) -> np.ndarray:
    """p_k(x) = 1/2 sum_m |psi^k_m(x)|^2, projecting the quanton states onto position."""
    _check_k(k)
    psi = spatial_states(theta)
    p1, p2 = slit_amplitude(x, geom, 1), slit_amplitude(x, geom, 2)
    total = 0.0
    for m in range(2):
        c = psi[m, k]
        total = total + np.abs(c[0] * p1 + c[1] * p2) ** 2
    return 0.5 * total


def total_probability(geom: SlitGeometry, x) -> np.ndarray:
    """p(x) = (|psi_1|^2 + |psi_2|^2)/2; no cross terms survive the average over k."""
    return 0.5 * (np.abs(slit_amplitude(x, geom, 1)) ** 2 + np.abs(slit_amplitude(x, geom, 2)) ** 2)


def conditional_pattern(theta, k: int, geom: SlitGeometry = SlitGeometry(),
                        grid: ScreenGrid = ScreenGrid()) -> Pattern:
    t = _theta(theta)
    raw = conditional_probability(t, k, geom, grid.x)
    return Pattern.from_raw(grid, raw, kind="conditional", k=k, theta=t, geometry=geom)


def total_pattern(theta, geom: SlitGeometry = SlitGeometry(),
                  grid: ScreenGrid = ScreenGrid()) -> Pattern:
    """Average of the two conditional patterns, cross-checked against the direct form."""
    t = _theta(theta)
    x = grid.x
    averaged = 0.5 * (conditional_probability(t, 0, geom, x) + conditional_probability(t, 1, geom, x))
    direct = total_probability(geom, x)
    gap = np.max(np.abs(averaged - direct)) / geom.peak_intensity
    if gap > TOTAL_TOL:
        raise ConsistencyError(f"total pattern at theta={t!r} differs from incoherent sum by {gap:.3g}")
    return Pattern.from_raw(grid, averaged, kind="total", theta=t, geometry=geom)


def _local_extrema(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    inner = slice(1, -1)
    left, mid, right = v[:-2], v[inner], v[2:]
    maxima = np.flatnonzero((mid > left) & (mid >= right)) + 1
    minima = np.flatnonzero((mid < left) & (mid <= right)) + 1
    return maxima, minima


def estimate_visibility(p: Pattern, half_width: Optional[float] = None) -> float:
    """(p_max - p_min)/(p_max + p_min) from the extrema nearest x = 0.

    Extrema are searched in |x| < ``half_width``; by default half the central
    diffraction lobe, lambda L / (2a), when the pattern carries its geometry.
    That window always contains the first fringe maximum and minimum (d > a)
    and keeps the envelope zeros out. Returns 0 when either is missing.
    """
    x, v = p.x, p.values
    if half_width is None and p.geometry is not None:
        half_width = 0.5 * p.geometry.envelope_zero
    if half_width is not None:
        inside = np.abs(x) < half_width
        x, v = x[inside], v[inside]
    if v.size < 3:
        return 0.0
    maxima, minima = _local_extrema(v)
    if maxima.size == 0 or minima.size == 0:
        return 0.0
    i_max = maxima[np.argmin(np.abs(x[maxima]))]
    i_min = minima[np.argmin(np.abs(x[minima]))]
    hi, lo = v[i_max], v[i_min]
    if hi + lo <= 0:
        return 0.0
    return float(np.clip((hi - lo) / (hi + lo), 0.0, 1.0))


def fringe_term(theta, k: int, geom: SlitGeometry, x) -> np.ndarray:
    """Envelope-free fringe signal p_k(x)/p(x) - 1."""
    return conditional_probability(theta, k, geom, x) / total_probability(geom, x) - 1.0


def measure_fringe_period(theta, geom: SlitGeometry = SlitGeometry(),
                          grid: ScreenGrid = ScreenGrid(), k: int = 0) -> float:
    """Fringe period from zero crossings of the envelope-free fringe signal.

    Crossings are located by linear interpolation inside the central lobe;
    consecutive crossings are half a period apart. Returns nan if fewer
    than two crossings are found.
    """
    x = grid.x
    x = x[np.abs(x) < 0.95 * geom.envelope_zero]
    f = fringe_term(theta, k, geom, x)
    sign_change = np.flatnonzero(np.signbit(f[:-1]) != np.signbit(f[1:]))
    if sign_change.size < 2:
        return float("nan")
    x0, x1 = x[sign_change], x[sign_change + 1]
    f0, f1 = f[sign_change], f[sign_change + 1]
    crossings = x0 - f0 * (x1 - x0) / (f1 - f0)
    return float(2 * np.mean(np.diff(crossings)))


def screen_measurement_state(theta, geom: SlitGeometry = SlitGeometry(),
                             grid: ScreenGrid = ScreenGrid()) -> DensityOperator:
    """Classical joint state of screen D_X and detector D_B (dimension 2n).

    Block-diagonal: (1/2) sum_k rho^k_{D_X} (x) |k><k|, with rho^k_{D_X}
    diagonal in the position basis and carrying p_k(x). Both blocks share
    one normalisation constant so the D_X marginal is p(x) on the grid.
    """
    x = grid.x
    p = np.stack([conditional_probability(theta, k, geom, x) for k in (0, 1)], axis=1)
    p = np.clip(p, 0.0, None)
    p = p / p.sum()
    space = CompositeSpace.of(("D_X", grid.n), ("D_B", 2))
    return DensityOperator(space, np.diag(p.reshape(-1)).astype(complex))
