"""Stage-by-stage construction of the Bell-state quantum eraser.

Subsystems (all two-dimensional):

    Q    quanton path, basis {psi_1, psi_2}
    P    polarization of the signal photon A, basis {h, v}
    B    polarization of the idler photon B; {h, v} before the erasure
         rotation, {0, 1} after it
    D_A  detector reading the circular polarization of A (0 = L, 1 = R)
    D_B  detector reading B in the rotated basis

Measurements are unitary couplings to a detector that starts in |0>;
nothing collapses. Conditioning on an outcome is done afterwards with
:func:`bell_eraser.tensor.condition`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import venn
from .tensor import (
    CompositeSpace,
    DensityOperator,
    StateVector,
    apply_unitary,
    basis_state,
    condition,
    entropy_from_eigenvalues,
    partial_trace,
    reorder,
    tensor,
)

THETA_MAX = np.pi / 4
PANEL_TOL = 1e-9

H, V = 0, 1
SQRT2 = np.sqrt(2.0)

KET_H = np.array([1, 0], dtype=complex)
KET_V = np.array([0, 1], dtype=complex)
KET_L = (KET_H + 1j * KET_V) / SQRT2
KET_R = (KET_H - 1j * KET_V) / SQRT2
CIRCULAR = (KET_L, KET_R)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)

SPACE_QPB = CompositeSpace.of(("Q", 2), ("P", 2), ("B", 2))
SPACE_QPB_DB = CompositeSpace.of(("Q", 2), ("P", 2), ("B", 2), ("D_B", 2))
SPACE_AMEASURED = CompositeSpace.of(("Q", 2), ("P", 2), ("D_A", 2), ("B", 2), ("D_B", 2))


class ConsistencyError(AssertionError):
    """Analytic and numeric routes disagree beyond tolerance."""


@dataclass(frozen=True)
class ErasureAngle:
    theta: float

    def __post_init__(self):
        t = float(self.theta)
        if not (0.0 <= t <= THETA_MAX):
            raise ValueError(f"erasure angle {t!r} outside [0, pi/4]")
        object.__setattr__(self, "theta", t)

    def __float__(self):
        return self.theta


def _theta(theta) -> float:
    return ErasureAngle(float(theta)).theta


class Stage(enum.Enum):
    PRE_TAG = "PreTag"
    TAGGED = "Tagged"
    B_MEASURED = "BMeasured"
    A_MEASURED = "AMeasured"


_STAGE_SPACES = {
    Stage.PRE_TAG: SPACE_QPB,
    Stage.TAGGED: SPACE_QPB,
    Stage.B_MEASURED: SPACE_QPB_DB,
    Stage.A_MEASURED: SPACE_AMEASURED,
}


@dataclass(frozen=True)
class EraserState:
    stage: Stage
    state: StateVector
    theta: float | None = None

    def __post_init__(self):
        expected = _STAGE_SPACES[self.stage]
        if self.state.space != expected:
            raise ValueError(f"{self.stage.value} state must live on {expected.labels}, "
                             f"got {self.state.space.labels}")

    def density(self, keep=None) -> DensityOperator:
        keep = self.state.space.labels if keep is None else keep
        return partial_trace(self.state, keep)


def _require(s: EraserState, stage: Stage) -> None:
    if s.stage is not stage:
        raise ValueError(f"expected a {stage.value} state, got {s.stage.value}")


# -- optics ---------------------------------------------------------------

def wave_plate(alpha: float, beta: float) -> np.ndarray:
    """Jones matrix of a wave plate with retardance ``alpha`` and fast axis at ``beta``."""
    c, s = np.cos(alpha / 2), np.sin(alpha / 2)
    c2, s2 = np.cos(2 * beta), np.sin(2 * beta)
    return np.array([[c + 1j * s * c2, 1j * s * s2],
                     [1j * s * s2, c - 1j * s * c2]])


QWP_SLIT1 = wave_plate(np.pi / 2, np.pi / 4)
QWP_SLIT2 = wave_plate(np.pi / 2, -np.pi / 4)


def tagging_unitary() -> np.ndarray:
    """Path-controlled polarization unitary on Q (x) P: one QWP per slit."""
    u = np.zeros((4, 4), dtype=complex)
    u[:2, :2] = QWP_SLIT1
    u[2:, 2:] = QWP_SLIT2
    return u


def rotation(theta) -> np.ndarray:
    """Rotation from the {h, v} basis to the measured basis {0, 1}.

    Rows follow the (v, h) labelling: |v> = U00|0> + U01|1>, |h> = U10|0> + U11|1>.
    """
    t = _theta(theta)
    return np.array([[np.cos(t), -np.sin(t)],
                     [np.sin(t), np.cos(t)]])


def basis_change(theta) -> np.ndarray:
    """Coordinate map for B: amplitudes in (h, v) -> amplitudes in (0, 1)."""
    u = rotation(theta)
    m = np.empty((2, 2))
    for k in range(2):
        m[k, H] = u[1, k]
        m[k, V] = u[0, k]
    return m


def copy_unitary(basis=None) -> np.ndarray:
    """CNOT-style detector coupling: |b_j>|0> -> |b_j>|j> for an orthonormal ``basis``."""
    basis = (KET_H, KET_V) if basis is None else basis
    u = np.zeros((4, 4), dtype=complex)
    for j, b in enumerate(basis):
        u += np.kron(np.outer(b, b.conj()), np.linalg.matrix_power(PAULI_X, j))
    return u


# -- pipeline stages ------------------------------------------------------

def bell_pair() -> StateVector:
    """(|h>|v> + |v>|h>)/sqrt(2) on P (x) B."""
    space = CompositeSpace.of(("P", 2), ("B", 2))
    amps = (np.kron(KET_H, KET_V) + np.kron(KET_V, KET_H)) / SQRT2
    return StateVector(space, amps)


def path_superposition() -> StateVector:
    return StateVector(CompositeSpace.of(("Q", 2)), np.array([1, 1]) / SQRT2)


def build_pretag() -> EraserState:
    return EraserState(Stage.PRE_TAG, tensor(path_superposition(), bell_pair()))


def tag_paths(s: EraserState) -> EraserState:
    _require(s, Stage.PRE_TAG)
    return EraserState(Stage.TAGGED, apply_unitary(s.state, tagging_unitary(), ["Q", "P"]))


def measure_B(s: EraserState, theta) -> EraserState:
    """Rotate B into the measured basis and copy it onto detector D_B."""
    _require(s, Stage.TAGGED)
    t = _theta(theta)
    v = apply_unitary(s.state, basis_change(t), "B")
    v = tensor(v, basis_state(CompositeSpace.of(("D_B", 2)), 0))
    v = apply_unitary(v, copy_unitary(), ["B", "D_B"])
    return EraserState(Stage.B_MEASURED, v, theta=t)


def measure_A(s: EraserState) -> EraserState:
    """Copy the circular polarization index of A onto detector D_A."""
    _require(s, Stage.B_MEASURED)
    v = tensor(s.state, basis_state(CompositeSpace.of(("D_A", 2)), 0))
    v = apply_unitary(v, copy_unitary(CIRCULAR), ["P", "D_A"])
    v = reorder(v, SPACE_AMEASURED.labels)
    return EraserState(Stage.A_MEASURED, v, theta=s.theta)


def run_pipeline(theta) -> EraserState:
    return measure_A(measure_B(tag_paths(build_pretag()), theta))


# -- direct assembly ------------------------------------------------------

def spatial_states(theta) -> dict[tuple[int, int], np.ndarray]:
    """Quanton states psi^k_m in the path basis, keyed by (m, k); m=0 is L."""
    u = rotation(theta)
    out = {}
    for k in range(2):
        out[0, k] = np.array([u[0, k], -1j * u[1, k]])
        out[1, k] = np.array([u[1, k], -1j * u[0, k]])
    return out


def direct_bmeasured(theta) -> StateVector:
    """(1/2) sum_{mk} i^m |psi^k_m>_Q |m>_P |kk>_{B D_B}, assembled term by term."""
    psi = spatial_states(theta)
    amps = np.zeros(SPACE_QPB_DB.dim, dtype=complex)
    for m in range(2):
        for k in range(2):
            kk = np.zeros(4)
            kk[3 * k] = 1.0
            amps += 0.5 * (1j ** m) * np.kron(np.kron(psi[m, k], CIRCULAR[m]), kk)
    return StateVector(SPACE_QPB_DB, amps)


def direct_tagged() -> StateVector:
    """Tagged state grouped by the idler polarization."""
    psi1, psi2 = np.array([1, 0]), np.array([0, 1])
    amps = 0.5 * (
        np.kron(np.kron(psi1, KET_L) + np.kron(psi2, KET_R), KET_V)
        + 1j * np.kron(np.kron(psi1, KET_R) - np.kron(psi2, KET_L), KET_H)
    )
    return StateVector(SPACE_QPB, amps)


# -- analytic scalars -----------------------------------------------------

def conditional_quanton(theta, k: int) -> DensityOperator:
    """rho^k_Q = (1 - (-1)^k sin(2 theta) sigma_y) / 2."""
    if k not in (0, 1):
        raise ValueError(f"detector outcome must be 0 or 1, got {k}")
    s = np.sin(2 * _theta(theta))
    return DensityOperator(CompositeSpace.of(("Q", 2)),
                           0.5 * (np.eye(2) - (-1) ** k * s * PAULI_Y))


def eigenvalue_pair(theta) -> tuple[float, float]:
    s = np.sin(2 * _theta(theta))
    return 0.5 * (1 + s), 0.5 * (1 - s)


def binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return float(-p * np.log2(p) - (1 - p) * np.log2(1 - p))


def entanglement_entropy(theta) -> float:
    """S: entropy of the conditional quanton state, from 1 at theta=0 to 0 at pi/4."""
    return binary_entropy(eigenvalue_pair(theta)[0])


@dataclass(frozen=True)
class ScalarPanel:
    theta: float
    S: float
    lambda_plus: float
    lambda_minus: float
    coherence: float
    path_info: float
    D: float
    V: float

    FIELDS = ("theta", "S", "lambda_plus", "lambda_minus", "coherence", "path_info", "D", "V")

    def row(self) -> list[float]:
        return [getattr(self, f) for f in self.FIELDS]


def analytic_panel(theta) -> ScalarPanel:
    t = _theta(theta)
    lp, lm = eigenvalue_pair(t)
    S = binary_entropy(lp)
    return ScalarPanel(theta=t, S=S, lambda_plus=lp, lambda_minus=lm,
                       coherence=1.0 - S, path_info=S,
                       D=abs(np.cos(2 * t)), V=abs(np.sin(2 * t)))


def analytic_quantities(theta) -> dict[str, float]:
    """Closed-form values of every entropy the oracle recomputes numerically."""
    S = entanglement_entropy(theta)
    return {
        "S(Q:D_B)": 1 - S,
        "S(Q:D_A|D_B)": S,
        "S(Q:D_A D_B)": 1.0,
        "S(Q:D_A)": 0.0,
        "S(D_A:D_B)": 0.0,
        "S(D_A:D_B|Q)": S,
        "S(Q D_A D_B)": 2.0,
        "S(Q D_B)": 1 + S,
        "S(Q|D_A)": 1.0,
        "S(Q|D_B)": S,
        "S(Q|D_A D_B)": 0.0,
        "S(Q:P:D_B)": 1 - 2 * S,
        "S(Q:D_A:D_B)": -S,
        "venn QPD_B": (-S, -S, 0.0, 2 * S, S, S, 1 - 2 * S),
        "venn QD_AD_B": (0.0, 1 - S, 0.0, S, 1.0, S, -S),
    }


def numeric_quantities(theta) -> dict[str, float]:
    """The same entropies, via partial traces and eigendecompositions of the joint state."""
    b = measure_B(tag_paths(build_pretag()), theta)
    a = measure_A(b)
    rho = a.density(["Q", "D_A", "D_B"])
    # (Q, P, D_B) is read before D_A couples to P
    qpdb = b.density(["Q", "P", "D_B"])
    v1 = venn.venn3(qpdb, "Q", "P", "D_B")
    v2 = venn.venn3(rho, "Q", "D_A", "D_B")
    as_tuple = lambda d: (d.c_a, d.c_b, d.c_c, d.m_ab, d.m_ac, d.m_bc, d.center)  # noqa: E731
    return {
        "S(Q:D_B)": venn.mutual_entropy(rho, "Q", "D_B"),
        "S(Q:D_A|D_B)": venn.conditional_mutual(rho, "Q", "D_A", "D_B"),
        "S(Q:D_A D_B)": venn.mutual_entropy(rho, "Q", {"D_A", "D_B"}),
        "S(Q:D_A)": venn.mutual_entropy(rho, "Q", "D_A"),
        "S(D_A:D_B)": venn.mutual_entropy(rho, "D_A", "D_B"),
        "S(D_A:D_B|Q)": venn.conditional_mutual(rho, "D_A", "D_B", "Q"),
        "S(Q D_A D_B)": venn.joint_entropy(rho, {"Q", "D_A", "D_B"}),
        "S(Q D_B)": venn.joint_entropy(rho, {"Q", "D_B"}),
        "S(Q|D_A)": venn.conditional_entropy(rho, "Q", "D_A"),
        "S(Q|D_B)": venn.conditional_entropy(rho, "Q", "D_B"),
        "S(Q|D_A D_B)": venn.conditional_entropy(rho, "Q", {"D_A", "D_B"}),
        "S(Q:P:D_B)": venn.ternary_mutual(qpdb, "Q", "P", "D_B"),
        "S(Q:D_A:D_B)": venn.ternary_mutual(rho, "Q", "D_A", "D_B"),
        "venn QPD_B": as_tuple(v1),
        "venn QD_AD_B": as_tuple(v2),
    }


def max_deviation(analytic: dict, numeric: dict) -> tuple[str, float]:
    """Largest absolute gap between matching entries, and its key."""
    worst_key, worst = "", 0.0
    for key, a in analytic.items():
        gap = float(np.max(np.abs(np.subtract(a, numeric[key]))))
        if gap > worst or not worst_key:
            worst_key, worst = key, gap
    return worst_key, worst


def numeric_panel(theta) -> ScalarPanel:
    """Panel whose entropic entries come from the AMeasured joint density matrix."""
    t = _theta(theta)
    a = run_pipeline(t)
    rho = a.density(["Q", "D_A", "D_B"])
    rho_q = DensityOperator(CompositeSpace.of(("Q", 2)),
                            _conditional_q(a, 0))
    lam = np.linalg.eigvalsh(rho_q.matrix)[::-1]
    D, V = _distinguishability_visibility(a)
    return ScalarPanel(
        theta=t,
        S=entropy_from_eigenvalues(lam),
        lambda_plus=float(lam[0]), lambda_minus=float(lam[1]),
        coherence=venn.mutual_entropy(rho, "Q", "D_B"),
        path_info=venn.conditional_mutual(rho, "Q", "D_A", "D_B"),
        D=D, V=V,
    )


def _conditional_q(a: EraserState, k: int) -> np.ndarray:
    return partial_trace(condition(a.density(["Q", "D_B"]), "D_B", k), "Q").matrix


def _distinguishability_visibility(a: EraserState) -> tuple[float, float]:
    # V: twice the modulus of the path coherence of rho^k_Q.
    # D: trace distance between the D_A states conditioned on each path, given D_B = k.
    rho_q = _conditional_q(a, 0)
    vis = 2 * abs(rho_q[0, 1])
    given_k = condition(a.density(["Q", "D_A", "D_B"]), "D_B", 0)
    da_given_path = []
    for j in range(2):
        da_given_path.append(partial_trace(condition(given_k, "Q", j), "D_A").matrix)
    diff = da_given_path[0] - da_given_path[1]
    dist = 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(diff))))
    return dist, float(vis)


def scalar_panel(theta, verify: bool = True) -> ScalarPanel:
    """Analytic panel; with ``verify`` every entry is cross-checked numerically."""
    panel = analytic_panel(theta)
    if verify:
        num = numeric_panel(theta)
        for name in ScalarPanel.FIELDS:
            gap = abs(getattr(panel, name) - getattr(num, name))
            if gap > PANEL_TOL:
                raise ConsistencyError(f"{name} at theta={panel.theta!r}: analytic "
                                       f"{getattr(panel, name)!r} vs numeric {getattr(num, name)!r}")
    return panel


def bagan_identity(theta) -> tuple[float, float]:
    """(relative-entropy coherence, path information) = (1 - S, S)."""
    S = entanglement_entropy(theta)
    return 1.0 - S, S
