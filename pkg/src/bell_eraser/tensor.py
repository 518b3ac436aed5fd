"""Dense linear algebra over labelled composite Hilbert spaces.

Every state carries a :class:`CompositeSpace` that fixes the Kronecker
order of its factors. Operations never reorder subsystems unless asked to
through :func:`reorder`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
NORM_TOL = 1e-12
UNITARY_TOL = 1e-12
POSITIVITY_TOL = 1e-10


class SpaceError(ValueError):
    """Raised for label bookkeeping mistakes (duplicates, unknown labels)."""


class InvalidStateError(ValueError):
    """Raised when an array fails the invariants of the requested state type."""


@dataclass(frozen=True)
class Subsystem:
    name: str
    dim: int

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise SpaceError(f"subsystem {self.name!r} needs a positive integer dimension, got {self.dim}")


@dataclass(frozen=True)
class CompositeSpace:
    subsystems: tuple[Subsystem, ...]

    def __post_init__(self):
        object.__setattr__(self, "subsystems", tuple(self.subsystems))
        seen = set()
        for s in self.subsystems:
            if s.name in seen:
                raise SpaceError(f"duplicate subsystem label {s.name!r}")
            seen.add(s.name)

    @classmethod
    def of(cls, *pairs: tuple[str, int]) -> "CompositeSpace":
        """``CompositeSpace.of(("Q", 2), ("P", 2))``."""
        return cls(tuple(Subsystem(n, d) for n, d in pairs))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.subsystems)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.subsystems)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims, dtype=int))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise SpaceError(f"unknown subsystem label {label!r}; space has {self.labels}") from None

    def subspace(self, labels: Iterable[str]) -> "CompositeSpace":
        """Sub-space on ``labels``, kept in this space's order."""
        wanted = set(labels)
        for lab in wanted:
            self.index(lab)
        return CompositeSpace(tuple(s for s in self.subsystems if s.name in wanted))

    def __add__(self, other: "CompositeSpace") -> "CompositeSpace":
        return CompositeSpace(self.subsystems + other.subsystems)


@dataclass(frozen=True, eq=False)
class StateVector:
    space: CompositeSpace
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.space.dim:
            raise InvalidStateError(f"expected {self.space.dim} amplitudes, got {amps.size}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidStateError(f"state vector norm {norm!r} differs from 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, space: CompositeSpace, amplitudes) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        return cls(space, amps / np.linalg.norm(amps))

    @property
    def labels(self) -> tuple[str, ...]:
        return self.space.labels

    def as_tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.space.dims)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    space: CompositeSpace
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        d = self.space.dim
        if m.shape != (d, d):
            raise InvalidStateError(f"expected a {d}x{d} matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T), initial=0.0) > HERMITIAN_TOL:
            raise InvalidStateError("density operator is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"density operator has trace {tr!r}")
        if np.linalg.eigvalsh(m)[0] < -POSITIVITY_TOL:
            raise InvalidStateError("density operator has a negative eigenvalue")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def maximally_mixed(cls, space: CompositeSpace) -> "DensityOperator":
        return cls(space, np.eye(space.dim) / space.dim)

    @property
    def labels(self) -> tuple[str, ...]:
        return self.space.labels


State = Union[StateVector, DensityOperator]


def basis_state(space: CompositeSpace, *indices: int) -> StateVector:
    """Computational basis ket with one index per subsystem."""
    amps = np.zeros(space.dims, dtype=complex)
    amps[tuple(indices)] = 1.0
    return StateVector(space, amps.reshape(-1))


def tensor(a: State, b: State) -> State:
    space = a.space + b.space
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(space, np.kron(a.amplitudes, b.amplitudes))
    if isinstance(a, DensityOperator) and isinstance(b, DensityOperator):
        return DensityOperator(space, np.kron(a.matrix, b.matrix))
    raise TypeError("tensor() needs two state vectors or two density operators")


def outer(v: StateVector) -> DensityOperator:
    a = v.amplitudes
    return DensityOperator(v.space, np.outer(a, a.conj()))


def _as_label_list(labels: Union[str, Iterable[str]]) -> list[str]:
    if isinstance(labels, str):
        return [labels]
    return list(labels)


def partial_trace(rho: State, keep: Union[str, Iterable[str]]) -> DensityOperator:
    """Reduced state on ``keep``; kept labels stay in their original order.

    Accepts a state vector as a shortcut for ``partial_trace(outer(v), keep)``.
    """
    keep = _as_label_list(keep)
    if not keep:
        raise SpaceError("partial_trace needs at least one label to keep")
    space = rho.space
    kept_idx = sorted(space.index(k) for k in keep)
    traced_idx = [i for i in range(len(space.dims)) if i not in kept_idx]
    dims = space.dims
    dk = int(np.prod([dims[i] for i in kept_idx], dtype=int))
    dt = int(np.prod([dims[i] for i in traced_idx], dtype=int))
    sub = CompositeSpace(tuple(space.subsystems[i] for i in kept_idx))

    if isinstance(rho, StateVector):
        psi = np.transpose(rho.as_tensor(), kept_idx + traced_idx).reshape(dk, dt)
        red = psi @ psi.conj().T
    else:
        n = len(dims)
        t = rho.matrix.reshape(dims + dims)
        perm = kept_idx + traced_idx
        t = np.transpose(t, perm + [n + i for i in perm]).reshape(dk, dt, dk, dt)
        red = np.einsum("ijkj->ik", t)
    # restore exact Hermiticity lost to summation order
    red = 0.5 * (red + red.conj().T)
    return DensityOperator(sub, red)


def reorder(v: State, order: Sequence[str]) -> State:
    """Permute the tensor factors of ``v`` into ``order``."""
    space = v.space
    if sorted(order) != sorted(space.labels) or len(order) != len(space.labels):
        raise SpaceError(f"reorder needs a permutation of {space.labels}, got {tuple(order)}")
    perm = [space.index(lab) for lab in order]
    new_space = CompositeSpace(tuple(space.subsystems[i] for i in perm))
    if isinstance(v, StateVector):
        return StateVector(new_space, np.transpose(v.as_tensor(), perm).reshape(-1))
    n = len(perm)
    t = v.matrix.reshape(space.dims + space.dims)
    t = np.transpose(t, perm + [n + i for i in perm])
    return DensityOperator(new_space, t.reshape(space.dim, space.dim))


def is_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol


def apply_unitary(v: StateVector, u: np.ndarray, target: Union[str, Sequence[str]]) -> StateVector:
    """Apply ``u`` to the ``target`` factor(s), identity elsewhere.

    With several targets, ``u`` acts on their Kronecker product in the order
    given, which need not match the order of the space.
    """
    targets = _as_label_list(target)
    space = v.space
    idx = [space.index(t) for t in targets]
    if len(set(idx)) != len(idx):
        raise SpaceError(f"repeated target label in {targets}")
    dt = int(np.prod([space.dims[i] for i in idx], dtype=int))
    u = np.asarray(u, dtype=complex)
    if u.shape != (dt, dt):
        raise ValueError(f"unitary shape {u.shape} does not match target dimension {dt}")
    if not is_unitary(u):
        raise ValueError("operator is not unitary")

    rest = [i for i in range(len(space.dims)) if i not in idx]
    perm = idx + rest
    psi = np.transpose(v.as_tensor(), perm).reshape(dt, -1)
    psi = (u @ psi).reshape([space.dims[i] for i in perm])
    psi = np.transpose(psi, np.argsort(perm))
    return StateVector(space, psi.reshape(-1))


def eigenvalues_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix in descending order."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if np.max(np.abs(m - m.conj().T), initial=0.0) > tol:
        raise ValueError("matrix is not Hermitian")
    return np.linalg.eigvalsh(m)[::-1]


def entropy_from_eigenvalues(evals: Iterable[float]) -> float:
    """Shannon entropy in bits of a spectrum, with 0 log 0 = 0."""
    lam = np.asarray(list(evals), dtype=float)
    if np.any(lam < -POSITIVITY_TOL):
        raise InvalidStateError(f"eigenvalue {lam.min()!r} is too negative to be roundoff")
    lam = np.clip(lam, 0.0, 1.0)
    nz = lam[lam > 0.0]
    return float(-np.sum(nz * np.log2(nz)))


def von_neumann_entropy(rho: State) -> float:
    """Entropy in bits. A state vector is pure, so its entropy is 0."""
    if isinstance(rho, StateVector):
        return 0.0
    return max(entropy_from_eigenvalues(eigenvalues_hermitian(rho.matrix)), 0.0)


def projectors_equal(a: State, b: State, atol: float = 1e-12) -> bool:
    """Compare two states up to global phase (via their density operators)."""
    if a.space.labels != b.space.labels or a.space.dims != b.space.dims:
        return False
    ma = outer(a).matrix if isinstance(a, StateVector) else a.matrix
    mb = outer(b).matrix if isinstance(b, StateVector) else b.matrix
    return bool(np.max(np.abs(ma - mb)) <= atol)


def condition(v: State, label: str, outcome: int) -> DensityOperator:
    """State of the other subsystems given that ``label`` reads ``outcome``.

    Projects onto the detector basis state and renormalises; the detector
    factor is dropped from the result.
    """
    rho = outer(v) if isinstance(v, StateVector) else v
    space = rho.space
    i = space.index(label)
    if not 0 <= outcome < space.dims[i]:
        raise ValueError(f"outcome {outcome} out of range for {label!r}")
    n = len(space.dims)
    t = rho.matrix.reshape(space.dims + space.dims)
    sel = [slice(None)] * (2 * n)
    sel[i] = outcome
    sel[n + i] = outcome
    rest = CompositeSpace(tuple(s for j, s in enumerate(space.subsystems) if j != i))
    m = t[tuple(sel)].reshape(rest.dim, rest.dim)
    p = np.trace(m).real
    if p <= 0:
        raise ValueError(f"outcome {outcome} of {label!r} has zero probability")
    m = m / p
    return DensityOperator(rest, 0.5 * (m + m.conj().T))
