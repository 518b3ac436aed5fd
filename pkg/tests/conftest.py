import hypothesis
import numpy as np
import pytest

from bell_eraser.tensor import CompositeSpace, DensityOperator, StateVector

hypothesis.settings.register_profile("default", max_examples=40, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.load_profile("default")


def random_pure(rng, space: CompositeSpace) -> StateVector:
    v = rng.normal(size=space.dim) + 1j * rng.normal(size=space.dim)
    return StateVector.normalized(space, v)


def random_mixed(rng, space: CompositeSpace, rank=None) -> DensityOperator:
    rank = space.dim if rank is None else rank
    g = rng.normal(size=(space.dim, rank)) + 1j * rng.normal(size=(space.dim, rank))
    m = g @ g.conj().T
    m = 0.5 * (m + m.conj().T) / np.trace(m).real
    return DensityOperator(space, m)


def random_unitary(rng, n: int) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(20161016)
