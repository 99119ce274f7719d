"""Shared builders for random test states and distributions."""

import numpy as np
import pytest

from shotbudget import DensityMatrix, PureState


def random_pure(rng, qubits):
    """Haar-ish random pure state: complex Gaussian amplitudes, normalized."""
    dim = 2**qubits
    raw = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState(raw / np.linalg.norm(raw))


def random_density(rng, qubits, rank=None):
    """Random density matrix A A^dagger / tr with A of shape (dim, rank)."""
    dim = 2**qubits
    rank = rank or dim
    a = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    mat = a @ a.conj().T
    return DensityMatrix(mat / np.trace(mat).real)


def random_hermitian(rng, dim):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (a + a.conj().T) / 2.0


@pytest.fixture
def rng():
    return np.random.default_rng(20260822)
