"""Shared fixtures for the cstar-flow test suite."""

import numpy as np
import pytest

from src.linalg import case_rng
from src.hilbert import ModuleSpace


@pytest.fixture
def seed():
    return 20240607


@pytest.fixture
def rng(seed):
    """A sampler private to the requesting test."""
    return case_rng(seed, "tests")


@pytest.fixture
def space():
    """The default module M_{3x2} over M_3."""
    return ModuleSpace(3, 2)


@pytest.fixture
def column_space():
    """C^2 as a module over M_2."""
    return ModuleSpace(2, 1)


@pytest.fixture
def pauli_x():
    return np.array([[0, 1], [1, 0]], dtype=np.complex128)


@pytest.fixture
def diag_12():
    return np.diag([1.0, 2.0]).astype(np.complex128)


def unit(rows: int, cols: int, p: int, q: int) -> np.ndarray:
    """Matrix unit with a 1 at (p, q), zero-based."""
    out = np.zeros((rows, cols), dtype=np.complex128)
    out[p, q] = 1.0
    return out
