"""Tests for the dense complex linear algebra core."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from numpy.testing import assert_allclose

from src.config import Tolerances
from src.errors import DimensionMismatch, NonFiniteEntries, NotHermitian, ShapeMismatch
from src.linalg import (
    adjoint,
    as_cmatrix,
    case_rng,
    derive_seed,
    expm_i,
    herm_eig,
    hermitian_part,
    matmul,
    matrix_units,
    min_eigenvalue,
    op_norm,
    rank_span,
)
from tests.conftest import unit

# Magnitudes stay away from the subnormal range.
entries = st.one_of(
    st.just(0.0),
    st.floats(min_value=0.01, max_value=10.0),
    st.floats(min_value=-10.0, max_value=-0.01),
)


@st.composite
def hermitian_matrices(draw, min_dim=1, max_dim=6):
    n = draw(st.integers(min_value=min_dim, max_value=max_dim))
    re = draw(arrays(np.float64, (n, n), elements=entries))
    im = draw(arrays(np.float64, (n, n), elements=entries))
    return hermitian_part(re + 1j * im)


class TestPrimitives:
    """adjoint, matmul, as_cmatrix."""

    def test_adjoint_examples(self):
        assert_allclose(adjoint(np.array([[0, 1j], [0, 0]])), np.array([[0, 0], [-1j, 0]]))
        assert_allclose(adjoint(np.eye(2)), np.eye(2))
        assert_allclose(adjoint(np.array([[1 + 1j]])), np.array([[1 - 1j]]))

    def test_adjoint_transposes_shape(self, rng):
        a = rng.complex_matrix(2, 3)
        assert adjoint(a).shape == (3, 2)
        assert adjoint(a)[2, 1] == np.conj(a[1, 2])

    def test_matmul_identity_and_units(self, rng):
        a = rng.complex_matrix(2, 2)
        assert_allclose(matmul(np.eye(2), a), a)
        assert_allclose(matmul(unit(2, 2, 0, 1), unit(2, 2, 1, 0)), unit(2, 2, 0, 0))

    def test_matmul_matches_scalar_loop(self, rng):
        a = rng.complex_matrix(2, 3)
        b = rng.complex_matrix(3, 2)
        expected = sum(a[0, k] * b[k, 0] for k in range(3))
        assert matmul(a, b)[0, 0] == pytest.approx(expected, abs=1e-14)

    def test_matmul_dimension_mismatch(self, rng):
        with pytest.raises(DimensionMismatch):
            matmul(rng.complex_matrix(2, 3), rng.complex_matrix(2, 3))

    def test_as_cmatrix_rejects_non_finite(self):
        with pytest.raises(NonFiniteEntries):
            as_cmatrix([[1.0, np.nan]])
        with pytest.raises(NonFiniteEntries):
            as_cmatrix([[np.inf]])

    def test_as_cmatrix_rejects_non_matrices(self):
        with pytest.raises(ShapeMismatch):
            as_cmatrix([1.0, 2.0])
        with pytest.raises(ShapeMismatch):
            as_cmatrix(np.zeros((0, 3)))

    def test_hermitian_part_is_exactly_hermitian(self, rng):
        h = hermitian_part(rng.complex_matrix(4, 4))
        assert np.array_equal(h, adjoint(h))


class TestOpNorm:
    """Spectral norm."""

    def test_diagonal(self):
        assert op_norm(np.diag([3.0, -4.0])) == pytest.approx(4.0)

    def test_zero(self):
        assert op_norm(np.zeros((3, 2))) == 0.0

    def test_golden_ratio(self):
        assert op_norm(np.array([[1, 1], [0, 1]])) == pytest.approx((1 + math.sqrt(5)) / 2, rel=1e-7)

    def test_cstar_identity(self, rng):
        for _ in range(20):
            a = rng.complex_matrix(4, 4)
            assert op_norm(adjoint(a) @ a) == pytest.approx(op_norm(a) ** 2, rel=1e-10)


class TestHermEig:
    """Cyclic Jacobi eigendecomposition."""

    def test_diagonal_sorted(self):
        result = herm_eig(np.diag([2.0, 1.0]))
        assert_allclose(result.eigenvalues, [1.0, 2.0])

    def test_pauli_x(self, pauli_x):
        assert_allclose(herm_eig(pauli_x).eigenvalues, [-1.0, 1.0], atol=1e-14)

    def test_permutation_similarity(self, rng):
        a = rng.hermitian(4)
        p = np.eye(4)[[2, 0, 3, 1]]
        assert_allclose(herm_eig(a).eigenvalues, herm_eig(p @ a @ p.T).eigenvalues, atol=1e-12)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_reconstruction_and_orthonormality(self, n, seed):
        rng = case_rng(seed, f"herm_eig/{n}")
        tol = Tolerances().eig
        for _ in range(100):
            a = rng.hermitian(n)
            result = herm_eig(a)
            assert result.orthonormality_defect() <= tol
            assert op_norm(a - result.reconstruct()) <= tol * op_norm(a)
            assert np.all(np.diff(result.eigenvalues) >= 0)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            herm_eig(np.array([[0, 1], [0, 0]]))
        with pytest.raises(NotHermitian):
            herm_eig(np.zeros((2, 3)))

    def test_zero_matrix(self):
        result = herm_eig(np.zeros((3, 3)))
        assert_allclose(result.eigenvalues, np.zeros(3))
        assert_allclose(result.eigenvectors, np.eye(3))

    def test_min_eigenvalue_uses_hermitian_part(self):
        assert min_eigenvalue(np.array([[1.0, 2.0], [0.0, 1.0]])) == pytest.approx(0.0, abs=1e-14)

    @settings(max_examples=40, deadline=None)
    @given(a=hermitian_matrices())
    def test_reconstruction_property(self, a):
        result = herm_eig(a)
        assert op_norm(a - result.reconstruct()) <= 1e-10 * max(op_norm(a), 1.0)


class TestExpmI:
    """e^{itT} through the eigendecomposition."""

    def test_time_zero_is_identity(self, rng):
        assert_allclose(expm_i(rng.hermitian(3), 0.0), np.eye(3), atol=1e-14)

    def test_pauli_x_at_pi(self, pauli_x):
        assert_allclose(expm_i(pauli_x, math.pi), -np.eye(2), atol=1e-14)

    def test_diagonal_quarter_turn(self, diag_12):
        assert_allclose(expm_i(diag_12, math.pi / 2), np.diag([1j, -1.0]), atol=1e-15)

    def test_group_law_and_adjoint(self, rng):
        for _ in range(20):
            t_matrix = rng.hermitian(4)
            t, s = rng.uniform(-10, 10), rng.uniform(-10, 10)
            product = expm_i(t_matrix, t) @ expm_i(t_matrix, s)
            assert op_norm(product - expm_i(t_matrix, t + s)) <= 1e-10
            assert op_norm(adjoint(expm_i(t_matrix, t)) - expm_i(t_matrix, -t)) <= 1e-10

    @settings(max_examples=40, deadline=None)
    @given(a=hermitian_matrices(), t=st.floats(min_value=-10.0, max_value=10.0))
    def test_unitary(self, a, t):
        u = expm_i(a, t)
        assert op_norm(adjoint(u) @ u - np.eye(a.shape[0])) <= 1e-10


class TestRankSpan:
    """Span dimension by complete-pivot elimination."""

    def test_matrix_units(self):
        assert rank_span(matrix_units(2, 2)) == 4

    def test_colinear(self):
        assert rank_span([np.eye(2), 2 * np.eye(2)]) == 1

    def test_outer_products_of_columns(self):
        columns = matrix_units(2, 1)
        assert rank_span([x @ adjoint(y) for x in columns for y in columns]) == 4

    def test_zero_list(self):
        assert rank_span([np.zeros((2, 2))]) == 0

    def test_permutation_invariant(self, rng):
        mats = [rng.complex_matrix(2, 2) for _ in range(3)] + [np.zeros((2, 2))]
        mats.append(mats[0] + mats[1])
        assert rank_span(mats) == rank_span(mats[::-1]) == 3

    def test_errors(self):
        with pytest.raises(ShapeMismatch):
            rank_span([])
        with pytest.raises(ShapeMismatch):
            rank_span([np.eye(2), np.eye(3)])


class TestSampling:
    """Seed derivation and samplers."""

    def test_derive_seed_is_stable_and_path_dependent(self, seed):
        assert derive_seed(seed, "a") == derive_seed(seed, "a")
        assert derive_seed(seed, "a") != derive_seed(seed, "b")
        assert derive_seed(seed, "a") != derive_seed(seed + 1, "a")
        assert 0 <= derive_seed(seed, "a") < 2**64

    def test_same_path_same_numbers(self, seed):
        first = case_rng(seed, "case").complex_matrix(3, 3)
        second = case_rng(seed, "case").complex_matrix(3, 3)
        assert np.array_equal(first, second)

    def test_unitary_and_hermitian_samples(self, rng):
        u = rng.unitary(5)
        assert op_norm(adjoint(u) @ u - np.eye(5)) <= 1e-12
        h = rng.hermitian(5)
        assert np.array_equal(h, adjoint(h))

    def test_provenance(self, seed):
        assert case_rng(seed, "x/y").provenance() == {"seed": seed, "path": "x/y"}
