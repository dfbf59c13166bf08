"""Tests for generalized derivations and their Lie structure."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.errors import DimensionMismatch, NotHermitian, PreconditionViolated, SpaceMismatch
from src.linalg import case_rng, op_norm
from src.hilbert import ModuleSpace
from src.derivations import (
    CommutatorMap,
    ConjugationMap,
    GeneralizedDerivation,
    LeftMultGenerator,
    MatrixMap,
    NoConsistentD,
    bracket,
    check_generalized_leibniz,
    check_induced_d_is_derivation,
    check_jacobi,
    check_linearity,
    combine,
    commutator_derivation,
    lie_bracket,
    linear_combination,
    recover_d,
)
from tests.conftest import unit


@pytest.fixture
def broken_pair(column_space, diag_12):
    """delta = iT paired with d = 0, which is not its d."""
    return GeneralizedDerivation(column_space, LeftMultGenerator(diag_12, 1), MatrixMap.zero((2, 2)))


class TestMaps:
    """The linear maps derivations are built from."""

    def test_structural_matrices_match_evaluation(self, rng):
        t = rng.hermitian(3)
        for linear_map in (LeftMultGenerator(t, 2), CommutatorMap(t)):
            value = rng.complex_matrix(*linear_map.shape)
            vectorized = (linear_map.matrix() @ value.reshape(-1)).reshape(linear_map.shape)
            assert_allclose(vectorized, linear_map(value), atol=1e-12)

    def test_commutator_of_diagonal(self, diag_12):
        assert_allclose(CommutatorMap(diag_12)(unit(2, 2, 0, 1)), -1j * unit(2, 2, 0, 1))

    def test_commutator_of_pauli_x(self, pauli_x):
        d_e11 = CommutatorMap(pauli_x)(unit(2, 2, 0, 0))
        assert_allclose(d_e11, 1j * (unit(2, 2, 1, 0) - unit(2, 2, 0, 1)))

    def test_combine_stays_structural(self, rng):
        t1, t2 = rng.hermitian(2), rng.hermitian(2)
        combined = combine(2.0, CommutatorMap(t1), 1j, CommutatorMap(t2))
        assert isinstance(combined, CommutatorMap)
        assert_allclose(combined.generator, 2.0 * t1 + 1j * t2)

    def test_bracket_of_generators(self, rng):
        t1, t2 = rng.hermitian(3), rng.hermitian(3)
        first, second = LeftMultGenerator(t1, 1), LeftMultGenerator(t2, 1)
        structural = bracket(first, second)
        x = rng.complex_matrix(3, 1)
        direct = first(second(x)) - second(first(x))
        assert_allclose(structural(x), direct, atol=1e-12)

    def test_shape_mismatch(self, rng):
        with pytest.raises(DimensionMismatch):
            combine(1, CommutatorMap(rng.hermitian(2)), 1, CommutatorMap(rng.hermitian(3)))

    def test_conjugation_has_no_matrix(self):
        with pytest.raises(PreconditionViolated):
            ConjugationMap((2, 1)).matrix()


class TestCommutatorDerivation:
    """delta = iT, d = i[T, .]."""

    def test_default_space(self, diag_12):
        gd = commutator_derivation(diag_12)
        assert gd.space == ModuleSpace(2, 1)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            commutator_derivation(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_rejects_wrong_space(self, diag_12, space):
        with pytest.raises(DimensionMismatch):
            commutator_derivation(diag_12, space)

    def test_pair_shapes_checked(self, column_space, diag_12):
        with pytest.raises(DimensionMismatch):
            GeneralizedDerivation(column_space, LeftMultGenerator(diag_12, 2), CommutatorMap(diag_12))


class TestGeneralizedLeibniz:
    """delta(ax) = a delta(x) + d(a) x."""

    @pytest.mark.parametrize("n,k", [(2, 1), (3, 2), (4, 1)])
    def test_commutator_derivations_pass(self, n, k, rng):
        gd = commutator_derivation(rng.hermitian(n), ModuleSpace(n, k))
        report = check_generalized_leibniz(gd, trials=100, seed=1)
        assert report.ok

    def test_wrong_d_fails(self, broken_pair):
        report = check_generalized_leibniz(broken_pair, trials=20, seed=1)
        case = report.case("leibniz")
        assert not case.passed
        assert case.residual >= 0.5
        assert report.exit_code == 1

    def test_wrong_d_residual_at_matrix_unit(self, broken_pair):
        a, x = unit(2, 2, 0, 1), unit(2, 1, 1, 0)
        residual = op_norm(broken_pair.delta(a @ x) - a @ broken_pair.delta(x) - broken_pair.d(a) @ x)
        assert residual / (1.0 + op_norm(a) * op_norm(x)) == pytest.approx(0.5)

    def test_trials_must_be_positive(self, diag_12):
        with pytest.raises(PreconditionViolated):
            check_generalized_leibniz(commutator_derivation(diag_12), trials=0)


class TestInducedDerivation:
    """d is itself a derivation of the algebra."""

    def test_commutator_d_is_derivation(self, rng):
        gd = commutator_derivation(rng.hermitian(3), ModuleSpace(3, 2))
        report = check_induced_d_is_derivation(gd, trials=100, seed=2)
        assert report.ok
        assert report.case("derivation").tolerance == pytest.approx(1e-9)

    def test_requires_leibniz(self, broken_pair):
        with pytest.raises(PreconditionViolated):
            check_induced_d_is_derivation(broken_pair, trials=10)

    def test_linearity(self, rng):
        gd = commutator_derivation(rng.hermitian(3), ModuleSpace(3, 2))
        report = check_linearity(gd, trials=50, seed=3)
        assert report.ok
        assert {case.name for case in report.cases} == {"delta_linear", "d_linear"}

    def test_conjugation_is_not_linear(self, column_space, diag_12):
        gd = GeneralizedDerivation(column_space, ConjugationMap((2, 1)), CommutatorMap(diag_12))
        report = check_linearity(gd, trials=20, seed=3)
        assert not report.case("delta_linear").passed
        assert report.case("d_linear").passed


class TestRecoverD:
    """Solving for d from delta."""

    @pytest.mark.parametrize("n,k", [(2, 1), (2, 2), (3, 2)])
    def test_round_trip(self, n, k, rng):
        t = rng.hermitian(n)
        recovered = recover_d(LeftMultGenerator(t, k), ModuleSpace(n, k))
        assert isinstance(recovered, MatrixMap)
        assert np.max(np.abs(recovered.matrix() - CommutatorMap(t).matrix())) <= 1e-10

    @pytest.mark.parametrize("n", range(2, 7))
    def test_round_trip_over_random_generators(self, n):
        for seed in range(100):
            t = case_rng(seed, f"recover/{n}").hermitian(n)
            k = 1 + seed % 3
            recovered = recover_d(LeftMultGenerator(t, k), ModuleSpace(n, k))
            assert isinstance(recovered, MatrixMap), seed
            error = np.max(np.abs(recovered.matrix() - CommutatorMap(t).matrix()))
            assert error <= 1e-10 * max(1.0, op_norm(t)), seed

    def test_recovered_pair_is_a_derivation(self, rng):
        space = ModuleSpace(3, 2)
        delta = LeftMultGenerator(rng.hermitian(3), 2)
        gd = GeneralizedDerivation(space, delta, recover_d(delta, space))
        assert check_generalized_leibniz(gd, trials=50, seed=4).ok

    def test_generic_map_has_no_consistent_d(self, rng):
        space = ModuleSpace(2, 2)
        delta = MatrixMap(rng.complex_matrix(4, 4), (2, 2))
        result = recover_d(delta, space)
        assert isinstance(result, NoConsistentD)
        assert result.residual > 1e-8
        assert 0 <= result.basis_index[0] < 2 and 0 <= result.basis_index[1] < 2

    def test_columns_always_have_some_d(self, rng):
        # On C^n every linear map is a matrix, so some d always exists.
        delta = MatrixMap(rng.complex_matrix(3, 3), (3, 1))
        assert isinstance(recover_d(delta, ModuleSpace(3, 1)), MatrixMap)

    def test_conjugation_violates_precondition(self, column_space):
        with pytest.raises(PreconditionViolated):
            recover_d(ConjugationMap((2, 1)), column_space)

    def test_shape_mismatch(self, space, diag_12):
        with pytest.raises(DimensionMismatch):
            recover_d(LeftMultGenerator(diag_12, 1), space)


class TestLieStructure:
    """GDer(M) is a complex vector space and a Lie algebra."""

    def test_real_combination_is_a_commutator_derivation(self, space, rng):
        t1, t2 = rng.hermitian(3), rng.hermitian(3)
        combined = linear_combination(commutator_derivation(t1, space), commutator_derivation(t2, space), 0.75, -2.0)
        expected = commutator_derivation(0.75 * t1 - 2.0 * t2, space)
        for _ in range(100):
            x, a = rng.complex_matrix(3, 2), rng.complex_matrix(3, 3)
            assert_allclose(combined.delta(x), expected.delta(x), atol=1e-12)
            assert_allclose(combined.d(a), expected.d(a), atol=1e-12)

    def test_zero_coefficients_give_zero_derivation(self, space, rng):
        gd1 = commutator_derivation(rng.hermitian(3), space)
        gd2 = commutator_derivation(rng.hermitian(3), space)
        combined = linear_combination(gd1, gd2, 0.0, 0.0)
        assert not np.any(combined.delta.matrix())
        assert not np.any(combined.d.matrix())

    def test_self_bracket_is_zero(self, space, rng):
        gd = commutator_derivation(rng.hermitian(3), space)
        bracketed = lie_bracket(gd, gd)
        assert not np.any(bracketed.delta.matrix())
        assert not np.any(bracketed.d.matrix())

    def test_bracket_with_zero_derivation(self, space, rng):
        gd = commutator_derivation(rng.hermitian(3), space)
        bracketed = lie_bracket(gd, commutator_derivation(np.zeros((3, 3)), space))
        assert not np.any(bracketed.delta.matrix())
        assert not np.any(bracketed.d.matrix())

    def test_bracket_of_projection_and_pauli_x(self, column_space, pauli_x, rng):
        e11 = unit(2, 2, 0, 0)
        bracketed = lie_bracket(commutator_derivation(e11, column_space), commutator_derivation(pauli_x, column_space))
        # [E11, X] = E12 - E21
        left = -(unit(2, 2, 0, 1) - unit(2, 2, 1, 0))
        for _ in range(20):
            x = rng.complex_matrix(2, 1)
            assert_allclose(bracketed.delta(x), left @ x, atol=1e-15)

    def test_linear_combination(self, space, rng):
        gd1 = commutator_derivation(rng.hermitian(3), space)
        gd2 = commutator_derivation(rng.hermitian(3), space)
        combined = linear_combination(gd1, gd2, 0.5 - 2j, 3.0)
        assert check_generalized_leibniz(combined, trials=100, seed=5).ok

    def test_bracket(self, space, rng):
        gd1 = commutator_derivation(rng.hermitian(3), space)
        gd2 = commutator_derivation(rng.hermitian(3), space)
        bracketed = lie_bracket(gd1, gd2)
        assert check_generalized_leibniz(bracketed, trials=100, seed=6).ok

    def test_bracket_of_general_maps(self, column_space, rng):
        gd1 = commutator_derivation(rng.hermitian(2), column_space)
        delta = LeftMultGenerator(rng.hermitian(2), 1)
        gd2 = GeneralizedDerivation(column_space, delta, recover_d(delta, column_space))
        assert check_generalized_leibniz(lie_bracket(gd1, gd2), trials=50, seed=7).ok

    def test_jacobi(self, space, rng):
        gds = [commutator_derivation(rng.hermitian(3), space) for _ in range(3)]
        report = check_jacobi(*gds, trials=50, seed=8)
        assert report.ok
        assert {case.name for case in report.cases} == {"jacobi_delta", "jacobi_d"}

    def test_space_mismatch(self, space, column_space, rng):
        gd1 = commutator_derivation(rng.hermitian(3), space)
        gd2 = commutator_derivation(rng.hermitian(2), column_space)
        with pytest.raises(SpaceMismatch):
            linear_combination(gd1, gd2, 1, 1)
        with pytest.raises(SpaceMismatch):
            lie_bracket(gd1, gd2)
