"""Tests for module dynamical systems and their generators."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.config import Tolerances
from src.errors import DimensionMismatch, NotHermitian, PreconditionViolated, SpaceMismatch
from src.linalg import op_norm
from src.algebra import AlgebraElement, check_star_homomorphism
from src.hilbert import ModuleSpace
from src.morphisms import check_unitary
from src.dynamics import (
    ConvergenceLadder,
    DynamicalSystem,
    algebra_convergence_order,
    algebra_generator_exact,
    check_flow_covariance,
    check_generator_leibniz,
    check_group_law,
    check_identity_at_zero,
    check_recovered_derivation,
    check_strong_continuity,
    convergence_order,
    estimate_algebra_generator,
    estimate_generator,
    evolve,
    flow_morphism,
    generator_exact,
    induced_algebra_flow,
    induced_star_morphism,
    random_system,
    zero_system,
)
from tests.conftest import unit


@pytest.fixture
def pauli_system(column_space, pauli_x):
    return DynamicalSystem(column_space, pauli_x)


@pytest.fixture
def diagonal_system(column_space, diag_12):
    return DynamicalSystem(column_space, diag_12)


@pytest.fixture
def e1(column_space):
    return column_space.element([[1.0], [0.0]])


class TestDynamicalSystem:
    """Construction and the propagator."""

    def test_rejects_non_hermitian(self, column_space):
        with pytest.raises(NotHermitian):
            DynamicalSystem(column_space, np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_rejects_wrong_size(self, space, pauli_x):
        with pytest.raises(DimensionMismatch):
            DynamicalSystem(space, pauli_x)

    def test_describe(self, pauli_system):
        assert pauli_system.describe() == {"algebra_dim": 2, "module_cols": 1, "generator_norm": pytest.approx(1.0)}

    def test_propagator_at_zero(self, space, rng):
        system = random_system(space, rng)
        assert_allclose(system.propagator(0.0), np.eye(3), atol=1e-14)


class TestEvolve:
    """alpha_t and the induced flow."""

    def test_pauli_half_turn(self, pauli_system, e1):
        assert_allclose(evolve(pauli_system, math.pi, e1).value, [[-1.0], [0.0]], atol=1e-14)

    def test_diagonal_quarter_turn(self, diagonal_system, e1):
        assert_allclose(evolve(diagonal_system, math.pi / 2, e1).value, [[1j], [0.0]], atol=1e-15)

    def test_induced_flow_of_matrix_unit(self, diagonal_system):
        for t in (0.3, -1.7, 4.0):
            flowed = induced_algebra_flow(diagonal_system, t, AlgebraElement(unit(2, 2, 0, 1)))
            assert_allclose(flowed.value, np.exp(-1j * t) * unit(2, 2, 0, 1), atol=1e-14)

    def test_space_mismatch(self, pauli_system, space):
        with pytest.raises(SpaceMismatch):
            evolve(pauli_system, 1.0, space.zero())

    def test_algebra_mismatch(self, pauli_system):
        with pytest.raises(DimensionMismatch):
            induced_algebra_flow(pauli_system, 1.0, AlgebraElement.identity(3))

    def test_flow_is_a_unitary_operator(self, space, rng):
        system = random_system(space, rng)
        assert check_unitary(flow_morphism(system, 2.5), trials=30, seed=1).ok

    def test_induced_flow_is_an_automorphism(self, space, rng):
        system = random_system(space, rng)
        assert check_star_homomorphism(induced_star_morphism(system, -3.0), trials=50, seed=1).ok


class TestGroupLaw:
    """alpha_{t+s} = alpha_t alpha_s."""

    def test_random_system(self, space, rng):
        report = check_group_law(random_system(space, rng), trials=100, seed=2)
        assert report.ok
        assert {case.name for case in report.cases} == {"module", "algebra", "inverse"}

    @pytest.mark.parametrize("n", range(2, 7))
    def test_many_samples(self, n, rng):
        report = check_group_law(random_system(ModuleSpace(n, 2), rng), trials=500, seed=2)
        assert report.ok
        assert report.case("module").residual <= 1e-11

    def test_zero_generator(self, space):
        report = check_group_law(zero_system(space), trials=20, seed=2)
        assert report.ok
        assert report.max_residual == 0.0

    def test_identity_at_zero(self, space, rng):
        report = check_identity_at_zero(random_system(space, rng), trials=50, seed=3)
        assert report.ok
        assert report.max_residual <= 1e-13

    def test_covariance(self, space, rng):
        report = check_flow_covariance(random_system(space, rng), trials=100, seed=4)
        assert report.ok
        assert {case.name for case in report.cases} == {"inner_product", "module_action", "norm_conserved"}

    def test_trials_must_be_positive(self, space):
        with pytest.raises(PreconditionViolated):
            check_group_law(zero_system(space), trials=0)


class TestStrongContinuity:
    """alpha_t(x) -> x as t -> 0."""

    def test_pauli_deviations(self, pauli_system, e1):
        schedule = (1e-1, 1e-2, 1e-3)
        report = check_strong_continuity(pauli_system, e1, schedule)
        assert report.ok
        deviations = report.case("module_bound").params["deviations"]
        assert_allclose(deviations, [2 * abs(math.sin(t / 2)) for t in schedule], rtol=1e-10)

    def test_with_algebra_element(self, space, rng):
        system = random_system(space, rng)
        x = space.element(rng.complex_matrix(3, 2))
        a = AlgebraElement(rng.complex_matrix(3, 3))
        report = check_strong_continuity(system, x, a=a)
        assert report.ok
        assert {case.name for case in report.cases} == {
            "module_bound",
            "module_monotone",
            "algebra_bound",
            "algebra_monotone",
            "action_triangle",
        }

    def test_zero_element(self, pauli_system, column_space):
        report = check_strong_continuity(pauli_system, column_space.zero())
        assert report.ok
        assert report.case("module_bound").params["deviations"] == [0.0] * 6

    def test_zero_generator(self, space, rng):
        x = space.element(rng.complex_matrix(3, 2))
        report = check_strong_continuity(zero_system(space), x)
        assert report.ok
        assert max(report.case("module_bound").params["deviations"]) == 0.0

    @pytest.mark.parametrize("schedule", [(), (1e-2, 1e-1), (1e-2, 1e-2), (1e-1, 1e-9)])
    def test_bad_schedule(self, pauli_system, e1, schedule):
        with pytest.raises(PreconditionViolated):
            check_strong_continuity(pauli_system, e1, schedule)


class TestGenerator:
    """Central differences against the exact generators."""

    def test_estimate_close_to_exact(self, space, rng):
        system = random_system(space, rng)
        x = space.element(rng.complex_matrix(3, 2))
        estimate = estimate_generator(system, x, 1e-3).value
        exact = generator_exact(system, x).value
        bound = 1e-6 * system.generator_norm ** 3 * op_norm(x.value) + 1e-10
        assert op_norm(estimate - exact) <= bound

    def test_algebra_estimate_close_to_exact(self, space, rng):
        system = random_system(space, rng)
        a = AlgebraElement(rng.complex_matrix(3, 3))
        estimate = estimate_algebra_generator(system, a, 1e-3).value
        exact = algebra_generator_exact(system, a).value
        bound = 8e-6 * system.generator_norm ** 3 * a.norm + 1e-10
        assert op_norm(estimate - exact) <= bound

    def test_identity_is_central(self, space, rng):
        system = random_system(space, rng)
        identity = AlgebraElement.identity(3)
        assert op_norm(algebra_generator_exact(system, identity).value) <= 1e-14
        assert op_norm(estimate_algebra_generator(system, identity, 1e-3).value) <= 1e-9

    def test_step_must_be_positive(self, pauli_system, e1):
        with pytest.raises(PreconditionViolated):
            estimate_generator(pauli_system, e1, 0.0)
        with pytest.raises(PreconditionViolated):
            estimate_algebra_generator(pauli_system, AlgebraElement.identity(2), -1e-3)

    def test_pauli_ladder_is_second_order(self, pauli_system, e1):
        ladder = convergence_order(pauli_system, e1)
        assert len(ladder.steps) == 7
        assert ladder.is_second_order()
        assert all(3.5 <= ratio <= 4.5 for ratio in ladder.judged_ratios())
        assert ladder.judged_ratios()

    def test_algebra_ladder(self, space, rng):
        system = random_system(space, rng)
        ladder = algebra_convergence_order(system, AlgebraElement(rng.complex_matrix(3, 3)))
        assert ladder.is_second_order()

    def test_zero_generator_is_exact(self, space, rng):
        ladder = convergence_order(zero_system(space), space.element(rng.complex_matrix(3, 2)))
        assert ladder.exact
        assert ladder.ratios == [None] * 6
        assert ladder.is_second_order()
        assert ladder.to_dict()["exact"] is True

    def test_ladder_needs_two_levels(self, pauli_system, e1):
        with pytest.raises(PreconditionViolated):
            convergence_order(pauli_system, e1, levels=1)

    def test_ladder_ratios(self):
        ladder = ConvergenceLadder([(1e-2, 4e-4), (5e-3, 1e-4), (2.5e-3, 0.0)], floor=1e-20)
        assert ladder.ratios[0] == pytest.approx(4.0)
        assert ladder.ratios[1] == float("inf")
        assert ladder.judged_ratios() == [pytest.approx(4.0)]
        assert ladder.is_second_order()

    def test_first_order_ladder(self):
        ladder = ConvergenceLadder([(1e-2, 4e-4), (5e-3, 2e-4), (2.5e-3, 1e-4)], floor=1e-20)
        assert not ladder.is_second_order()


class TestGeneratorLeibniz:
    """The flow's generators form a generalized derivation."""

    def test_fixed_case(self, pauli_system, column_space):
        a = AlgebraElement(unit(2, 2, 0, 0))
        x = column_space.element([[0.0], [1.0]])
        ax = column_space.element(a.value @ x.value)
        lhs = generator_exact(pauli_system, ax).value
        rhs = a.value @ generator_exact(pauli_system, x).value
        rhs = rhs + algebra_generator_exact(pauli_system, a).value @ x.value
        assert_allclose(lhs, rhs, atol=1e-15)
        assert_allclose(rhs, np.zeros((2, 1)), atol=1e-15)

    def test_random_system_passes(self, space, rng):
        report = check_generator_leibniz(random_system(space, rng), trials=50, seed=5)
        assert report.ok
        assert {case.name for case in report.cases} == {"exact", "numerical", "generalized_leibniz/leibniz"}

    def test_zero_generator(self, space):
        report = check_generator_leibniz(zero_system(space), trials=20, seed=5)
        assert report.case("exact").residual == 0.0
        assert report.case("numerical").residual == 0.0

    def test_zero_tolerance_fails_numerical_layer(self, space, rng):
        tol = Tolerances().with_overrides({"theorem43": 0.0})
        report = check_generator_leibniz(random_system(space, rng), trials=20, seed=5, tol=tol)
        assert report.case("exact").passed
        assert not report.case("numerical").passed
        assert report.exit_code == 1

    def test_recovered_derivation(self, space, rng):
        report = check_recovered_derivation(random_system(space, rng))
        assert report.ok

    def test_recovered_derivation_of_columns(self, pauli_system):
        assert check_recovered_derivation(pauli_system).case("recovered_d").residual <= 1e-10

    def test_one_dimensional_system(self):
        system = DynamicalSystem(ModuleSpace(1, 1), np.array([[2.0]]))
        assert check_generator_leibniz(system, trials=10, seed=6).ok
