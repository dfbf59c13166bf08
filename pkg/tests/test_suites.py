"""Tests for the suite runner and the induced-generator demo."""

import json

import pytest

from src.config import Suite, SuiteConfig, Tolerances
from src.errors import PreconditionViolated
from src.report import CheckReport, render_json
from src.suites import (
    SUITES,
    SuiteJob,
    collect_jobs,
    demo_induced_generator,
    run_induced_generator_demo,
    run_suite,
)


def make_config(**overrides) -> SuiteConfig:
    params = dict(suites=(Suite.ALL,), algebra_dim=3, module_cols=2, trials=20, master_seed=42, workers=1)
    params.update(overrides)
    return SuiteConfig(**params)


def _reject_constant(token):
    raise ValueError(f"non-standard JSON constant {token}")


def without_timing(report: CheckReport) -> dict:
    data = report.to_dict()
    data["summary"].pop("seconds")
    return data


class TestCollectJobs:
    """Registry and job naming."""

    def test_every_suite_registered(self):
        assert set(SUITES) == {suite for suite in Suite if suite is not Suite.ALL}

    def test_names_are_prefixed_and_unique(self):
        names = [job.name for job in collect_jobs(make_config())]
        assert len(names) == len(set(names))
        assert "dynamics/generator_leibniz" in names
        assert "morphism/projection" in names
        assert {name.split("/")[0] for name in names} == {suite.value for suite in SUITES}

    def test_large_algebras_skip_exhaustive_jobs(self):
        names = [job.name for job in collect_jobs(make_config(suites=(Suite.DERIVATION,), algebra_dim=12))]
        assert "derivation/recover_d" not in names
        assert "derivation/leibniz" in names


class TestRunSuite:
    """End-to-end runs."""

    @pytest.mark.parametrize("n,k", [(1, 1), (3, 2)])
    def test_all_suites_pass(self, n, k):
        report = run_suite(make_config(algebra_dim=n, module_cols=k))
        failed = [case.name for case in report.cases if not case.passed]
        assert failed == []
        assert report.exit_code == 0
        assert report.suite == "all"

    def test_deterministic(self):
        config = make_config(suites=(Suite.DYNAMICS, Suite.DERIVATION))
        assert without_timing(run_suite(config)) == without_timing(run_suite(config))

    def test_independent_of_workers(self):
        serial = run_suite(make_config(suites=(Suite.MORPHISM,), workers=1))
        parallel = run_suite(make_config(suites=(Suite.MORPHISM,), workers=4))
        assert without_timing(serial) == without_timing(parallel)

    def test_seed_changes_residuals(self):
        first = run_suite(make_config(suites=(Suite.MODULE_AXIOMS,), master_seed=1))
        second = run_suite(make_config(suites=(Suite.MODULE_AXIOMS,), master_seed=2))
        assert first.case("module-axioms/axioms/linear_first").residual != second.case(
            "module-axioms/axioms/linear_first"
        ).residual

    def test_cases_sorted(self):
        names = [case.name for case in run_suite(make_config(suites=(Suite.UNITARY,))).cases]
        assert names == sorted(names)

    def test_zero_tolerance_fails_dynamics(self):
        tolerances = Tolerances().with_overrides({"theorem43": 0.0})
        report = run_suite(make_config(suites=(Suite.DYNAMICS,), tolerances=tolerances))
        assert not report.case("dynamics/generator_leibniz/numerical").passed
        assert report.case("dynamics/generator_leibniz/exact").passed
        assert report.exit_code == 1

    def test_counterexamples_are_asserted(self):
        report = run_suite(make_config(suites=(Suite.MORPHISM, Suite.UNITARY), algebra_dim=2, module_cols=1))
        for name in (
            "morphism/projection/fails_diagonal",
            "morphism/projection/fails_polarized",
            "unitary/zero/not_injective",
            "unitary/zero/phi_morphism",
            "unitary/projection/not_phi_morphism",
            "unitary/projection/not_surjective",
            "unitary/block_inclusion/not_surjective",
        ):
            assert report.case(name).passed, name
        assert report.case("unitary/projection/not_surjective").params["residual"] == 1.0

    def test_projection_is_no_counterexample_in_m1(self):
        report = run_suite(make_config(suites=(Suite.MORPHISM, Suite.UNITARY), algebra_dim=1, module_cols=1))
        names = {case.name for case in report.cases}
        assert "morphism/projection/polarization" in names
        assert "morphism/projection/fails_diagonal" not in names
        assert not any(name.startswith("unitary/projection/") for name in names)
        assert report.ok

    def test_config_block(self):
        report = run_suite(make_config(suites=(Suite.UNITARY,)))
        assert report.config["master_seed"] == 42
        assert report.config["suites"] == ["unitary"]
        assert report.config["tolerances"]["theorem43"] == 1e-6

    def test_raising_job_becomes_error_case(self, monkeypatch):
        def builder(config):
            return [SuiteJob("boom", lambda seed: 1 / 0)]

        monkeypatch.setitem(SUITES, Suite.UNITARY, builder)
        report = run_suite(make_config(suites=(Suite.UNITARY,)))
        case = report.case("unitary/boom/error")
        assert not case.passed
        assert case.residual == float("inf")
        assert case.witness["error"].startswith("ZeroDivisionError")
        assert report.exit_code == 1
        data = json.loads(render_json(report), parse_constant=_reject_constant)
        assert data["cases"][0]["residual_non_finite"] == "inf"


class TestDemo:
    """The induced-generator demonstration."""

    def test_fixed_case(self):
        assert run_induced_generator_demo(2, 1).fixed_matches

    @pytest.mark.parametrize("n", [2, 5, 8])
    def test_random_case_is_second_order(self, n):
        demo = run_induced_generator_demo(n, 1)
        assert demo.ladder.is_second_order()
        assert [h for h, _ in demo.estimates] == [1e-2, 1e-3, 1e-4]

    def test_zero_generator_is_exact(self):
        demo = run_induced_generator_demo(3, 7, zero_generator=True)
        assert demo.ladder.exact
        assert "order: exact" in demo.render()

    def test_render(self):
        text = demo_induced_generator(2, 1)
        assert text.startswith("fixed case: T = diag(1, 2), V = E_12")
        assert "matches -i E_12: yes" in text
        assert "second order: yes" in text

    def test_deterministic(self):
        assert demo_induced_generator(3, 5) == demo_induced_generator(3, 5)

    @pytest.mark.parametrize("n", [1, 9])
    def test_dimension_bounds(self, n):
        with pytest.raises(PreconditionViolated):
            run_induced_generator_demo(n, 1)
