"""Verification suites, the runner and the induced-generator demo."""

from .runner import SUITES, SuiteJob, collect_jobs, register, run_suite
from .demo import InducedGeneratorDemo, demo_induced_generator, run_induced_generator_demo

__all__ = [
    "InducedGeneratorDemo",
    "SUITES",
    "SuiteJob",
    "collect_jobs",
    "demo_induced_generator",
    "register",
    "run_induced_generator_demo",
    "run_suite",
]
