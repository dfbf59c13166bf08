"""Command-line interface: ``verify`` and ``demo``."""

import logging
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

import click
from dotenv import dotenv_values

from src import __version__
from src.config import MAX_ALGEBRA_DIM, MAX_MODULE_COLS, Suite, SuiteConfig
from src.report import emit_report
from src.suites import demo_induced_generator, run_suite
from src.suites.demo import DEMO_MAX_DIM, DEMO_MIN_DIM

logger = logging.getLogger(__name__)

SUITE_NAMES = [suite.value for suite in Suite]

# Keys accepted in a --config file, besides tol_<name>.
CONFIG_FILE_KEYS = {"suites", "dim", "cols", "trials", "seed", "format", "out", "workers"}


def _parse_tolerance(ctx, param, values: Sequence[str]) -> dict[str, float]:
    overrides = {}
    for item in values:
        name, sep, raw = item.partition("=")
        if not sep or not name:
            raise click.BadParameter(f"expected name=value, got {item!r}", ctx=ctx, param=param)
        try:
            overrides[name.strip()] = float(raw)
        except ValueError:
            raise click.BadParameter(f"{raw!r} is not a number", ctx=ctx, param=param)
    return overrides


def read_config_file(path: Path) -> dict[str, str]:
    """Flat ``key=value`` file.

    Raises:
        click.BadParameter: On unknown keys.
    """
    values = {key: value for key, value in dotenv_values(path).items() if value is not None}
    unknown = sorted(key for key in values if key not in CONFIG_FILE_KEYS and not key.startswith("tol_"))
    if unknown:
        raise click.BadParameter(f"unknown key(s) {', '.join(unknown)} in {path}", param_hint="--config")
    return values


def _from_file(values: dict[str, str], key: str, convert: Callable[[str], Any]) -> Any:
    try:
        return convert(values[key])
    except ValueError:
        raise click.BadParameter(f"invalid value {values[key]!r} for {key!r}", param_hint="--config")


def build_config(
    suite: Optional[str] = None,
    dim: Optional[int] = None,
    cols: Optional[int] = None,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    tol: Optional[dict[str, float]] = None,
    output_format: Optional[str] = None,
    out: Optional[Path] = None,
    config_file: Optional[Path] = None,
    workers: Optional[int] = None,
) -> SuiteConfig:
    """Merge flags, config file, environment and defaults (in that order of precedence).

    Raises:
        click.BadParameter: For an unknown tolerance name or bad file value.
        click.UsageError: If an environment value or the merged configuration is invalid.
    """
    file_values = read_config_file(config_file) if config_file else {}
    try:
        config = SuiteConfig()
    except ValueError as e:
        raise click.UsageError(str(e))

    def pick(flag, key: str, convert: Callable[[str], Any], current):
        if flag is not None:
            return flag
        if key in file_values:
            return _from_file(file_values, key, convert)
        return current

    def suites_from(raw: str) -> tuple[Suite, ...]:
        return tuple(Suite(name.strip()) for name in raw.split(",") if name.strip())

    config.suites = (Suite(suite),) if suite is not None else pick(None, "suites", suites_from, config.suites)
    config.algebra_dim = pick(dim, "dim", int, config.algebra_dim)
    config.module_cols = pick(cols, "cols", int, config.module_cols)
    config.trials = pick(trials, "trials", int, config.trials)
    config.master_seed = pick(seed, "seed", int, config.master_seed)
    config.output_format = pick(output_format, "format", str, config.output_format)
    config.output_path = pick(out, "out", Path, config.output_path)
    config.workers = pick(workers, "workers", int, config.workers)

    overrides = {key[len("tol_"):]: _from_file(file_values, key, float) for key in file_values if key.startswith("tol_")}
    overrides.update(tol or {})
    try:
        config.tolerances = config.tolerances.with_overrides(overrides)
    except KeyError as e:
        raise click.BadParameter(f"{e.args[0]}; known: {', '.join(config.tolerances.names())}", param_hint="--tol")
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--tol")

    errors = config.validate()
    if errors:
        raise click.UsageError("; ".join(errors))
    return config


@click.group()
@click.version_option(__version__, prog_name="cstar-flow")
@click.option("--verbose", "-v", is_flag=True, help="Log progress to stderr.")
def cli(verbose: bool):
    """Numerical verification of Hilbert C*-module identities."""
    if verbose:
        logging.getLogger().setLevel(logging.INFO)


@cli.command("verify")
@click.argument("suite", required=False, type=click.Choice(SUITE_NAMES))
@click.option("--dim", type=click.IntRange(1, MAX_ALGEBRA_DIM), help="Algebra size n (A = M_n).")
@click.option("--cols", type=click.IntRange(1, MAX_MODULE_COLS), help="Module columns k (M = M_{n x k}).")
@click.option("--trials", type=click.IntRange(min=1), help="Random samples per check.")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), help="Master seed (default: CSTAR_FLOW_SEED or 42).")
@click.option("--tol", multiple=True, callback=_parse_tolerance, metavar="NAME=VALUE", help="Override a tolerance.")
@click.option("--format", "output_format", type=click.Choice(["text", "json"]), help="Report format.")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write the report to a file.")
@click.option(
    "--config",
    "config_file",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="key=value file; flags take precedence.",
)
@click.option("--workers", type=click.IntRange(min=1), help="Jobs run concurrently.")
@click.pass_context
def verify_command(ctx, **params):
    """Run verification SUITE (default: all) and emit a report.

    Exit status is 0 when every case passes, 1 when any fails and 2 on
    usage or output errors.
    """
    config = build_config(**params)
    report = run_suite(config)
    emit_report(report, config.output_format, config.output_path)
    ctx.exit(report.exit_code)


def parse_config(argv: Sequence[str]) -> SuiteConfig:
    """Parse ``verify`` arguments into a ``SuiteConfig`` without running anything.

    A leading ``verify`` token is accepted.

    Raises:
        click.UsageError: For any invalid flag or value (exit status 2).
    """
    args = list(argv)
    if args and args[0] == "verify":
        args = args[1:]
    ctx = verify_command.make_context("verify", args)
    return build_config(**ctx.params)


@cli.group("demo")
def demo_group():
    """Worked examples."""


@demo_group.command("example44")
@click.option("--dim", type=click.IntRange(DEMO_MIN_DIM, DEMO_MAX_DIM), default=DEMO_MIN_DIM, show_default=True)
@click.option("--seed", type=int, envvar="CSTAR_FLOW_SEED", default=42, show_default=True)
@click.option("--zero-generator", is_flag=True, help="Use T = 0.")
def example44_command(dim: int, seed: int, zero_generator: bool):
    """Generator of Ad(e^{itT}) against i[T, V] by central differences."""
    click.echo(demo_induced_generator(dim, seed, zero_generator), nl=False)
