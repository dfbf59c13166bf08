"""Configuration management for cstar-flow."""

import math
import os
from dataclasses import dataclass, field, fields, replace, asdict
from enum import Enum
from pathlib import Path
from typing import Mapping, Optional

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


MAX_ALGEBRA_DIM = 64
MAX_MODULE_COLS = 8


def env_int(name: str, default: int) -> int:
    """Integer environment setting.

    Raises:
        ValueError: If the variable is set to something that is not an integer.
    """
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


class Suite(str, Enum):
    """Verification suites the runner knows about."""
    MODULE_AXIOMS = "module-axioms"
    MORPHISM = "morphism"
    UNITARY = "unitary"
    DERIVATION = "derivation"
    DYNAMICS = "dynamics"
    ALL = "all"

    @classmethod
    def expand(cls, names: list[str] | tuple[str, ...]) -> tuple["Suite", ...]:
        """Resolve suite names, replacing ``all`` by every concrete suite."""
        suites: list[Suite] = []
        for name in names:
            suite = cls(name)
            members = [s for s in cls if s is not cls.ALL] if suite is cls.ALL else [suite]
            for member in members:
                if member not in suites:
                    suites.append(member)
        return tuple(suites)


@dataclass(frozen=True)
class Tolerances:
    """Every numerical threshold used by the library, all relative.

    ``eig``, ``herm`` and ``rank`` steer the linear-algebra core; the rest
    are the pass thresholds of the individual checks.
    """
    eig: float = 1e-10
    herm: float = 1e-12
    rank: float = 1e-8
    star: float = 1e-10
    positivity: float = 1e-10
    module_axioms: float = 1e-10
    phi_morphism: float = 1e-10
    derived_linearity: float = 1e-10
    isometry: float = 1e-10
    leibniz: float = 1e-10
    recover: float = 1e-8
    group_law: float = 1e-10
    continuity: float = 1e-12
    theorem43_exact: float = 1e-10
    theorem43: float = 1e-6
    generator: float = 1e-6

    @classmethod
    def names(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def with_overrides(self, overrides: Mapping[str, float]) -> "Tolerances":
        """Return a copy with the named tolerances replaced.

        Raises:
            KeyError: If a name is not a known tolerance.
            ValueError: If a value is negative or not finite.
        """
        unknown = sorted(set(overrides) - set(self.names()))
        if unknown:
            raise KeyError(f"Unknown tolerance name(s): {', '.join(unknown)}")
        for name, value in overrides.items():
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"tolerance {name} must be a finite non-negative number, got {value}")
        return replace(self, **{name: float(value) for name, value in overrides.items()})

    def to_dict(self) -> dict[str, float]:
        return asdict(self)


DEFAULT_TOLERANCES = Tolerances()


@dataclass
class LoggingConfig:
    """Logging configuration."""
    level: str = field(default_factory=lambda: os.getenv("CSTAR_FLOW_LOG_LEVEL", "WARNING"))
    log_file: Optional[Path] = field(
        default_factory=lambda: Path(os.getenv("CSTAR_FLOW_LOG_FILE")) if os.getenv("CSTAR_FLOW_LOG_FILE") else None
    )


@dataclass
class SuiteConfig:
    """Everything a verification run depends on."""
    suites: tuple[Suite, ...] = (Suite.ALL,)
    algebra_dim: int = field(default_factory=lambda: env_int("CSTAR_FLOW_DIM", 3))
    module_cols: int = field(default_factory=lambda: env_int("CSTAR_FLOW_COLS", 2))
    trials: int = field(default_factory=lambda: env_int("CSTAR_FLOW_TRIALS", 200))
    master_seed: int = field(default_factory=lambda: env_int("CSTAR_FLOW_SEED", 42))
    tolerances: Tolerances = field(default_factory=Tolerances)
    output_format: str = "text"
    output_path: Optional[Path] = None
    workers: int = field(default_factory=lambda: env_int("CSTAR_FLOW_WORKERS", 1))

    def validate(self) -> list[str]:
        """Validate configuration and return list of errors."""
        errors = []

        if not 1 <= self.algebra_dim <= MAX_ALGEBRA_DIM:
            errors.append(f"dim must be in [1, {MAX_ALGEBRA_DIM}], got {self.algebra_dim}")
        if not 1 <= self.module_cols <= MAX_MODULE_COLS:
            errors.append(f"cols must be in [1, {MAX_MODULE_COLS}], got {self.module_cols}")
        if self.trials < 1:
            errors.append(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.master_seed < 2**64:
            errors.append(f"seed must be a 64-bit unsigned integer, got {self.master_seed}")
        if self.output_format not in ("text", "json"):
            errors.append(f"format must be 'text' or 'json', got {self.output_format!r}")
        if self.workers < 1:
            errors.append(f"workers must be >= 1, got {self.workers}")
        if not self.suites:
            errors.append("at least one suite is required")

        return errors

    @property
    def suite_label(self) -> str:
        return "+".join(suite.value for suite in self.suites)

    def to_dict(self) -> dict:
        """Convert to the ``config`` block of a json report."""
        return {
            "suites": [suite.value for suite in self.suites],
            "algebra_dim": self.algebra_dim,
            "module_cols": self.module_cols,
            "trials": self.trials,
            "master_seed": self.master_seed,
            "tolerances": self.tolerances.to_dict(),
            "output_format": self.output_format,
        }


# Global logging config instance
logging_config = LoggingConfig()
