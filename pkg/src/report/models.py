"""Data models for verification reports."""

import math
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np


def serialize_matrix(value) -> dict:
    """Witness encoding: dims plus row-major ``[re, im]`` pairs."""
    matrix = np.atleast_2d(np.asarray(value, dtype=np.complex128))
    return {
        "rows": int(matrix.shape[0]),
        "cols": int(matrix.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in matrix.reshape(-1)],
    }


def deserialize_matrix(data: dict) -> np.ndarray:
    """Inverse of ``serialize_matrix``."""
    values = [complex(re, im) for re, im in data["data"]]
    return np.array(values, dtype=np.complex128).reshape(data["rows"], data["cols"])


def non_finite_label(value: float) -> Optional[str]:
    """``"inf"``, ``"-inf"`` or ``"nan"`` for a non-finite float, else None."""
    if math.isfinite(value):
        return None
    if math.isnan(value):
        return "nan"
    return "inf" if value > 0 else "-inf"


def json_safe(value):
    """Replace non-finite floats nested in dicts and lists by their labels."""
    if isinstance(value, float):
        return non_finite_label(value) or value
    if isinstance(value, dict):
        return {key: json_safe(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(item) for item in value]
    return value


def _finite_field(data: dict, key: str, value: float) -> None:
    # non-finite numbers are written as null plus a "<key>_non_finite" label
    label = non_finite_label(value)
    data[key] = None if label else value
    if label:
        data[f"{key}_non_finite"] = label


def _read_finite_field(data: dict, key: str, default: float = 0.0) -> float:
    value = data.get(key, default)
    if value is None:
        return float(data.get(f"{key}_non_finite", "nan"))
    return float(value)


def scaled(residual: float, scale: float) -> float:
    """``residual / scale`` with a zero scale treated as 1."""
    return float(residual / scale) if scale > 0 else float(residual)


@dataclass
class CheckCase:
    """One measured residual against its tolerance."""
    name: str
    residual: float
    tolerance: float
    params: dict[str, Any] = field(default_factory=dict)
    witness: Optional[dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        # NaN residuals never pass
        return not math.isnan(self.residual) and self.residual <= self.tolerance

    def renamed(self, prefix: str) -> "CheckCase":
        return CheckCase(
            name=f"{prefix}/{self.name}" if prefix else self.name,
            residual=self.residual,
            tolerance=self.tolerance,
            params=dict(self.params),
            witness=self.witness,
        )

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        data = {"name": self.name, "params": json_safe(self.params)}
        _finite_field(data, "residual", self.residual)
        data["tolerance"] = self.tolerance
        data["pass"] = self.passed
        data["witness"] = json_safe(self.witness)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "CheckCase":
        """Create from dictionary."""
        return cls(
            name=data["name"],
            residual=_read_finite_field(data, "residual"),
            tolerance=float(data["tolerance"]),
            params=dict(data.get("params") or {}),
            witness=data.get("witness"),
        )


class CaseTracker:
    """Keeps the worst residual of a check together with its witness."""

    def __init__(self, name: str, tolerance: float, params: Optional[dict] = None):
        self.name = name
        self.tolerance = tolerance
        self.params = dict(params or {})
        self.residual = 0.0
        self._witness: Optional[dict] = None

    def observe(self, residual: float, **witness) -> None:
        """Record a residual; the strictly largest one keeps its witness."""
        residual = float(residual)
        if math.isnan(residual) or residual > self.residual:
            self.residual = residual
            self._witness = {key: _encode(value) for key, value in witness.items()}

    def case(self) -> CheckCase:
        passed = not math.isnan(self.residual) and self.residual <= self.tolerance
        return CheckCase(
            name=self.name,
            residual=self.residual,
            tolerance=self.tolerance,
            params=self.params,
            witness=None if passed else self._witness,
        )


def _encode(value):
    if isinstance(value, np.ndarray):
        return serialize_matrix(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


@dataclass
class CheckReport:
    """Outcome of one or more checks."""
    suite: str
    cases: list[CheckCase] = field(default_factory=list)
    config: dict[str, Any] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> int:
        return sum(1 for case in self.cases if case.passed)

    @property
    def failed(self) -> int:
        return len(self.cases) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    @property
    def max_residual(self) -> float:
        return max((case.residual for case in self.cases), default=0.0)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def case(self, name: str) -> CheckCase:
        """Look a case up by name.

        Raises:
            KeyError: If no case has that name.
        """
        for case in self.cases:
            if case.name == name:
                return case
        raise KeyError(name)

    def extend(self, other: "CheckReport", prefix: str = "") -> None:
        self.cases.extend(case.renamed(prefix) for case in other.cases)

    def sorted(self) -> "CheckReport":
        return CheckReport(
            suite=self.suite,
            cases=sorted(self.cases, key=lambda case: case.name),
            config=self.config,
            seconds=self.seconds,
        )

    def summary(self) -> dict:
        data = {"passed": self.passed, "failed": self.failed}
        _finite_field(data, "max_residual", self.max_residual)
        data["seconds"] = self.seconds
        return data

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "suite": self.suite,
            "config": json_safe(self.config),
            "cases": [case.to_dict() for case in self.cases],
            "summary": self.summary(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CheckReport":
        """Create from dictionary."""
        return cls(
            suite=data["suite"],
            cases=[CheckCase.from_dict(case) for case in data.get("cases", [])],
            config=dict(data.get("config") or {}),
            seconds=float(data.get("summary", {}).get("seconds", 0.0)),
        )
