"""Report rendering (json / aligned text) and emission."""

import json
import logging
from pathlib import Path
from typing import Optional

import click

from .models import CheckReport

logger = logging.getLogger(__name__)


class ReportWriteError(click.ClickException):
    """The report destination could not be written."""
    exit_code = 2


def render_json(report: CheckReport) -> str:
    """Strict JSON; non-finite numbers are encoded by ``CheckReport.to_dict``."""
    return json.dumps(report.to_dict(), indent=2, allow_nan=False) + "\n"


def render_text(report: CheckReport) -> str:
    """Aligned table of cases followed by a one-line summary."""
    header = ("case", "residual", "tolerance", "status")
    rows = [
        (case.name, f"{case.residual:.3e}", f"{case.tolerance:.1e}", "PASS" if case.passed else "FAIL")
        for case in report.cases
    ]
    widths = [max([len(header[i])] + [len(row[i]) for row in rows]) for i in range(len(header))]

    def line(cells) -> str:
        return "  ".join(cell.ljust(width) for cell, width in zip(cells, widths)).rstrip()

    lines = [f"suite: {report.suite}", line(header), line(["-" * w for w in widths])]
    lines.extend(line(row) for row in rows)
    lines.append(
        f"passed={report.passed} failed={report.failed} "
        f"max_residual={report.max_residual:.3e} seconds={report.seconds:.3f}"
    )
    return "\n".join(lines) + "\n"


def emit_report(report: CheckReport, output_format: str = "text", path: Optional[Path] = None) -> None:
    """Write the report to ``path`` or stdout.

    Raises:
        ReportWriteError: If the destination cannot be written.
    """
    content = render_json(report) if output_format == "json" else render_text(report)
    if path is None:
        click.echo(content, nl=False)
        return
    try:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content, encoding="utf-8")
    except OSError as e:
        raise ReportWriteError(f"Failed to write report to {path}: {e}") from e
    logger.info(f"Report written to {path}")
