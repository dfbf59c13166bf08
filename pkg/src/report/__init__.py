"""Verification report model and emission."""

from .models import CaseTracker, CheckCase, CheckReport, deserialize_matrix, scaled, serialize_matrix
from .emit import ReportWriteError, emit_report, render_json, render_text

__all__ = [
    "CaseTracker",
    "CheckCase",
    "CheckReport",
    "ReportWriteError",
    "deserialize_matrix",
    "emit_report",
    "render_json",
    "render_text",
    "scaled",
    "serialize_matrix",
]
