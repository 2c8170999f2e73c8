"""
File: report_writers.py
Description: JSON, CSV and plain-text report writers
Author: RingDiag Team
Created: 2025-06-09
"""

import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from src.core.domain.exceptions import InfrastructureException
from src.core.ports.services import ReportDocument, ReportWriterPort

logger = logging.getLogger(__name__)


class ReportWriteException(InfrastructureException):
    """Exception raised when a report cannot be written."""

    def __init__(self, message: str):
        super().__init__(message, component="report_writer")


def _emit(text: str, destination: Optional[Path]) -> str:
    if destination is None:
        sys.stdout.write(text)
        return "stdout"
    try:
        destination.parent.mkdir(parents=True, exist_ok=True)
        destination.write_text(text, encoding="utf-8")
    except OSError as e:
        raise ReportWriteException(f"Cannot write {destination}: {str(e)}")
    logger.info(f"Report saved to {destination}")
    return str(destination)


class JsonReportWriter(ReportWriterPort):
    """Full payload, sorted keys, two-space indent."""

    def write(self, document: ReportDocument, destination: Optional[Path]) -> str:
        text = json.dumps(document.payload, indent=2, sort_keys=True, default=str)
        return _emit(text + "\n", destination)


class CsvReportWriter(ReportWriterPort):
    """Table rows with a header line; footer lines become comments."""

    def write(self, document: ReportDocument, destination: Optional[Path]) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(
            buffer, fieldnames=document.columns, extrasaction="ignore", lineterminator="\n"
        )
        writer.writeheader()
        for row in document.rows:
            writer.writerow({k: _cell(v) for k, v in row.items()})
        for line in document.footer:
            buffer.write(f"# {line}\n")
        return _emit(buffer.getvalue(), destination)


class TextReportWriter(ReportWriterPort):
    """Aligned columns for reading in a terminal."""

    def write(self, document: ReportDocument, destination: Optional[Path]) -> str:
        return _emit(render_table(document), destination)


def render_table(document: ReportDocument) -> str:
    cells: List[List[str]] = [list(document.columns)]
    cells.extend([_cell(row.get(col, "")) for col in document.columns] for row in document.rows)
    widths = [max(len(row[i]) for row in cells) for i in range(len(document.columns))]
    lines = [document.title, "=" * len(document.title)]
    for number, row in enumerate(cells):
        lines.append("  ".join(value.ljust(widths[i]) for i, value in enumerate(row)).rstrip())
        if number == 0:
            lines.append("  ".join("-" * w for w in widths))
    lines.extend(document.footer)
    return "\n".join(lines) + "\n"


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, (list, tuple)):
        return " ".join(_cell(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True)
    return str(value)


def get_report_writer(output_format: str) -> ReportWriterPort:
    """Writer for json, csv, text or pdf."""
    writers: Dict[str, ReportWriterPort] = {
        "json": JsonReportWriter(),
        "csv": CsvReportWriter(),
        "text": TextReportWriter(),
    }
    if output_format == "pdf":
        from .pdf_report_writer import PdfReportWriter

        return PdfReportWriter()
    try:
        return writers[output_format]
    except KeyError:
        raise ReportWriteException(f"Unknown report format '{output_format}'")
