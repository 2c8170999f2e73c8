"""
File: __init__.py
Description: Report writers
Author: RingDiag Team
Created: 2025-06-09
"""

from .report_writers import (
    CsvReportWriter,
    JsonReportWriter,
    ReportWriteException,
    TextReportWriter,
    get_report_writer,
    render_table,
)
from .trace_writer import ProbeTraceWriter

__all__ = [
    "CsvReportWriter",
    "JsonReportWriter",
    "ProbeTraceWriter",
    "TextReportWriter",
    "ReportWriteException",
    "get_report_writer",
    "render_table",
]
