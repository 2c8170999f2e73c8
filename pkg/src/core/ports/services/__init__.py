"""
File: __init__.py
Description: Service ports module initialization
Author: RingDiag Team
Created: 2025-06-08
"""

from .report_writer import ReportDocument, ReportWriterPort

__all__ = [
    "ReportDocument",
    "ReportWriterPort",
]
