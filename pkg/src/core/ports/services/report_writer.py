"""
File: report_writer.py
Description: Port interface for report writers
Author: RingDiag Team
Created: 2025-06-08
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional


@dataclass
class ReportDocument:
    """Tabular view plus the full JSON body of a report."""

    title: str
    columns: List[str]
    rows: List[Dict[str, Any]]
    payload: Dict[str, Any]
    footer: List[str] = field(default_factory=list)


class ReportWriterPort(ABC):
    """Port interface for emitting reports."""

    @abstractmethod
    def write(self, document: ReportDocument, destination: Optional[Path]) -> str:
        """
        Emit a report.

        Args:
            document: Report to write
            destination: Output file, None for standard output

        Returns:
            Description of where the report went
        """
        pass
