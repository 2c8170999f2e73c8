"""
File: pdf_report_writer.py
Description: PDF report writer built on reportlab tables
Author: RingDiag Team
Created: 2025-06-09
"""

import logging
from pathlib import Path
from typing import Any, List, Optional

from reportlab.lib import colors
from reportlab.lib.enums import TA_CENTER
from reportlab.lib.pagesizes import A4, landscape
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
from reportlab.platypus import (
    Flowable,
    Paragraph,
    SimpleDocTemplate,
    Spacer,
    Table,
    TableStyle,
)

from src.core.ports.services import ReportDocument, ReportWriterPort

from .report_writers import ReportWriteException, _cell

logger = logging.getLogger(__name__)

MAX_ROWS = 500


class PdfReportWriter(ReportWriterPort):
    """Title, the report table and footer notes on landscape A4."""

    def write(self, document: ReportDocument, destination: Optional[Path]) -> str:
        if destination is None:
            raise ReportWriteException("PDF reports need an output file (--out)")
        try:
            destination.parent.mkdir(parents=True, exist_ok=True)
            doc = SimpleDocTemplate(
                str(destination), pagesize=landscape(A4), title=document.title
            )
            doc.build(self._story(document))
        except ReportWriteException:
            raise
        except Exception as e:
            raise ReportWriteException(f"Error generating PDF report: {str(e)}")
        logger.info(f"PDF report generated: {destination}")
        return str(destination)

    def _story(self, document: ReportDocument) -> List[Flowable]:
        styles = getSampleStyleSheet()
        title_style = ParagraphStyle(
            "ReportTitle",
            parent=styles["Title"],
            fontSize=20,
            spaceAfter=20,
            alignment=TA_CENTER,
        )
        cell_style = ParagraphStyle(
            "ReportCell", parent=styles["Normal"], fontSize=7, leading=9
        )

        story: List[Flowable] = [Paragraph(document.title, title_style)]
        rows = document.rows[:MAX_ROWS]
        if len(document.rows) > MAX_ROWS:
            story.append(
                Paragraph(
                    f"Showing first {MAX_ROWS} of {len(document.rows)} rows",
                    styles["Normal"],
                )
            )
            story.append(Spacer(1, 10))

        data: List[List[Any]] = [list(document.columns)]
        for row in rows:
            data.append([self._wrap(_cell(row.get(col)), cell_style) for col in document.columns])

        table = Table(data, repeatRows=1)
        table.setStyle(
            TableStyle(
                [
                    ("BACKGROUND", (0, 0), (-1, 0), colors.grey),
                    ("TEXTCOLOR", (0, 0), (-1, 0), colors.whitesmoke),
                    ("ALIGN", (0, 0), (-1, -1), "LEFT"),
                    ("FONTNAME", (0, 0), (-1, 0), "Helvetica-Bold"),
                    ("FONTSIZE", (0, 0), (-1, 0), 9),
                    ("FONTSIZE", (0, 1), (-1, -1), 7),
                    ("BOTTOMPADDING", (0, 0), (-1, 0), 8),
                    ("BACKGROUND", (0, 1), (-1, -1), colors.beige),
                    ("GRID", (0, 0), (-1, -1), 0.5, colors.black),
                    ("VALIGN", (0, 0), (-1, -1), "TOP"),
                ]
            )
        )
        story.append(table)

        if document.footer:
            story.append(Spacer(1, 16))
            for line in document.footer:
                story.append(Paragraph(line, styles["Normal"]))
        return story

    @staticmethod
    def _wrap(text: str, style: ParagraphStyle) -> Any:
        # long match/action cells need wrapping
        return Paragraph(text, style) if len(text) > 30 else text
