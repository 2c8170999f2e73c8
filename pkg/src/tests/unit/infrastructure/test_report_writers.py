"""
File: test_report_writers.py
Description: Unit tests for report and probe trace writers
Author: RingDiag Team
Created: 2025-06-14
"""

import csv
import json

import pytest

from src.core.domain.entities import (
    HopEvent,
    ProbeOutcome,
    ProbeRecord,
    SearchDirection,
    TraceHop,
)
from src.core.domain.value_objects import Arc
from src.core.ports.services import ReportDocument
from src.infrastructure.reporting import (
    CsvReportWriter,
    JsonReportWriter,
    ProbeTraceWriter,
    ReportWriteException,
    TextReportWriter,
    get_report_writer,
    render_table,
)


@pytest.fixture
def document() -> ReportDocument:
    rows = [
        {"topology": "Abilene", "ratio": 1.0, "odd": [2, 5], "note": None},
        {"topology": "Geant2012", "ratio": 1.0666666, "odd": [], "note": "x"},
    ]
    return ReportDocument(
        title="Rule ratio",
        columns=["topology", "ratio", "odd"],
        rows=rows,
        payload={"records": rows, "summary": {"topologies": 2}},
        footer=["optimal_fraction=0.5"],
    )


@pytest.mark.unit
def test_json_writer_writes_payload(document, tmp_path):
    """Test the JSON report is the full payload with sorted keys."""
    path = tmp_path / "out" / "ratio.json"
    assert JsonReportWriter().write(document, path) == str(path)
    assert json.loads(path.read_text()) == document.payload
    assert path.read_text().index('"records"') < path.read_text().index('"summary"')


@pytest.mark.unit
def test_json_writer_defaults_to_stdout(document, capsys):
    """Test no destination means standard output."""
    assert JsonReportWriter().write(document, None) == "stdout"
    assert json.loads(capsys.readouterr().out)["summary"] == {"topologies": 2}


@pytest.mark.unit
def test_csv_writer_columns_and_footer(document, tmp_path):
    """Test CSV rows keep the declared columns and footer comments."""
    path = tmp_path / "ratio.csv"
    CsvReportWriter().write(document, path)
    lines = path.read_text().splitlines()
    assert lines[-1] == "# optimal_fraction=0.5"
    rows = list(csv.DictReader(lines[:-1]))
    assert rows[0] == {"topology": "Abilene", "ratio": "1", "odd": "2 5"}
    assert rows[1]["ratio"] == "1.06667"
    assert rows[1]["odd"] == ""


@pytest.mark.unit
def test_text_table_alignment(document):
    """Test the text table has a title, a rule and aligned columns."""
    lines = render_table(document).splitlines()
    assert lines[0] == "Rule ratio"
    assert lines[1] == "=" * len("Rule ratio")
    assert lines[2].split() == ["topology", "ratio", "odd"]
    assert set(lines[3].replace(" ", "")) == {"-"}
    assert lines[4].split() == ["Abilene", "1", "2", "5"]
    assert lines[2].index("ratio") == lines[4].index("1")
    assert lines[-1] == "optimal_fraction=0.5"


@pytest.mark.unit
def test_text_writer_to_file(document, tmp_path):
    """Test the text writer writes the rendered table."""
    path = tmp_path / "ratio.txt"
    TextReportWriter().write(document, path)
    assert path.read_text() == render_table(document)


@pytest.mark.unit
def test_pdf_writer(document, tmp_path):
    """Test the PDF report is a PDF file."""
    path = tmp_path / "ratio.pdf"
    get_report_writer("pdf").write(document, path)
    assert path.read_bytes().startswith(b"%PDF")


@pytest.mark.unit
def test_pdf_writer_needs_a_file(document):
    """Test PDF output cannot go to standard output."""
    with pytest.raises(ReportWriteException):
        get_report_writer("pdf").write(document, None)


@pytest.mark.unit
def test_unknown_format():
    """Test unknown formats are rejected."""
    with pytest.raises(ReportWriteException):
        get_report_writer("xlsx")


@pytest.mark.unit
def test_trace_writer_one_line_per_hop(tmp_path):
    """Test every hop of every probe becomes one JSON line."""
    arc = Arc(edge=0, tail=0, head=1)
    record = ProbeRecord(
        target=2,
        direction=SearchDirection.CLOCKWISE,
        returned=False,
        hops=1,
        path_length=4,
        batch=2,
        injected_at=1,
    )
    outcome = ProbeOutcome(
        returned=False,
        hops=1,
        trace=[
            TraceHop(0, "walk_cw:s0:0", HopEvent.FORWARD, arc),
            TraceHop(1, None, HopEvent.DROP),
        ],
    )
    path = tmp_path / "trace.jsonl"

    with ProbeTraceWriter(path) as writer:
        writer(record, outcome)
        writer(record, outcome)

    lines = [json.loads(line) for line in path.read_text().splitlines()]
    assert len(lines) == 4
    assert lines[0] == {
        "probe": 1,
        "hop": 0,
        "switch": 0,
        "rule_id": "walk_cw:s0:0",
        "event": "forward",
        "arc": {"edge_id": 0, "tail": 0, "head": 1},
        "target": 2,
        "direction": "cw",
    }
    assert lines[3]["probe"] == 2
    assert lines[3]["event"] == "drop"
    assert writer.probes == 2


@pytest.mark.unit
def test_trace_writer_outside_context(tmp_path):
    """Test the writer refuses probes when not open."""
    writer = ProbeTraceWriter(tmp_path / "trace.jsonl")
    with pytest.raises(ReportWriteException):
        writer(None, ProbeOutcome(returned=True, hops=0))
