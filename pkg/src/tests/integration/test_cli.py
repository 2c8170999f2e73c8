"""
File: test_cli.py
Description: Integration tests driving the command-line harness end to end
Author: RingDiag Team
Created: 2025-06-17
"""

import csv
import json

import pytest

from src.interfaces.cli import (
    EXIT_ERROR,
    EXIT_OK,
    EXIT_SKIPPED_WITH_ERROR,
    build_config,
    main,
    parse_arguments,
)
from src.tests.conftest import EXAMPLE_RING, MESH7_EDGE_LIST, TABLE_RING


@pytest.fixture
def corpus_dir(tmp_path):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    (corpus / "mesh7.edges").write_text(MESH7_EDGE_LIST)
    (corpus / "square.edges").write_text("a b\nb c\nc d\nd a\n")
    return corpus


@pytest.fixture
def broken_corpus_dir(corpus_dir):
    (corpus_dir / "broken.graphml").write_text("<graphml><graph>")
    return corpus_dir


@pytest.mark.integration
class TestArguments:
    """Test command-line parsing into a run configuration."""

    def test_bounds_arguments(self):
        """Test bounds options reach the configuration."""
        args = parse_arguments(
            ["bounds", "--L", "1024", "--m", "1", "4", "--format", "text"]
        )
        config = build_config(args)
        assert args.length == 1024
        assert config.m == [1, 4]
        assert config.output_format.value == "text"

    def test_diagnose_arguments(self):
        """Test ring options and failure lists."""
        args = parse_arguments(
            ["diagnose", "mesh7.edges", "--fail", "s4-s7", "3", "--walk", "s1", "s2"]
        )
        assert args.fail == ["s4-s7", "3"]
        assert args.walk == ["s1", "s2"]
        assert build_config(args).m == [1]


@pytest.mark.integration
class TestCommands:
    """Test each subcommand against files on disk."""

    @pytest.mark.asyncio
    async def test_bounds_json(self, tmp_path, capsys):
        """Test the reference bounds table as JSON."""
        out = tmp_path / "bounds.json"

        status = await main(["bounds", "--tau-us", "1", "--out", str(out)])

        assert status == EXIT_OK
        payload = json.loads(out.read_text())
        messages = [row["M"] for row in payload["rows"]]
        assert messages == [17, 23, 25, 29, 121, 511, 65536]
        assert payload["sandwich_us"]["upper"] == 2031618
        assert "JSON report saved successfully" in capsys.readouterr().out

    @pytest.mark.asyncio
    async def test_bounds_text_to_stdout(self, capsys):
        """Test the text table goes to standard output."""
        status = await main(["bounds", "--L", "64", "--m", "1", "--format", "text"])
        assert status == EXIT_OK
        output = capsys.readouterr().out
        assert "Diagnosis bounds for L = 64" in output
        assert "Bisection hop envelope 190 us to 706 us" in output

    @pytest.mark.asyncio
    async def test_diagnose_with_given_ring(self, tmp_path):
        """Test the worked example end to end, including probe traces."""
        topology = tmp_path / "mesh7.edges"
        topology.write_text(MESH7_EDGE_LIST)
        out = tmp_path / "diagnosis.json"
        trace = tmp_path / "trace.jsonl"

        status = await main(
            [
                "diagnose",
                str(topology),
                "--fail",
                "s4-s7",
                "--domain",
                "s1",
                "--walk",
                *EXAMPLE_RING,
                "--inject",
                "11",
                "--tau-us",
                "1",
                "--trace",
                str(trace),
                "--out",
                str(out),
            ]
        )

        assert status == EXIT_OK
        payload = json.loads(out.read_text())
        assert payload["located_links"] == ["s4-s7"]
        assert payload["messages"] == 4
        assert payload["total_hops"] == 49
        assert payload["latency_us"] == 49.0
        hops = [json.loads(line) for line in trace.read_text().splitlines()]
        assert {hop["probe"] for hop in hops} == {1, 2, 3, 4}
        assert {hop["target"] for hop in hops} == {None, 5, 6, 8}

    @pytest.mark.asyncio
    async def test_rules_pdf(self, tmp_path, capsys):
        """Test rule tables rendered as a PDF file."""
        topology = tmp_path / "mesh7.edges"
        topology.write_text(MESH7_EDGE_LIST)
        out = tmp_path / "rules.pdf"

        status = await main(
            ["rules", str(topology), "--format", "pdf", "--out", str(out)]
        )

        assert status == EXIT_OK
        assert out.read_bytes().startswith(b"%PDF")
        assert "PDF report saved successfully" in capsys.readouterr().out

    @pytest.mark.asyncio
    async def test_rules_csv_single_bounce(self, tmp_path):
        """Test the clockwise-only rule table of the eleven-hop ring."""
        topology = tmp_path / "mesh7.edges"
        topology.write_text(MESH7_EDGE_LIST)
        out = tmp_path / "rules.csv"

        status = await main(
            [
                "rules",
                str(topology),
                "--walk",
                *TABLE_RING,
                "--single-bounce",
                "--format",
                "csv",
                "--out",
                str(out),
            ]
        )

        assert status == EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[-1] == "# L = 11, kappa = 2, 29 static rules"
        rows = list(csv.DictReader(lines[:-1]))
        assert len(rows) == 29
        assert rows[0]["switch"] == "s1"

    @pytest.mark.asyncio
    async def test_topology_summary(self, tmp_path):
        """Test the summary of one topology file."""
        topology = tmp_path / "mesh7.edges"
        topology.write_text(MESH7_EDGE_LIST)
        out = tmp_path / "summary.json"

        assert await main(["topology", str(topology), "--out", str(out)]) == EXIT_OK
        summary = json.loads(out.read_text())
        assert summary["lower_bound"] == 9
        assert summary["eulerian"] is False

    @pytest.mark.asyncio
    async def test_ratio_corpus(self, corpus_dir, tmp_path):
        """Test the ratio study over a small corpus."""
        out = tmp_path / "ratio.json"

        status = await main(["ratio", "--corpus", str(corpus_dir), "--out", str(out)])

        assert status == EXIT_OK
        payload = json.loads(out.read_text())
        assert [r["topology"] for r in payload["records"]] == ["mesh7", "square"]
        assert payload["summary"]["optimal_fraction"] == 1.0

    @pytest.mark.asyncio
    async def test_multifail_corpus(self, corpus_dir, tmp_path):
        """Test single failures are located exactly over the corpus."""
        out = tmp_path / "multifail.csv"

        status = await main(
            [
                "multifail",
                "--corpus",
                str(corpus_dir),
                "--k",
                "1",
                "--format",
                "csv",
                "--out",
                str(out),
            ]
        )

        assert status == EXIT_OK
        rows = list(csv.DictReader(out.read_text().splitlines()))
        assert {row["topology"]: row["average"] for row in rows} == {
            "mesh7": "1",
            "square": "1",
        }


@pytest.mark.integration
class TestExitStatus:
    """Test failure exit statuses."""

    @pytest.mark.asyncio
    async def test_missing_topology_file(self, tmp_path, capsys):
        """Test an unreadable topology is an error."""
        status = await main(["topology", str(tmp_path / "missing.edges")])
        assert status == EXIT_ERROR
        assert "Error:" in capsys.readouterr().err

    @pytest.mark.asyncio
    async def test_strict_mode_flags_broken_files(self, broken_corpus_dir, tmp_path):
        """Test broken files change the exit status only with --strict."""
        out = tmp_path / "ratio.json"
        args = ["ratio", "--corpus", str(broken_corpus_dir), "--out", str(out)]

        assert await main(args) == EXIT_OK
        payload = json.loads(out.read_text())
        assert payload["skipped"][0]["topology"] == "broken.graphml"
        assert payload["skipped"][0]["error"] is True

        assert await main(args + ["--strict"]) == EXIT_SKIPPED_WITH_ERROR

    @pytest.mark.asyncio
    async def test_invalid_configuration(self):
        """Test invalid parallelism is rejected before running."""
        assert await main(["bounds", "--m", "0"]) == EXIT_ERROR

    @pytest.mark.asyncio
    async def test_pdf_needs_output_file(self):
        """Test PDF reports cannot go to standard output."""
        assert await main(["bounds", "--format", "pdf"]) == EXIT_ERROR

    @pytest.mark.asyncio
    async def test_version(self, capsys):
        """Test --version prints the program version and exits cleanly."""
        with pytest.raises(SystemExit) as exc_info:
            await main(["--version"])
        assert exc_info.value.code == 0
        assert capsys.readouterr().out.strip() == "ringdiag 0.1.0"
