#!/usr/bin/env python3
"""
File: cli.py
Description: Command-line harness for ring synthesis, rule compilation,
diagnosis runs and corpus studies
Author: RingDiag Team
Created: 2025-06-10
"""

import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.config.experiment import ExperimentConfig, ExperimentMode
from src.config.settings import settings
from src.core.application.use_cases import (
    CompileRulesRequest,
    CompileRulesUseCase,
    DescribeTopologyRequest,
    DescribeTopologyUseCase,
    RunBoundsRequest,
    RunBoundsUseCase,
    RunDiagnoseRequest,
    RunDiagnoseUseCase,
    RunMultifailRequest,
    RunMultifailUseCase,
    RunRatioRequest,
    RunRatioUseCase,
)
from src.core.domain.entities import SkippedTopology, Strategy
from src.core.domain.exceptions import DomainException
from src.core.ports.services import ReportDocument
from src.infrastructure.reporting import ProbeTraceWriter, get_report_writer
from src.infrastructure.topology_sources import FileSystemTopologyRepository

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_SKIPPED_WITH_ERROR = 2

RATIO_COLUMNS = [
    "topology",
    "switches",
    "edges",
    "bridges",
    "L_opt",
    "kappa",
    "rule_cost",
    "lower_bound",
    "ratio",
]
MULTIFAIL_COLUMNS = [
    "topology",
    "edges",
    "k",
    "patterns",
    "domains",
    "trials",
    "average",
    "min_located",
    "max_located",
    "max_beta",
    "sampled",
]
BOUNDS_COLUMNS = [
    "m",
    "M",
    "iterations",
    "T_UB_s",
    "latency_upper_us",
    "latency_lower_us",
    "static_rules",
]
PROBE_COLUMNS = [
    "batch",
    "injected_at",
    "direction",
    "target",
    "returned",
    "hops",
    "path_length",
]
RULE_COLUMNS = ["switch", "priority", "kind", "rule_id", "match", "actions"]


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command line arguments."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="Output file (default: stdout)")
    common.add_argument(
        "--format",
        choices=["json", "csv", "pdf", "text"],
        default="json",
        help="Report format (default: json)",
    )
    common.add_argument(
        "--tau-us",
        type=float,
        default=settings.tau_us,
        help=f"Per-hop switching delay in microseconds (default: {settings.tau_us})",
    )
    common.add_argument("--seed", type=int, default=0, help="Seed for any sampling")
    common.add_argument(
        "--workers",
        type=int,
        default=settings.workers,
        help="Worker processes for corpus runs",
    )
    common.add_argument(
        "--exact-matching",
        action="store_true",
        default=None,
        help="Always pair odd switches with exact minimum-weight matching",
    )
    common.add_argument(
        "--strict",
        action="store_true",
        help="Exit with status 2 when a topology was skipped because of an error",
    )
    common.add_argument("--verbose", action="store_true", help="Debug logging")

    corpus = argparse.ArgumentParser(add_help=False)
    corpus.add_argument(
        "--corpus",
        default=settings.corpus_dir,
        help=f"Topology corpus directory (default: {settings.corpus_dir})",
    )

    ring = argparse.ArgumentParser(add_help=False)
    ring.add_argument("topology", help="GraphML or edge-list topology file")
    ring.add_argument(
        "--asymmetric",
        action="store_true",
        help="Links may fail in one direction; use the directed Euler ring",
    )
    ring.add_argument(
        "--walk", nargs="+", metavar="SWITCH", help="Use this ring instead of synthesizing one"
    )

    parser = argparse.ArgumentParser(
        prog="ringdiag",
        description=f"{settings.app_name} - {settings.app_description}",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Rule cost ratio over a Topology Zoo directory
  ringdiag ratio --corpus zoo/ --format csv --out ratio.csv

  # Four-failure study on small topologies, four worker processes
  ringdiag multifail --corpus zoo/ --k 4 --max-edges 20 --workers 4

  # Message and latency bounds table for L = 65536
  ringdiag bounds --L 65536 --format text

  # Locate a failed link from controller switch s1
  ringdiag diagnose mesh7.edges --fail s4-s7 --domain s1 --trace probes.jsonl

  # Rule tables of a ring as PDF
  ringdiag rules mesh7.edges --format pdf --out rules.pdf
        """,
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {settings.app_version}"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    subparsers.add_parser(
        "ratio",
        parents=[common, corpus],
        help="Static rule cost against the |E| + |B| lower bound",
    )

    multifail = subparsers.add_parser(
        "multifail",
        parents=[common, corpus],
        help="Average located links over all k-failure patterns",
    )
    multifail.add_argument("--k", type=int, default=settings.failures_k)
    multifail.add_argument("--max-edges", type=int, default=settings.max_edges)
    multifail.add_argument(
        "--cap",
        type=int,
        default=settings.multifail_cap,
        help="Largest number of patterns enumerated exhaustively",
    )
    multifail.add_argument(
        "--sample",
        type=int,
        default=0,
        help="Patterns sampled with --seed when the count exceeds --cap",
    )

    bounds = subparsers.add_parser(
        "bounds", parents=[common], help="Message and latency bounds table"
    )
    bounds.add_argument("--L", dest="length", type=int, default=65536)
    bounds.add_argument("--kappa", type=int, default=0)
    bounds.add_argument(
        "--m", nargs="+", type=int, help="Parallelism degrees (default: reference table)"
    )
    bounds.add_argument("--bidirectional", action="store_true")

    diagnose = subparsers.add_parser(
        "diagnose", parents=[common, ring], help="Run a probe campaign on one topology"
    )
    diagnose.add_argument(
        "--fail", nargs="*", default=[], help="Failed links: edge id, a-b or a>b"
    )
    diagnose.add_argument("--domain", nargs="+", default=[], help="Controller switches")
    diagnose.add_argument("--controller", default=settings.default_controller)
    diagnose.add_argument(
        "--strategy",
        choices=[s.value for s in Strategy],
        default=Strategy.SEQUENTIAL.value,
    )
    diagnose.add_argument("--m", type=int, default=1, help="Probes per round")
    diagnose.add_argument("--inject", type=int, help="Ring position to inject at")
    diagnose.add_argument("--trace", help="Write per-hop probe traces (JSON lines)")

    rules = subparsers.add_parser(
        "rules", parents=[common, ring], help="Dump the compiled rule tables"
    )
    rules.add_argument(
        "--single-bounce",
        action="store_true",
        help="Only the clockwise-to-counter-clockwise bounce set (3L - 2k rules)",
    )
    rules.add_argument("--tag-budget", type=int, default=settings.tag_budget)

    topology = subparsers.add_parser(
        "topology", parents=[common], help="Summary of one topology file"
    )
    topology.add_argument("topology", help="GraphML or edge-list topology file")

    return parser.parse_args(argv)


def build_config(args: argparse.Namespace) -> ExperimentConfig:
    """Validated experiment configuration of a parsed command line."""
    m = getattr(args, "m", None)
    return ExperimentConfig.build(
        mode=ExperimentMode(args.command),
        corpus_dir=getattr(args, "corpus", settings.corpus_dir),
        failures_k=getattr(args, "k", settings.failures_k),
        max_edges=getattr(args, "max_edges", settings.max_edges),
        seed=args.seed,
        tau_us=args.tau_us,
        m=m if isinstance(m, list) else [m or 1],
        output=args.out,
        output_format=args.format,
        exact_matching=bool(args.exact_matching),
        asymmetric=getattr(args, "asymmetric", False),
        multifail_cap=getattr(args, "cap", settings.multifail_cap),
        sample_patterns=getattr(args, "sample", 0),
        workers=args.workers,
        strict=args.strict,
    )


def _repository_for(path: str) -> Tuple[FileSystemTopologyRepository, str]:
    file = Path(path)
    return FileSystemTopologyRepository(file.parent), file.name


def _skip_footer(skipped: List[SkippedTopology]) -> List[str]:
    return [
        f"Skipped {s.topology}: {s.reason}" + (" (error)" if s.error else "")
        for s in skipped
    ]


async def run_ratio(config: ExperimentConfig) -> Tuple[ReportDocument, bool]:
    use_case = RunRatioUseCase(FileSystemTopologyRepository(config.corpus_dir))
    response = await use_case.execute(
        RunRatioRequest(exact_matching=config.exact_matching or None, workers=config.workers)
    )
    summary = response.summary()
    document = ReportDocument(
        title="Rule cost ratio",
        columns=RATIO_COLUMNS,
        rows=[record.to_dict() for record in response.records],
        payload={
            "summary": summary,
            "records": [record.to_dict() for record in response.records],
            "skipped": [s.to_dict() for s in response.skipped],
        },
        footer=[
            f"{summary['topologies']} topologies, "
            f"{summary['optimal_fraction']:.1%} at ratio 1, "
            f"max ratio {summary['max_ratio']:.3f}"
        ]
        + _skip_footer(response.skipped),
    )
    return document, any(s.error for s in response.skipped)


async def run_multifail(
    config: ExperimentConfig, controller: str = settings.default_controller
) -> Tuple[ReportDocument, bool]:
    use_case = RunMultifailUseCase(FileSystemTopologyRepository(config.corpus_dir))
    response = await use_case.execute(
        RunMultifailRequest(
            failures_k=config.failures_k,
            max_edges=config.max_edges,
            cap=config.multifail_cap,
            sample_patterns=config.sample_patterns,
            seed=config.seed,
            controller=controller,
            workers=config.workers,
        )
    )
    rows = [record.to_dict() for record in response.records]
    document = ReportDocument(
        title=f"Located links over all {config.failures_k}-failure patterns",
        columns=MULTIFAIL_COLUMNS,
        rows=rows,
        payload={
            "k": config.failures_k,
            "records": rows,
            "skipped": [s.to_dict() for s in response.skipped],
        },
        footer=_skip_footer(response.skipped),
    )
    return document, any(s.error for s in response.skipped)


async def run_bounds(
    config: ExperimentConfig, args: argparse.Namespace
) -> Tuple[ReportDocument, bool]:
    response = await RunBoundsUseCase().execute(
        RunBoundsRequest(
            length=args.length,
            kappa=args.kappa,
            m=args.m,
            tau_us=config.tau_us,
            bidirectional=args.bidirectional,
        )
    )
    sandwich = response.sandwich_us
    document = ReportDocument(
        title=f"Diagnosis bounds for L = {response.length}, tau = {response.tau_us} us",
        columns=BOUNDS_COLUMNS,
        rows=[row.to_dict() for row in response.rows],
        payload=response.to_dict(),
        footer=[
            f"Sequential latency between {sandwich['lower']:.0f} us and "
            f"{sandwich['upper']:.0f} us",
            f"Bisection hop envelope {sandwich['envelope_lower']:.0f} us to "
            f"{sandwich['envelope_upper']:.0f} us",
        ],
    )
    return document, False


async def run_diagnose(
    config: ExperimentConfig, args: argparse.Namespace
) -> Tuple[ReportDocument, bool]:
    repository, name = _repository_for(args.topology)
    request = RunDiagnoseRequest(
        topology=name,
        failures=args.fail,
        domain=args.domain,
        controller=args.controller,
        strategy=Strategy(args.strategy),
        m=args.m,
        inject=args.inject,
        walk=args.walk,
        asymmetric=config.asymmetric,
        tau_us=config.tau_us,
        exact_matching=config.exact_matching or None,
    )
    use_case = RunDiagnoseUseCase(repository)
    if args.trace:
        with ProbeTraceWriter(args.trace) as trace:
            request.observer = trace
            response = await use_case.execute(request)
    else:
        response = await use_case.execute(request)

    payload = response.to_dict()
    report = response.report
    document = ReportDocument(
        title=f"Diagnosis of {payload['topology']} ({payload['strategy']})",
        columns=PROBE_COLUMNS,
        rows=[probe.to_dict() for probe in report.probes],
        payload=payload,
        footer=[
            f"Verdict: {report.verdict.value}",
            f"Located: {', '.join(payload['located_links']) or 'none'}",
            f"Messages: {report.messages}, total hops: {report.total_hops}, "
            f"latency: {report.latency_us:g} us",
        ],
    )
    return document, False


async def run_rules(
    config: ExperimentConfig, args: argparse.Namespace
) -> Tuple[ReportDocument, bool]:
    repository, name = _repository_for(args.topology)
    response = await CompileRulesUseCase(repository).execute(
        CompileRulesRequest(
            topology=name,
            bounce_sets=[1] if args.single_bounce else [1, 2],
            asymmetric=config.asymmetric,
            walk=args.walk,
            exact_matching=config.exact_matching or None,
            tag_budget=args.tag_budget,
        )
    )
    payload = response.to_dict()
    metrics = payload["metrics"]
    document = ReportDocument(
        title=f"Rule tables of {payload['topology']}",
        columns=RULE_COLUMNS,
        rows=[row.to_dict() for row in response.rows],
        payload=payload,
        footer=[
            f"L = {metrics['L']}, kappa = {metrics['kappa']}, "
            f"{payload['static_rules']} static rules"
        ],
    )
    return document, False


async def run_topology(args: argparse.Namespace) -> Tuple[ReportDocument, bool]:
    repository, name = _repository_for(args.topology)
    response = await DescribeTopologyUseCase(repository).execute(
        DescribeTopologyRequest(topology=name)
    )
    summary: Dict[str, Any] = response.summary
    document = ReportDocument(
        title=f"Topology {summary['name']}",
        columns=["field", "value"],
        rows=[{"field": key, "value": value} for key, value in summary.items()],
        payload=summary,
    )
    return document, False


async def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main CLI entry point; returns the process exit status."""
    try:
        args = parse_arguments(argv)
        logging.basicConfig(
            level=logging.DEBUG if args.verbose else settings.log_level.upper(),
            format=settings.log_format,
        )
        logger.debug(
            f"{settings.app_name} {settings.app_version} ({settings.environment})"
        )
        config = build_config(args)

        if config.mode is ExperimentMode.RATIO:
            document, had_errors = await run_ratio(config)
        elif config.mode is ExperimentMode.MULTIFAIL:
            document, had_errors = await run_multifail(config)
        elif config.mode is ExperimentMode.BOUNDS:
            document, had_errors = await run_bounds(config, args)
        elif config.mode is ExperimentMode.DIAGNOSE:
            document, had_errors = await run_diagnose(config, args)
        elif config.mode is ExperimentMode.RULES:
            document, had_errors = await run_rules(config, args)
        else:
            document, had_errors = await run_topology(args)

        destination = Path(config.output) if config.output else None
        written = get_report_writer(config.output_format.value).write(document, destination)
        if destination is not None:
            print(f"{config.output_format.value.upper()} report saved successfully: {written}")

        if config.strict and had_errors:
            print("Error: some topologies were skipped because of errors.", file=sys.stderr)
            return EXIT_SKIPPED_WITH_ERROR
        return EXIT_OK

    except KeyboardInterrupt:
        print("\nOperation cancelled by user.", file=sys.stderr)
        return EXIT_ERROR
    except (DomainException, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as e:
        logger.exception("Unexpected failure")
        print(f"Unexpected error: {e}", file=sys.stderr)
        return EXIT_ERROR


def run() -> None:
    """Console script entry point."""
    sys.exit(asyncio.run(main()))


if __name__ == "__main__":
    run()
