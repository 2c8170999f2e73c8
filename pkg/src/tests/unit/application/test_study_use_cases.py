"""
File: test_study_use_cases.py
Description: Unit tests for the ratio, multi-failure and bounds studies
Author: RingDiag Team
Created: 2025-06-15
"""

import pytest

from src.core.application.use_cases import (
    RunBoundsRequest,
    RunBoundsUseCase,
    RunBoundsUseCaseException,
    RunMultifailRequest,
    RunMultifailUseCase,
    RunMultifailUseCaseException,
    RunRatioRequest,
    RunRatioUseCase,
)
from src.core.application.use_cases.run_multifail_use_case import failure_patterns
from src.core.domain.entities import Topology
from src.core.domain.exceptions import TopologyParseException, ValidationException
from src.tests.conftest import InMemoryTopologyRepository


@pytest.fixture
def corpus(mesh7, line4, cycle64):
    return InMemoryTopologyRepository(
        {
            "mesh7": mesh7,
            "line4": line4,
            "c64": cycle64,
            "solo": Topology.from_edge_pairs(2, [(0, 1)], name="solo"),
        },
        broken={"broken": TopologyParseException("Unreadable GraphML", "broken")},
    )


@pytest.mark.unit
class TestRunRatioUseCase:
    """Test the rule cost ratio study."""

    @pytest.mark.asyncio
    async def test_ratio_study(self, corpus):
        """Test every suitable topology reaches its lower bound."""
        response = await RunRatioUseCase(corpus).execute(RunRatioRequest())

        assert [r.topology for r in response.records] == ["c64", "line4", "mesh7"]
        mesh7 = response.records[2]
        assert (mesh7.rule_cost, mesh7.lower_bound, mesh7.length, mesh7.kappa) == (
            9,
            9,
            11,
            2,
        )
        assert response.summary() == {
            "topologies": 3,
            "skipped": 2,
            "optimal_fraction": 1.0,
            "max_ratio": 1.0,
        }
        reasons = {s.topology: (s.reason, s.error) for s in response.skipped}
        assert reasons == {
            "broken": ("Unreadable GraphML", True),
            "solo": ("only 1 link(s)", False),
        }

    @pytest.mark.asyncio
    async def test_workers_give_same_records(self, corpus):
        """Test worker processes produce the sequential result."""
        use_case = RunRatioUseCase(corpus)
        sequential = await use_case.execute(RunRatioRequest())
        pooled = await use_case.execute(RunRatioRequest(workers=2))
        assert pooled.records == sequential.records

    @pytest.mark.asyncio
    async def test_record_fields(self, corpus):
        """Test the serialized record names its columns."""
        response = await RunRatioUseCase(corpus).execute(RunRatioRequest())
        payload = response.records[1].to_dict()
        assert payload["L_opt"] == 6
        assert payload["bridges"] == 3
        assert payload["ratio"] == 1.0


@pytest.mark.unit
class TestRunMultifailUseCase:
    """Test the multi-failure study."""

    @pytest.mark.asyncio
    async def test_single_failures_are_located_exactly(self, mesh7, line4):
        """Test one failed link is always the only link located."""
        repository = InMemoryTopologyRepository({"mesh7": mesh7, "line4": line4})
        request = RunMultifailRequest(failures_k=1, max_edges=20, cap=1000)

        response = await RunMultifailUseCase(repository).execute(request)

        by_name = {r.topology: r for r in response.records}
        assert by_name["mesh7"].patterns == 9
        assert by_name["mesh7"].domains == 7
        assert by_name["mesh7"].trials == 63
        assert by_name["mesh7"].average == 1.0
        assert by_name["line4"].trials == 12
        assert by_name["line4"].max_located == 1

    @pytest.mark.asyncio
    async def test_located_within_twice_the_visits(self, mesh7):
        """Test two failures locate between one and 2 beta links."""
        repository = InMemoryTopologyRepository({"mesh7": mesh7})
        request = RunMultifailRequest(failures_k=2, max_edges=20, cap=1000)

        record = (await RunMultifailUseCase(repository).execute(request)).records[0]

        assert record.patterns == 36
        assert 1 <= record.min_located <= record.max_located <= 2 * record.max_beta
        assert 1.0 <= record.average <= 2.0 * record.max_beta

    @pytest.mark.slow
    @pytest.mark.asyncio
    async def test_four_failures_exhaustively(self, mesh7, multi4):
        """Test every four-link pattern locates at least one link per trial."""
        repository = InMemoryTopologyRepository({"mesh7": mesh7, "multi4": multi4})
        request = RunMultifailRequest(failures_k=4, max_edges=20, cap=1000)

        response = await RunMultifailUseCase(repository).execute(request)

        by_name = {r.topology: r for r in response.records}
        assert by_name["mesh7"].patterns == 126
        assert by_name["multi4"].patterns == 70
        for record in response.records:
            assert not record.sampled
            assert record.min_located >= 1
            assert record.max_located <= 2 * record.max_beta
            assert record.average >= 1.0

    @pytest.mark.asyncio
    async def test_skips(self, mesh7, line4):
        """Test size limits and pattern caps skip topologies."""
        repository = InMemoryTopologyRepository({"mesh7": mesh7, "line4": line4})
        request = RunMultifailRequest(failures_k=4, max_edges=8, cap=1000)

        response = await RunMultifailUseCase(repository).execute(request)

        assert response.records == []
        reasons = {s.topology: s.reason for s in response.skipped}
        assert reasons == {
            "mesh7": "9 links exceed the limit of 8",
            "line4": "fewer than 4 links",
        }

    @pytest.mark.asyncio
    async def test_pattern_cap_and_sampling(self, mesh7):
        """Test a capped study is skipped unless patterns are sampled."""
        repository = InMemoryTopologyRepository({"mesh7": mesh7})
        use_case = RunMultifailUseCase(repository)

        capped = await use_case.execute(
            RunMultifailRequest(failures_k=2, max_edges=20, cap=10)
        )
        assert capped.skipped[0].reason == "36 patterns exceed the cap of 10"

        sampled = await use_case.execute(
            RunMultifailRequest(failures_k=2, max_edges=20, cap=10, sample_patterns=5)
        )
        record = sampled.records[0]
        assert record.sampled
        assert record.patterns == 5
        assert record.trials == 35

    @pytest.mark.asyncio
    async def test_invalid_request(self, mesh7):
        """Test k must be positive."""
        use_case = RunMultifailUseCase(InMemoryTopologyRepository({"mesh7": mesh7}))
        with pytest.raises(RunMultifailUseCaseException):
            await use_case.execute(RunMultifailRequest(failures_k=0))

    def test_failure_patterns(self):
        """Test exhaustive, sampled and refused pattern lists."""
        patterns, sampled = failure_patterns(5, 2, cap=10, sample=0, seed=0)
        assert len(patterns) == 10 and not sampled

        patterns, sampled = failure_patterns(5, 2, cap=9, sample=4, seed=7)
        assert sampled
        assert len(set(patterns)) == 4
        assert patterns == sorted(patterns)
        assert failure_patterns(5, 2, cap=9, sample=4, seed=7) == (patterns, True)

        assert failure_patterns(5, 2, cap=9, sample=0, seed=0) == (None, False)


@pytest.mark.unit
class TestRunBoundsUseCase:
    """Test the analytic bounds table."""

    @pytest.mark.asyncio
    async def test_reference_table(self):
        """Test the default table for a 65536-hop ring."""
        response = await RunBoundsUseCase().execute(RunBoundsRequest(tau_us=1.0))

        rows = [row.to_dict() for row in response.rows]
        assert [row["m"] for row in rows] == [1, 2, 3, 4, 40, 255, 65535]
        assert [row["M"] for row in rows] == [17, 23, 25, 29, 121, 511, 65536]
        assert [round(row["T_UB_s"], 2) for row in rows] == [
            2.16,
            1.51,
            1.11,
            0.98,
            0.46,
            0.33,
            0.2,
        ]
        assert response.sandwich_us == {
            "lower": 196606,
            "upper": 2031618,
            "envelope_lower": 196606,
            "envelope_upper": 2031618,
        }

    @pytest.mark.asyncio
    async def test_bidirectional_row(self):
        """Test a single bidirectional row."""
        response = await RunBoundsUseCase().execute(
            RunBoundsRequest(m=[4], tau_us=1.0, bidirectional=True)
        )
        assert len(response.rows) == 1
        assert round(response.rows[0].latency_upper_s, 2) == 0.52
        assert response.to_dict()["L"] == 65536

    @pytest.mark.asyncio
    async def test_invalid_requests(self):
        """Test out-of-range inputs are rejected."""
        use_case = RunBoundsUseCase()
        with pytest.raises(RunBoundsUseCaseException):
            await use_case.execute(RunBoundsRequest(length=1))
        with pytest.raises(RunBoundsUseCaseException):
            await use_case.execute(RunBoundsRequest(m=[0]))
        with pytest.raises(ValidationException):
            await use_case.execute(RunBoundsRequest(length=10, kappa=10))
