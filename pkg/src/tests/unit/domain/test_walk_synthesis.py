"""
File: test_walk_synthesis.py
Description: Unit tests for covering walk synthesis
Author: RingDiag Team
Created: 2025-06-11
"""

import pytest

from src.core.domain.entities import CoverMode, InvalidWalkException, Topology, Walk
from src.core.domain.services import (
    TopologyPreconditionException,
    WalkSynthesisException,
    edge_multiplicity,
    euler_cycle_directed,
    find_bridges,
    improve_walk,
    reverse_walk,
    solve_cpp,
    validate_walk,
    walk_metrics,
)
from src.core.domain.value_objects import FailureMode
from src.tests.conftest import (
    MULTI4_CENTER_EDGES,
    MULTI4_CENTER_SWITCHES,
    MULTI4_SHARED_EDGES,
    MULTI4_SHARED_SWITCHES,
    brute_force_cpp_length,
    brute_force_min_rule_cost,
    random_connected_topologies,
)


@pytest.mark.unit
class TestSolveCpp:
    """Test the shortest undirected covering walk."""

    def test_seven_switch_topology(self, mesh7):
        """Test two duplicated links give length 11."""
        walk = solve_cpp(mesh7)
        assert walk.length == 11
        assert walk.start == 0
        assert validate_walk(walk, mesh7, FailureMode.SYMMETRIC)

    def test_eight_link_multigraph(self, multi4):
        """Test four odd switches paired by single links give length 10."""
        walk = solve_cpp(multi4)
        assert walk.length == 10
        assert validate_walk(walk, multi4, FailureMode.SYMMETRIC)

    def test_eulerian_graph_needs_no_duplicates(self):
        """Test an Eulerian graph is walked once per link."""
        bowtie = Topology.from_edge_pairs(
            5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]
        )
        assert solve_cpp(bowtie).length == 6

    def test_line_walks_every_link_twice(self, line4):
        """Test a tree walk crosses every link in both directions."""
        walk = solve_cpp(line4)
        assert walk.length == 6
        assert walk_metrics(walk).kappa == 0

    def test_start_switch(self, mesh7):
        """Test the walk starts where asked."""
        assert solve_cpp(mesh7, start=3).start == 3

    @pytest.mark.slow
    def test_matches_brute_force_length(self):
        """Test optimality against an exhaustive search on small graphs."""
        for topology in random_connected_topologies(40, 7, 10, seed=11):
            walk = solve_cpp(topology)
            assert validate_walk(walk, topology, FailureMode.SYMMETRIC)
            assert walk.length == brute_force_cpp_length(topology)

    @pytest.mark.slow
    def test_no_link_walked_more_than_twice(self):
        """Test no shortest covering walk uses a link three times."""
        for topology in random_connected_topologies(500, 15, 30, seed=3):
            walk = solve_cpp(topology)
            assert max(edge_multiplicity(walk).values()) <= 2

    def test_greedy_pairing_still_covers(self):
        """Test greedy pairing yields a covering walk no shorter than optimal."""
        for topology in random_connected_topologies(20, 8, 12, seed=5):
            walk = solve_cpp(topology, exact_matching=False)
            assert validate_walk(walk, topology, FailureMode.SYMMETRIC)
            assert walk.length >= solve_cpp(topology, exact_matching=True).length

    def test_disconnected_topology_rejected(self):
        """Test a disconnected topology has no covering walk."""
        with pytest.raises(TopologyPreconditionException):
            solve_cpp(Topology.from_edge_pairs(4, [(0, 1), (2, 3)]))

    def test_topology_without_links_rejected(self):
        """Test a single switch has nothing to walk."""
        with pytest.raises(WalkSynthesisException):
            solve_cpp(Topology.from_edge_pairs(1, []))


@pytest.mark.unit
class TestDirectedEuler:
    """Test the directed covering walk."""

    def test_every_arc_once(self, mesh7):
        """Test the directed ring uses each orientation exactly once."""
        walk = euler_cycle_directed(mesh7)
        metrics = walk_metrics(walk)
        assert walk.cover is CoverMode.DIRECTED
        assert metrics.length == 18
        assert metrics.kappa == 0
        assert validate_walk(walk, mesh7, FailureMode.ASYMMETRIC)

    def test_rule_cost_is_twice_the_links(self):
        """Test the directed ring meets its 2|E| optimum on random graphs."""
        for topology in random_connected_topologies(40, 12, 24, seed=13):
            metrics = walk_metrics(euler_cycle_directed(topology, start=1))
            assert metrics.rule_cost == 2 * topology.num_edges


@pytest.mark.unit
class TestWalkMetrics:
    """Test walk metrics and reversal."""

    def test_eight_link_hand_written_ring(self, multi4):
        """Test the twelve-hop ring shares four arcs and needs eight rules."""
        walk = Walk.from_switch_sequence(
            multi4, MULTI4_SHARED_SWITCHES, MULTI4_SHARED_EDGES
        )
        metrics = walk_metrics(walk)
        assert metrics.length == 12
        assert metrics.kappa == 4
        assert metrics.rule_cost == 8
        assert metrics.to_dict() == {"L": 12, "kappa": 4, "rule_cost": 8}

    def test_reverse_walk(self, table_ring):
        """Test reversing flips order and orientation."""
        reverse = reverse_walk(table_ring)
        assert reverse.start == table_ring.start
        assert reverse.arcs[0] == table_ring.arcs[-1].reversed()
        assert reverse_walk(reverse) == table_ring
        assert walk_metrics(reverse).kappa == walk_metrics(table_ring).kappa

    def test_validate_rejects_partial_cover(self, mesh7):
        """Test a ring missing links is not a covering walk."""
        triangle = Walk.from_switch_sequence(mesh7, [0, 1, 4])
        assert not validate_walk(triangle, mesh7, FailureMode.SYMMETRIC)


@pytest.mark.unit
class TestImproveWalk:
    """Test the arc sharing improvement."""

    def test_seven_switch_topology_reaches_lower_bound(self, mesh7):
        """Test the improved ring shares two arcs and needs nine rules."""
        improved = improve_walk(solve_cpp(mesh7), mesh7)
        metrics = walk_metrics(improved)
        assert metrics.length == 11
        assert metrics.kappa == 2
        assert metrics.rule_cost == 9
        assert improved.start == 0
        assert validate_walk(improved, mesh7, FailureMode.SYMMETRIC)

    def test_never_below_lower_bound(self):
        """Test the improved ring costs at least |E| + |B| rules."""
        for topology in random_connected_topologies(80, 12, 22, seed=17):
            cpp = solve_cpp(topology)
            improved = improve_walk(cpp, topology)
            metrics = walk_metrics(improved)
            assert improved.length == cpp.length
            assert metrics.kappa >= walk_metrics(cpp).kappa
            assert metrics.rule_cost >= topology.num_edges + len(find_bridges(topology))
            assert validate_walk(improved, topology, FailureMode.SYMMETRIC)

    def test_eight_link_center_ring(self, multi4):
        """Test a shortest ring repeating one arc needs nine rules."""
        walk = Walk.from_switch_sequence(
            multi4, MULTI4_CENTER_SWITCHES, MULTI4_CENTER_EDGES
        )
        metrics = walk_metrics(walk)
        assert metrics.length == solve_cpp(multi4).length == 10
        assert metrics.kappa == 1
        assert metrics.rule_cost == 9
        assert validate_walk(walk, multi4, FailureMode.SYMMETRIC)
        improved = improve_walk(walk, multi4)
        assert walk_metrics(improved).rule_cost <= 9
        assert validate_walk(improved, multi4, FailureMode.SYMMETRIC)

    def test_fewest_rules_of_small_topologies(self, mesh7, multi4):
        """Test the exhaustive minimum on the shared topologies."""
        assert brute_force_min_rule_cost(mesh7) == 9
        assert brute_force_min_rule_cost(multi4) == 8

    @pytest.mark.slow
    def test_between_input_and_fewest_rules(self):
        """Test the improved ring never costs more than its input or less
        than the fewest rules any covering ring needs."""
        for topology in random_connected_topologies(30, 7, 10, seed=53):
            cpp = solve_cpp(topology)
            improved = improve_walk(cpp, topology)
            fewest = brute_force_min_rule_cost(topology)
            cost = walk_metrics(improved).rule_cost
            assert walk_metrics(cpp).rule_cost >= cost >= fewest, topology.name
            assert fewest >= topology.num_edges + len(find_bridges(topology))

    def test_trees_cost_twice_their_links(self, line4):
        """Test a tree ring needs 2|E| rules, its lower bound."""
        star = Topology.from_edge_pairs(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
        for tree in (line4, star):
            metrics = walk_metrics(improve_walk(solve_cpp(tree), tree))
            assert metrics.rule_cost == 2 * tree.num_edges

    def test_rejects_non_covering_walk(self, mesh7):
        """Test the improvement needs a covering walk."""
        with pytest.raises(InvalidWalkException):
            improve_walk(Walk.from_switch_sequence(mesh7, [0, 1, 4]), mesh7)
