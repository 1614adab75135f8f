import numpy as np
import pytest

from zeroone.cells import Move, Table
from zeroone.errors import (
    CapExceededError,
    MixedFiberError,
    NoDecompositionError,
    ZeroOneError,
)
from zeroone.fiber import (
    build_fiber_graph,
    check_distance_reducing,
    check_generalized_crossing,
    check_strong_crossing,
    check_weak_crossing,
    conformal_decompose,
    enumerate_zero_one_fiber,
    sweep_connectivity,
)
from zeroone.graver import MoveSet, square_free_graver
from zeroone.models import (
    build_complete_independence,
    build_ntfi,
    build_two_way_independence,
)
from zeroone.movegen import basic_moves_two_way, degree2_threeway_patterns


def basic_with_config(I, J):
    cfg = build_two_way_independence(I, J)
    b = basic_moves_two_way(I, J)
    return cfg, MoveSet(b.moves, b.provenance, cfg)


class TestEnumeration:
    def test_two_permutation_tables(self):
        cfg = build_two_way_independence(2, 2)
        fiber = enumerate_zero_one_fiber(cfg, (1, 1, 1, 1))
        assert [x.values for x in fiber] == [(0, 1, 1, 0), (1, 0, 0, 1)]

    def test_infeasible_key_is_empty(self):
        cfg = build_two_way_independence(2, 2)
        assert enumerate_zero_one_fiber(cfg, (2, 2, 1, 1)) == []

    def test_permutation_count(self):
        cfg = build_two_way_independence(4, 4)
        fiber = enumerate_zero_one_fiber(cfg, (1,) * 8)
        assert len(fiber) == 24  # 4x4 permutation matrices

    def test_cap_raises(self):
        cfg = build_two_way_independence(4, 4)
        with pytest.raises(CapExceededError):
            enumerate_zero_one_fiber(cfg, (1,) * 8, cap=3)

    def test_key_length_checked(self):
        cfg = build_two_way_independence(2, 2)
        with pytest.raises(MixedFiberError):
            enumerate_zero_one_fiber(cfg, (1, 1))


class TestFiberGraph:
    def test_two_node_graph(self):
        cfg, b = basic_with_config(2, 2)
        fiber = enumerate_zero_one_fiber(cfg, (1, 1, 1, 1))
        g = build_fiber_graph(fiber, b)
        assert g.connected and g.n_components == 1
        assert len(g.edges) == 1

    def test_mixed_fiber_rejected(self):
        cfg, b = basic_with_config(2, 2)
        with pytest.raises(MixedFiberError):
            build_fiber_graph([Table((1, 0, 0, 1)), Table((1, 1, 0, 0))], b)

    def test_empty_move_set_gives_singletons(self):
        cfg = build_two_way_independence(2, 2)
        fiber = enumerate_zero_one_fiber(cfg, (1, 1, 1, 1))
        g = build_fiber_graph(fiber, MoveSet.build([], "t", cfg))
        assert g.n_components == 2


class TestDistanceReduction:
    def test_basic_on_small_fiber(self):
        cfg, b = basic_with_config(3, 3)
        fiber = enumerate_zero_one_fiber(cfg, (1, 1, 1, 1, 1, 1))
        ok, cex = check_distance_reducing(b, fiber, strong=True)
        assert ok and cex is None

    def test_counterexample_reported(self):
        cfg = build_ntfi(3)
        b0 = basic_moves_two_way(3, 3)  # wrong model: 9-cell moves never apply
        fiber = enumerate_zero_one_fiber(build_two_way_independence(3, 3), (1, 1, 1, 1, 1, 1))
        ok, cex = check_distance_reducing(MoveSet.build([], "t"), fiber)
        assert not ok
        x, y = cex
        assert x.values != y.values


class TestCrossing:
    def test_swap_pair_has_strong_crossing(self):
        cfg = build_two_way_independence(2, 2)
        rep = check_strong_crossing(Table((1, 0, 0, 1)), Table((0, 1, 1, 0)), cfg)
        assert rep.found and rep.condition == "strong"

    def test_weak_implied_by_strong(self):
        cfg = build_two_way_independence(2, 2)
        rep = check_weak_crossing(Table((1, 0, 0, 1)), Table((0, 1, 1, 0)), cfg)
        assert rep.found

    def test_identical_tables_rejected(self):
        cfg = build_two_way_independence(2, 2)
        with pytest.raises(ZeroOneError):
            check_strong_crossing(Table((1, 0, 0, 1)), Table((1, 0, 0, 1)), cfg)

    def test_generalized_full_set_trivially_covered(self):
        cfg = build_complete_independence((2, 2, 2))
        b0 = square_free_graver(cfg, 2)
        ok, cex = check_generalized_crossing(b0, b0)
        assert ok and cex is None

    def test_generalized_requires_subset(self):
        cfg = build_complete_independence((2, 2, 2))
        b0 = square_free_graver(cfg, 2)
        other = degree2_threeway_patterns((2, 2, 3))
        with pytest.raises(ZeroOneError):
            check_generalized_crossing(other, b0)


class TestConformalDecompose:
    def test_single_move_difference(self):
        cfg = build_two_way_independence(2, 2)
        b0 = square_free_graver(cfg, 2)
        parts = conformal_decompose(Table((1, 0, 0, 1)), Table((0, 1, 1, 0)), b0)
        total = [0, 0, 0, 0]
        for z in parts:
            total = [a + v for a, v in zip(total, z.vec)]
        assert tuple(total) == (-1, 1, 1, -1)

    def test_no_decomposition_raises(self):
        b0 = MoveSet.build([], "t")
        with pytest.raises(NoDecompositionError):
            conformal_decompose(Table((1, 0, 0, 1)), Table((0, 1, 1, 0)), b0)


class TestSweep:
    def test_three_by_three_basic_connected(self):
        cfg, b = basic_with_config(3, 3)
        rep = sweep_connectivity(cfg, b, max_cells=9)
        assert rep.n_tables == 512
        assert rep.all_connected
        assert rep.n_components == rep.n_fibers

    def test_cell_limit_enforced(self):
        cfg, b = basic_with_config(5, 5)
        with pytest.raises(CapExceededError):
            sweep_connectivity(cfg, b, max_cells=9)
