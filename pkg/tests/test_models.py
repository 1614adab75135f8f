import numpy as np
import pytest
import sympy

from zeroone.cells import CellSpace, Move, Table
from zeroone.errors import DimensionError, LengthMismatchError
from zeroone.models import (
    Configuration,
    build_complete_independence,
    build_many_facet_rasch,
    build_ntfi,
    build_quasi_independence,
    build_two_way_independence,
    lawrence_lift,
)


def sympy_rank(cfg):
    return sympy.Matrix(cfg.matrix).rank()


class TestTwoWayIndependence:
    def test_stat_is_row_and_col_sums(self):
        cfg = build_two_way_independence(3, 4)
        x = np.arange(12).reshape(3, 4)
        t = cfg.sufficient_stat(Table(tuple(x.ravel())))
        assert t == tuple(x.sum(axis=1)) + tuple(x.sum(axis=0))

    def test_rank(self):
        # row space has dimension I + J - 1 (one linear dependency)
        assert sympy_rank(build_two_way_independence(2, 2)) == 3
        assert sympy_rank(build_two_way_independence(3, 4)) == 6

    def test_basic_swap_is_move(self):
        cfg = build_two_way_independence(2, 2)
        assert cfg.is_move(Move((1, -1, -1, 1)))
        assert not cfg.is_move(Move((1, -1, -1, 0)))

    def test_bad_dims(self):
        with pytest.raises(DimensionError):
            build_two_way_independence(1, 3)


class TestCompleteIndependence:
    def test_stat_is_axis_sums(self):
        cfg = build_complete_independence((2, 3, 2))
        x = np.arange(12).reshape(2, 3, 2)
        t = cfg.sufficient_stat(Table(tuple(x.ravel())))
        expected = (
            tuple(x.sum(axis=(1, 2)))
            + tuple(x.sum(axis=(0, 2)))
            + tuple(x.sum(axis=(0, 1)))
        )
        assert t == expected

    def test_rank(self):
        # sum(dims) rows with one dependency per extra axis
        cfg = build_complete_independence((2, 3, 4))
        assert sympy_rank(cfg) == 2 + 3 + 4 - 2


class TestQuasiIndependence:
    def test_structural_zeros_are_removed_cells(self):
        S = {(i, j) for i in range(3) for j in range(3) if i != j}
        cfg = build_quasi_independence(3, 3, S)
        assert cfg.n_cells == 6
        assert cfg.cell_space.structural_zeros == frozenset({(0, 0), (1, 1), (2, 2)})

    def test_stat_over_support_only(self):
        S = {(0, 0), (0, 1), (1, 0)}
        cfg = build_quasi_independence(2, 2, S)
        t = cfg.sufficient_stat(Table((1, 1, 1)))
        assert t == (2, 1, 2, 1)

    def test_empty_support_rejected(self):
        with pytest.raises(DimensionError):
            build_quasi_independence(2, 2, set())


class TestNtfi:
    def test_stat_is_line_sums(self):
        cfg = build_ntfi(2)
        x = np.arange(8).reshape(2, 2, 2)
        t = cfg.sufficient_stat(Table(tuple(x.ravel())))
        expected = (
            tuple(x.sum(axis=2).ravel())
            + tuple(x.sum(axis=1).ravel())
            + tuple(x.sum(axis=0).ravel())
        )
        assert t == expected

    def test_rank_333(self):
        # line-sum rows of an n x n x n box span 3n^2 - 3n + 1 dimensions
        assert sympy_rank(build_ntfi(3)) == 19

    def test_row_count(self):
        assert build_ntfi(3).n_rows == 27


class TestManyFacetRasch:
    def test_grade_weighted_rows_match_slice_marginals(self):
        # with a dichotomous grade axis the weighted rows are the
        # one-dimensional marginals of the grade-1 slice
        cfg = build_many_facet_rasch((2, 3, 2, 2))
        x = np.arange(24).reshape(2, 3, 2, 2)
        t = cfg.sufficient_stat(Table(tuple(x.ravel())))
        s = x[..., 1]
        weighted = (
            tuple(s.sum(axis=(1, 2)))
            + tuple(s.sum(axis=(0, 2)))
            + tuple(s.sum(axis=(0, 1)))
        )
        assert t[: len(weighted)] == weighted
        # remaining rows are the per-grade counts
        assert t[len(weighted):] == (int(x[..., 0].sum()), int(x[..., 1].sum()))

    def test_constant_item_param_uses_grand_total(self):
        cfg = build_many_facet_rasch((2, 2, 3), constant_item_param=True)
        assert cfg.row_labels[-1] == "grand_total"
        t = cfg.sufficient_stat(Table((1,) * 12))
        assert t[-1] == 12

    def test_needs_three_axes(self):
        with pytest.raises(DimensionError):
            build_many_facet_rasch((2, 2))


class TestHomogeneity:
    @pytest.mark.parametrize(
        "cfg",
        [
            build_two_way_independence(3, 4),
            build_complete_independence((2, 2, 3)),
            build_quasi_independence(3, 3, {(i, j) for i in range(3) for j in range(3) if i != j}),
            build_ntfi(3),
            build_many_facet_rasch((2, 2, 2)),
            build_many_facet_rasch((2, 2, 2), constant_item_param=True),
        ],
    )
    def test_builders_are_homogeneous(self, cfg):
        w = cfg.homogeneity_witness
        assert w is not None
        col_sums = [sum(wi * row[c] for wi, row in zip(w, cfg.matrix)) for c in range(cfg.n_cells)]
        assert all(s == 1 for s in col_sums)

    def test_inhomogeneous_returns_none(self):
        cfg = Configuration(CellSpace((2,)), ((1, 2),))
        assert cfg.homogeneity_witness is None


class TestLawrenceLift:
    def test_block_structure(self):
        cfg = build_two_way_independence(2, 2)
        lifted = lawrence_lift(cfg)
        assert lifted.cell_space.dims == (2, 2, 2)
        assert lifted.n_rows == cfg.n_rows + cfg.n_cells
        A = lifted.array
        n = cfg.n_cells
        assert (A[: cfg.n_rows, n:] == 0).all()
        assert (A[cfg.n_rows:, :n] == np.eye(n, dtype=int)).all()
        assert (A[cfg.n_rows:, n:] == np.eye(n, dtype=int)).all()

    def test_mask_carries_to_both_copies(self):
        S = {(0, 0), (0, 1), (1, 0)}
        lifted = lawrence_lift(build_quasi_independence(2, 2, S))
        assert lifted.cell_space.structural_zeros == frozenset({(0, 1, 1), (1, 1, 1)})


class TestConfiguration:
    def test_row_length_checked(self):
        with pytest.raises(LengthMismatchError):
            Configuration(CellSpace((2, 2)), ((1, 0, 0),))

    def test_is_move_length_checked(self):
        cfg = build_two_way_independence(2, 2)
        with pytest.raises(LengthMismatchError):
            cfg.is_move(Move((1, -1)))
