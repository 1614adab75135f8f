import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zeroone.cells import CellSpace, Move, Table
from zeroone.errors import (
    CellIndexError,
    LengthMismatchError,
    StructuralZeroError,
)

dims_st = st.lists(st.integers(1, 4), min_size=1, max_size=3).map(tuple)


@st.composite
def space_with_zeros(draw):
    dims = draw(dims_st)
    import itertools

    box = list(itertools.product(*(range(d) for d in dims)))
    zeros = draw(st.sets(st.sampled_from(box), max_size=max(0, len(box) - 1)))
    return CellSpace(dims, frozenset(zeros))


class TestCellSpace:
    def test_row_major_order(self):
        space = CellSpace((2, 3))
        assert space.cells == ((0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2))

    def test_structural_zeros_removed(self):
        space = CellSpace((2, 2), frozenset({(0, 1)}))
        assert space.cell_count == 3
        assert (0, 1) not in space.cells

    @given(space_with_zeros())
    @settings(max_examples=60)
    def test_index_round_trip(self, space):
        for k in range(space.cell_count):
            assert space.linear_index(space.multi_index(k)) == k

    def test_out_of_range_index(self):
        space = CellSpace((2, 2))
        with pytest.raises(CellIndexError):
            space.linear_index((2, 0))
        with pytest.raises(CellIndexError):
            space.multi_index(4)

    def test_masked_cell_raises_distinct_error(self):
        space = CellSpace((2, 2), frozenset({(1, 1)}))
        with pytest.raises(StructuralZeroError):
            space.linear_index((1, 1))

    def test_bad_dims(self):
        with pytest.raises(CellIndexError):
            CellSpace((0, 2))
        with pytest.raises(CellIndexError):
            CellSpace((2, 2), frozenset({(2, 0)}))


class TestTable:
    def test_zero_one(self):
        assert Table((0, 1, 1)).zero_one
        assert not Table((0, 2)).zero_one

    def test_check_length(self):
        with pytest.raises(LengthMismatchError):
            Table((1, 0)).check_length(CellSpace((2, 2)))


class TestMove:
    def test_canonical_flips_leading_negative(self):
        z = Move.canonical((0, -1, 1))
        assert z.vec == (0, 1, -1)
        assert Move.canonical((0, 1, -1)).vec == (0, 1, -1)

    def test_from_cells(self):
        z = Move.from_cells(4, (0, 3), (1, 2))
        assert z.vec == (1, -1, -1, 1)
        assert z.degree == 2 and z.l1_norm == 4 and z.square_free

    def test_parts_and_degree(self):
        z = Move((2, -1, 0, -1))
        assert z.positive_part == (2, 0, 0, 0)
        assert z.negative_part == (0, 1, 0, 1)
        assert z.degree == 2
        assert not z.square_free

    def test_masks_match_signs(self):
        z = Move((1, -1, 0, 1))
        p, m = z.masks
        assert p == 0b1001 and m == 0b0010

    def test_apply_and_negate(self):
        x = Table((1, 0, 0, 1))
        z = Move((-1, 1, 1, -1))
        y = z.apply(x)
        assert y.values == (0, 1, 1, 0)
        assert (-z).apply(y).values == x.values

    def test_apply_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            Move((1, -1)).apply(Table((1, 0, 0)))

    @given(st.lists(st.integers(-3, 3), min_size=1, max_size=8))
    def test_canonical_idempotent_and_sign_fixed(self, vec):
        z = Move.canonical(vec)
        assert Move.canonical(z.vec).vec == z.vec
        nz = [v for v in z.vec if v]
        if nz:
            assert nz[0] > 0
