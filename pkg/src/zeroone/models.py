"""Model configurations: constraint matrices mapping tables to sufficient statistics.

Builders cover two-way independence, complete independence, quasi-independence
with structural zeros, the no-three-factor-interaction (NTFI) model and the
many-facet rating-scale model, plus the Lawrence lifting of any configuration.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np
import sympy

from .cells import CellSpace, Move, MultiIndex, Table
from .errors import DimensionError, LengthMismatchError

FiberKey = tuple[int, ...]


@dataclass(frozen=True)
class Configuration:
    """Integer matrix ``A`` with one column per (non-masked) cell.

    ``A @ x`` is the sufficient statistic of table ``x``; integer kernel
    vectors of ``A`` are the moves of the model.
    """

    cell_space: CellSpace
    matrix: tuple[tuple[int, ...], ...]
    row_labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        mat = tuple(tuple(int(v) for v in row) for row in self.matrix)
        n = self.cell_space.cell_count
        for row in mat:
            if len(row) != n:
                raise LengthMismatchError(f"matrix row length {len(row)} != cell count {n}")
        object.__setattr__(self, "matrix", mat)
        if not self.row_labels:
            object.__setattr__(self, "row_labels", tuple(f"row{i}" for i in range(len(mat))))
        elif len(self.row_labels) != len(mat):
            raise LengthMismatchError("row_labels length does not match matrix")

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)

    @property
    def n_cells(self) -> int:
        return self.cell_space.cell_count

    @property
    def n_rows(self) -> int:
        return len(self.matrix)

    @cached_property
    def homogeneity_witness(self) -> tuple[Fraction, ...] | None:
        """A rational ``w`` with ``w^T A = (1, ..., 1)``, or ``None``.

        Verified by exact multiplication before it is returned.
        """
        A = sympy.Matrix(self.matrix)
        ones = sympy.ones(self.n_cells, 1)
        try:
            sol, _params = A.T.gauss_jordan_solve(ones)
        except ValueError:
            return None
        w = sol.subs({s: 0 for s in sol.free_symbols})
        check = (A.T * w - ones).is_zero_matrix
        if not check:
            return None
        return tuple(Fraction(int(v.p), int(v.q)) for v in map(sympy.Rational, w))

    def sufficient_stat(self, x: Table) -> FiberKey:
        x.check_length(self.cell_space)
        return tuple(sum(r * v for r, v in zip(row, x.values)) for row in self.matrix)

    def is_move(self, z: Move) -> bool:
        if len(z.vec) != self.n_cells:
            raise LengthMismatchError("move length does not match cell count")
        return all(sum(r * v for r, v in zip(row, z.vec)) == 0 for row in self.matrix)


def sufficient_stat(cfg: Configuration, x: Table) -> FiberKey:
    return cfg.sufficient_stat(x)


def is_move(cfg: Configuration, z: Move) -> bool:
    return cfg.is_move(z)


def homogeneity_witness(cfg: Configuration) -> tuple[Fraction, ...] | None:
    return cfg.homogeneity_witness


def _indicator_row(cells: tuple[MultiIndex, ...], pred) -> tuple[int, ...]:
    return tuple(1 if pred(c) else 0 for c in cells)


def build_two_way_independence(I: int, J: int) -> Configuration:
    """Row-sum and column-sum statistics of an I x J table."""
    if I < 2 or J < 2:
        raise DimensionError(f"need I, J >= 2, got {I}x{J}")
    space = CellSpace((I, J))
    cells = space.cells
    rows = []
    labels = []
    for i in range(I):
        rows.append(_indicator_row(cells, lambda c, i=i: c[0] == i))
        labels.append(f"row_sum[{i}]")
    for j in range(J):
        rows.append(_indicator_row(cells, lambda c, j=j: c[1] == j))
        labels.append(f"col_sum[{j}]")
    return Configuration(space, tuple(rows), tuple(labels))


def build_complete_independence(dims) -> Configuration:
    """All one-dimensional marginals of a multi-way table."""
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise DimensionError("dims must be nonempty")
    if any(d < 2 for d in dims):
        raise DimensionError(f"each dim must be >= 2, got {dims}")
    space = CellSpace(dims)
    cells = space.cells
    rows = []
    labels = []
    for ax, d in enumerate(dims):
        for lvl in range(d):
            rows.append(_indicator_row(cells, lambda c, ax=ax, lvl=lvl: c[ax] == lvl))
            labels.append(f"axis{ax}_sum[{lvl}]")
    return Configuration(space, tuple(rows), tuple(labels))


def build_quasi_independence(I: int, J: int, S) -> Configuration:
    """Row/column sums of an I x J table restricted to support cells ``S``.

    Cells outside ``S`` are structural zeros: they carry no column at all.
    """
    S = frozenset(tuple(int(c) for c in s) for s in S)
    if not S:
        raise DimensionError("support set S must be nonempty")
    box = set(itertools.product(range(I), range(J)))
    if not S <= box:
        raise DimensionError(f"S contains cells outside the {I}x{J} box")
    space = CellSpace((I, J), frozenset(box - S))
    cells = space.cells
    rows = []
    labels = []
    for i in range(I):
        rows.append(_indicator_row(cells, lambda c, i=i: c[0] == i))
        labels.append(f"row_sum[{i}]")
    for j in range(J):
        rows.append(_indicator_row(cells, lambda c, j=j: c[1] == j))
        labels.append(f"col_sum[{j}]")
    return Configuration(space, tuple(rows), tuple(labels))


def build_ntfi(n: int) -> Configuration:
    """No-three-factor-interaction model for an n x n x n table.

    The sufficient statistic is the full set of two-dimensional marginals
    (line sums along each axis).
    """
    if n < 2:
        raise DimensionError("need n >= 2")
    space = CellSpace((n, n, n))
    cells = space.cells
    rows = []
    labels = []
    for i, j in itertools.product(range(n), range(n)):
        rows.append(_indicator_row(cells, lambda c, i=i, j=j: c[0] == i and c[1] == j))
        labels.append(f"sum_ij[{i},{j}]")
    for i, k in itertools.product(range(n), range(n)):
        rows.append(_indicator_row(cells, lambda c, i=i, k=k: c[0] == i and c[2] == k))
        labels.append(f"sum_ik[{i},{k}]")
    for j, k in itertools.product(range(n), range(n)):
        rows.append(_indicator_row(cells, lambda c, j=j, k=k: c[1] == j and c[2] == k))
        labels.append(f"sum_jk[{j},{k}]")
    return Configuration(space, tuple(rows), tuple(labels))


def build_ntfi_333() -> Configuration:
    return build_ntfi(3)


def build_many_facet_rasch(dims, constant_item_param: bool = False) -> Configuration:
    """Rating-scale model over V facets plus a grade axis (last dimension).

    Statistic rows are the grade-weighted two-dimensional sums for each
    facet level, plus either per-grade-level counts or the single grand
    total when ``constant_item_param`` is set.
    """
    dims = tuple(int(d) for d in dims)
    if len(dims) < 3:
        raise DimensionError("need at least two facets plus a grade axis")
    if any(d < 2 for d in dims):
        raise DimensionError(f"each dim must be >= 2, got {dims}")
    V = len(dims) - 1
    space = CellSpace(dims)
    cells = space.cells
    rows = []
    labels = []
    for v in range(V):
        for lvl in range(dims[v]):
            rows.append(tuple(c[V] if c[v] == lvl else 0 for c in cells))
            labels.append(f"grade_weighted_facet{v}[{lvl}]")
    if constant_item_param:
        rows.append(tuple(1 for _ in cells))
        labels.append("grand_total")
    else:
        for g in range(dims[V]):
            rows.append(_indicator_row(cells, lambda c, g=g: c[V] == g))
            labels.append(f"grade_count[{g}]")
    return Configuration(space, tuple(rows), tuple(labels))


def lawrence_lift(cfg: Configuration) -> Configuration:
    """Block configuration ((A, 0), (E, E)) over a doubled cell space.

    The new leading axis of length 2 selects the original cells (0) or
    their complements (1); structural-zero masks carry over to both copies.
    """
    base = cfg.cell_space
    zeros = frozenset(
        (copy,) + z for copy in (0, 1) for z in base.structural_zeros
    )
    space = CellSpace((2,) + base.dims, zeros)
    n = base.cell_count
    rows = []
    labels = []
    for row, lab in zip(cfg.matrix, cfg.row_labels):
        rows.append(tuple(row) + (0,) * n)
        labels.append(lab)
    for k in range(n):
        e = tuple(1 if j == k else 0 for j in range(n))
        rows.append(e + e)
        labels.append(f"trial_total[{base.cells[k]}]")
    return Configuration(space, tuple(rows), tuple(labels))
