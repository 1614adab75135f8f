"""Cell spaces, integer tables and signed moves.

All values are immutable after construction; every method is a pure
function, so the types are safe to share between threads.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .errors import CellIndexError, LengthMismatchError, StructuralZeroError

MultiIndex = tuple[int, ...]


@dataclass(frozen=True)
class CellSpace:
    """A box of cells ``I_1 x ... x I_V`` with an optional structural-zero mask.

    Cells are ordered row-major (last axis fastest) over the declared
    dimensions; masked cells are skipped, so linear indices rank only the
    cells that actually carry a table entry.
    """

    dims: tuple[int, ...]
    structural_zeros: frozenset[MultiIndex] = field(default_factory=frozenset)

    def __post_init__(self):
        if not self.dims or any(d < 1 for d in self.dims):
            raise CellIndexError(f"dims must be positive, got {self.dims}")
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        zeros = frozenset(tuple(int(c) for c in z) for z in self.structural_zeros)
        for z in zeros:
            if len(z) != len(self.dims) or any(not 0 <= c < d for c, d in zip(z, self.dims)):
                raise CellIndexError(f"structural zero {z} outside dims {self.dims}")
        object.__setattr__(self, "structural_zeros", zeros)

    @cached_property
    def cells(self) -> tuple[MultiIndex, ...]:
        """All non-masked multi-indices in row-major order."""
        return tuple(
            idx
            for idx in itertools.product(*(range(d) for d in self.dims))
            if idx not in self.structural_zeros
        )

    @cached_property
    def _index_of(self) -> dict[MultiIndex, int]:
        return {idx: k for k, idx in enumerate(self.cells)}

    @property
    def cell_count(self) -> int:
        return len(self.cells)

    def linear_index(self, idx: MultiIndex) -> int:
        idx = tuple(int(c) for c in idx)
        if len(idx) != len(self.dims) or any(not 0 <= c < d for c, d in zip(idx, self.dims)):
            raise CellIndexError(f"index {idx} outside dims {self.dims}")
        if idx in self.structural_zeros:
            raise StructuralZeroError(f"cell {idx} is a structural zero")
        return self._index_of[idx]

    def multi_index(self, k: int) -> MultiIndex:
        if not 0 <= k < self.cell_count:
            raise CellIndexError(f"linear index {k} out of range [0, {self.cell_count})")
        return self.cells[k]


@dataclass(frozen=True)
class Table:
    """An integer frequency vector over the non-masked cells of a space."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    @property
    def zero_one(self) -> bool:
        return all(v in (0, 1) for v in self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> int:
        return self.values[k]

    def check_length(self, space: CellSpace) -> None:
        if len(self.values) != space.cell_count:
            raise LengthMismatchError(
                f"table has {len(self.values)} entries, space has {space.cell_count} cells"
            )


@dataclass(frozen=True)
class Move:
    """A signed integer vector over cells, stored dense in cell order.

    The canonical representative of the pair {z, -z} carries a positive
    entry at its smallest-index support cell; constructors normalise
    unless told otherwise.
    """

    vec: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vec", tuple(int(v) for v in self.vec))

    @classmethod
    def canonical(cls, vec) -> "Move":
        vec = tuple(int(v) for v in vec)
        for v in vec:
            if v > 0:
                return cls(vec)
            if v < 0:
                return cls(tuple(-x for x in vec))
        return cls(vec)

    @classmethod
    def from_cells(cls, n_cells: int, plus, minus) -> "Move":
        """Square-free move with +1 on ``plus`` and -1 on ``minus`` (linear indices)."""
        vec = [0] * n_cells
        for k in plus:
            vec[k] += 1
        for k in minus:
            vec[k] -= 1
        return cls.canonical(vec)

    @cached_property
    def entries(self) -> dict[int, int]:
        """Sparse view: linear cell index -> nonzero coefficient."""
        return {k: v for k, v in enumerate(self.vec) if v != 0}

    @cached_property
    def positive_part(self) -> tuple[int, ...]:
        return tuple(v if v > 0 else 0 for v in self.vec)

    @cached_property
    def negative_part(self) -> tuple[int, ...]:
        return tuple(-v if v < 0 else 0 for v in self.vec)

    @property
    def degree(self) -> int:
        return sum(self.positive_part)

    @property
    def l1_norm(self) -> int:
        return sum(abs(v) for v in self.vec)

    @property
    def square_free(self) -> bool:
        return all(v in (-1, 0, 1) for v in self.vec)

    @cached_property
    def support(self) -> tuple[int, ...]:
        return tuple(k for k, v in enumerate(self.vec) if v != 0)

    @cached_property
    def masks(self) -> tuple[int, int]:
        """(positive, negative) support bitmasks; valid only for square-free moves."""
        p = m = 0
        for k, v in enumerate(self.vec):
            if v > 0:
                p |= 1 << k
            elif v < 0:
                m |= 1 << k
        return p, m

    def __neg__(self) -> "Move":
        return Move(tuple(-v for v in self.vec))

    def __len__(self) -> int:
        return len(self.vec)

    def apply(self, x: Table, sign: int = 1) -> Table:
        if len(x.values) != len(self.vec):
            raise LengthMismatchError("move and table lengths differ")
        return Table(tuple(a + sign * b for a, b in zip(x.values, self.vec)))
