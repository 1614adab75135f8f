"""Primitive moves, Graver bases and square-free subsets.

Two independent routes are provided: a Pottier-style completion that
computes the full Graver basis of small configurations, and a direct
fiber-pairing enumeration of the square-free primitive moves that scales
to the desk-size models used throughout.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field

import numpy as np

from .cells import Move
from .errors import BudgetExhaustedError, NotAMoveError
from .models import Configuration


@dataclass(frozen=True)
class MoveSet:
    """Ordered, deduplicated collection of canonical moves with provenance tags."""

    moves: tuple[Move, ...]
    provenance: tuple[str, ...]
    source_config: Configuration | None = None

    @classmethod
    def build(cls, moves, tag, cfg=None, validate: bool = False) -> "MoveSet":
        """Canonicalise, deduplicate and sort; optionally check kernel membership."""
        seen: dict[tuple[int, ...], str] = {}
        if isinstance(tag, str):
            tags = itertools.repeat(tag)
        else:
            tags = iter(tag)
        for z, t in zip(moves, tags):
            c = Move.canonical(z.vec)
            if any(c.vec):
                seen.setdefault(c.vec, t)
        ordered = sorted(seen, key=lambda v: (sum(abs(x) for x in v), v))
        ms = cls(
            tuple(Move(v) for v in ordered),
            tuple(seen[v] for v in ordered),
            cfg,
        )
        if validate and cfg is not None:
            for z in ms.moves:
                if not cfg.is_move(z):
                    raise NotAMoveError(f"generated vector {z.vec} is not a move")
        return ms

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def __contains__(self, z: Move) -> bool:
        return Move.canonical(z.vec).vec in self._vecs

    @property
    def _vecs(self) -> frozenset:
        return frozenset(z.vec for z in self.moves)

    def union(self, other: "MoveSet") -> "MoveSet":
        return MoveSet.build(
            list(self.moves) + list(other.moves),
            list(self.provenance) + list(other.provenance),
            self.source_config or other.source_config,
        )

    def retag(self, tag: str) -> "MoveSet":
        return MoveSet(self.moves, tuple(tag for _ in self.moves), self.source_config)


def degree_histogram(b: MoveSet) -> dict[int, int]:
    hist: dict[int, int] = {}
    for z in b.moves:
        hist[z.degree] = hist.get(z.degree, 0) + 1
    return dict(sorted(hist.items()))


def square_free_subset(b: MoveSet) -> MoveSet:
    keep = [z for z in b.moves if z.square_free]
    return MoveSet.build(keep, "square-free", b.source_config)


def integer_kernel_basis(A: np.ndarray) -> list[tuple[int, ...]]:
    """Lattice basis of the integer kernel of ``A`` by unimodular column reduction.

    Exact Python-int arithmetic throughout; the returned vectors generate
    ker(A) over the integers, not merely over the rationals.
    """
    nr, nc = A.shape
    M = [[int(A[r][c]) for c in range(nc)] for r in range(nr)]
    U = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]
    active = list(range(nc))

    def col_op_sub(dst, src, q):
        # column dst -= q * column src
        for r in range(nr):
            M[r][dst] -= q * M[r][src]
        for r in range(nc):
            U[r][dst] -= q * U[r][src]

    for row in range(nr):
        while True:
            nz = [c for c in active if M[row][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda c: abs(M[row][c]))
            done = True
            for c in nz:
                if c == piv:
                    continue
                q = M[row][c] // M[row][piv]
                col_op_sub(c, piv, q)
                if M[row][c] != 0:
                    done = False
            if done:
                active.remove(piv)
                break
    return [tuple(U[r][c] for r in range(nc)) for c in active]


def _conformal_leq(g: tuple, s: tuple) -> bool:
    """True iff g fits conformally inside s (g+ <= s+ and g- <= s- componentwise)."""
    for a, b in zip(g, s):
        if a > 0 and (b < a):
            return False
        if a < 0 and (b > a):
            return False
    return True


def graver_basis(
    cfg: Configuration,
    max_candidates: int = 2_000_000,
    verify_sample: int = 200,
) -> MoveSet:
    """Full Graver basis by conformal completion of a lattice kernel basis.

    Candidates are processed in increasing L1 order, which makes the run
    deterministic.  On budget exhaustion a :class:`BudgetExhaustedError`
    carrying the partial set is raised, never a silent truncation.
    """
    basis = integer_kernel_basis(cfg.array)
    if not basis:
        return MoveSet.build([], "graver", cfg)

    G: list[tuple[int, ...]] = []
    Gset: set[tuple[int, ...]] = set()

    def norm_form(s):
        changed = True
        while changed and any(s):
            changed = False
            for g in G:
                if _conformal_leq(g, s):
                    s = tuple(a - b for a, b in zip(s, g))
                    changed = True
                    break
                ng = tuple(-x for x in g)
                if _conformal_leq(ng, s):
                    s = tuple(a - b for a, b in zip(s, ng))
                    changed = True
                    break
        return s

    heap: list = []
    counter = itertools.count()

    def push(v):
        heapq.heappush(heap, (sum(abs(x) for x in v), next(counter), v))

    for b in basis:
        push(b)
    pops = 0
    while heap:
        pops += 1
        if pops > max_candidates:
            raise BudgetExhaustedError(_finalize_graver(G, cfg))
        _, _, s = heapq.heappop(heap)
        s = norm_form(s)
        if not any(s):
            continue
        if s in Gset or tuple(-x for x in s) in Gset:
            continue
        for g in G:
            for h in (g, tuple(-x for x in g)):
                v = tuple(a + b for a, b in zip(s, h))
                if any(v):
                    push(v)
        G.append(s)
        Gset.add(s)

    result = _finalize_graver(G, cfg)
    sample = result.moves[:verify_sample] if verify_sample else ()
    for z in sample:
        if not is_primitive(cfg, z):
            raise NotAMoveError(f"completion produced non-primitive vector {z.vec}")
    return result


def _finalize_graver(G, cfg) -> MoveSet:
    # drop vectors conformally reducible by another member
    keep = []
    for i, g in enumerate(G):
        reducible = False
        for j, h in enumerate(G):
            if i == j:
                continue
            if _conformal_leq(h, g) or _conformal_leq(tuple(-x for x in h), g):
                reducible = True
                break
        if not reducible:
            keep.append(Move.canonical(g))
    return MoveSet.build(keep, "graver", cfg)


def is_primitive(cfg: Configuration, z: Move) -> bool:
    """Brute-force primitivity: no proper nonzero move fits conformally inside z."""
    if not cfg.is_move(z):
        raise NotAMoveError("is_primitive requires a move")
    supp = z.support
    if not supp:
        return False
    A = cfg.array
    ranges = []
    for k in supp:
        v = z.vec[k]
        ranges.append(range(0, v + 1) if v > 0 else range(v, 1))
    cols = A[:, supp]
    full = tuple(z.vec[k] for k in supp)
    for assign in itertools.product(*ranges):
        if not any(assign) or assign == full:
            continue
        if not (cols @ np.array(assign, dtype=np.int64)).any():
            return False
    return True


def square_free_graver(
    cfg: Configuration,
    max_degree: int,
    min_degree: int = 1,
) -> MoveSet:
    """All square-free primitive moves of degree ``min_degree..max_degree``.

    A degree-d square-free move is an unordered pair of disjoint weight-d
    zero-one tables in the same fiber; it is primitive iff no pair of
    proper support subsets shares a sufficient statistic.  Enumeration
    groups the weight-d tables by fiber and screens the disjoint pairs,
    which is exact and independent of the completion route.  Degree-1
    members (differences of cells with identical statistic columns) exist
    only when the configuration has duplicate columns.

    Requires a homogeneous configuration (positive and negative parts of
    every move then have equal weight, so the pairing is exhaustive).
    """
    if cfg.homogeneity_witness is None:
        raise NotAMoveError("square_free_graver requires a homogeneous configuration")
    A = cfg.array
    nr, n = A.shape
    found: list[Move] = []
    for d in range(min_degree, max_degree + 1):
        combos = np.fromiter(
            itertools.chain.from_iterable(itertools.combinations(range(n), d)),
            dtype=np.int64,
        ).reshape(-1, d)
        if len(combos) == 0:
            continue
        T = A[:, combos].sum(axis=2)  # (nr, N)
        base = int(T.max(initial=0)) + 2
        pw = base ** np.arange(nr, dtype=np.int64)
        if nr * np.log(base) > 62 * np.log(2):
            pw = pw.astype(object)
        codes = pw @ T
        order = np.argsort(codes, kind="stable")
        codes_s = codes[order]
        bounds = np.flatnonzero(codes_s[1:] != codes_s[:-1]) + 1
        groups = [g for g in np.split(order, bounds) if len(g) >= 2]
        if not groups:
            continue
        subset_pats = [
            list(pat)
            for k in range(1, d)
            for pat in itertools.combinations(range(d), k)
        ]
        idx_multi = np.concatenate(groups)
        pos = {int(i): k for k, i in enumerate(idx_multi)}
        cm = combos[idx_multi]
        # codes of the sufficient statistics of all proper support subsets,
        # vectorised per subset pattern; only fiber-mates need them
        K = np.empty((len(idx_multi), len(subset_pats)), dtype=codes.dtype)
        for col, pat in enumerate(subset_pats):
            K[:, col] = pw @ A[:, cm[:, pat]].sum(axis=2)
        for g in groups:
            rows = [pos[int(i)] for i in g]
            gc = [combos[i] for i in g]
            gm = []
            for row in gc:
                m = 0
                for c in row:
                    m |= 1 << int(c)
                gm.append(m)
            keys = [set(map(int, K[r])) for r in rows]
            m = len(g)
            for a in range(m):
                ma, ka = gm[a], keys[a]
                rowa = gc[a]
                for b in range(a + 1, m):
                    if ma & gm[b]:
                        continue
                    if ka.isdisjoint(keys[b]):
                        found.append(Move.from_cells(n, rowa, gc[b]))
    return MoveSet.build(found, "square-free", cfg)


def prune_by_one_cancellation(b0: MoveSet) -> MoveSet:
    """Drop members that are one-sign-cancellation sums of two other members.

    Greedy pass in canonical order, iterated to a fixed point; the result
    is deterministic but not claimed minimal.
    """
    current = {z.vec for z in b0.moves}
    changed = True
    while changed:
        changed = False
        ordered = sorted(current, key=lambda v: (sum(abs(x) for x in v), v))
        for va, vb in itertools.combinations(ordered, 2):
            if va not in current or vb not in current:
                continue
            for sb in (vb, tuple(-x for x in vb)):
                cancels = sum(1 for x, y in zip(va, sb) if x * y == -1)
                if cancels != 1:
                    continue
                s = Move.canonical(tuple(x + y for x, y in zip(va, sb))).vec
                if s in current and s != va and s != vb and s != tuple(-x for x in vb):
                    current.remove(s)
                    changed = True
    keep = [z for z in b0.moves if z.vec in current]
    return MoveSet.build(keep, "pruned-survivor", b0.source_config)
