"""Zero-one fiber enumeration, connectivity and distance-reduction checks."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .cells import Move, Table
from .errors import (
    CapExceededError,
    MixedFiberError,
    NoDecompositionError,
    ZeroOneError,
)
from .graver import MoveSet, _conformal_leq
from .models import Configuration, FiberKey

DEFAULT_CAP = 5_000_000


def enumerate_zero_one_fiber(
    cfg: Configuration, t: FiberKey, cap: int = DEFAULT_CAP
) -> list[Table]:
    """All zero-one solutions of ``A x = t`` in canonical cell order.

    Depth-first assignment, branching 0 before 1, pruning on negative
    residuals and on residuals exceeding the remaining column mass.
    Infeasible keys yield an empty list; exceeding ``cap`` raises.
    """
    A = cfg.matrix
    nr, n = cfg.n_rows, cfg.n_cells
    t = tuple(int(v) for v in t)
    if len(t) != nr:
        raise MixedFiberError(f"key length {len(t)} != {nr} rows")
    # suffix[p][r]: total mass of row r over cells p..n-1
    suffix = [[0] * nr for _ in range(n + 1)]
    for p in range(n - 1, -1, -1):
        for r in range(nr):
            suffix[p][r] = suffix[p + 1][r] + A[r][p]

    out: list[Table] = []
    x = [0] * n
    resid = list(t)

    def rec(p: int):
        if p == n:
            if all(v == 0 for v in resid):
                if len(out) >= cap:
                    raise CapExceededError(cap)
                out.append(Table(tuple(x)))
            return
        nxt = suffix[p + 1]
        # branch 0
        if all(0 <= resid[r] <= nxt[r] for r in range(nr)):
            rec(p + 1)
        # branch 1
        ok = True
        for r in range(nr):
            resid[r] -= A[r][p]
            if not 0 <= resid[r] <= nxt[r]:
                ok = False
        if ok:
            x[p] = 1
            rec(p + 1)
            x[p] = 0
        for r in range(nr):
            resid[r] += A[r][p]

    rec(0)
    return out


def _fiber_matrix(fiber) -> np.ndarray:
    return np.array([x.values for x in fiber], dtype=np.int8)


def _check_single_key(cfg: Configuration | None, fiber) -> None:
    if cfg is None or not fiber:
        return
    key = cfg.sufficient_stat(fiber[0])
    for x in fiber[1:]:
        if cfg.sufficient_stat(x) != key:
            raise MixedFiberError("fiber members have differing sufficient statistics")


@dataclass(frozen=True)
class FiberGraph:
    """Zero-one fiber members as nodes, applicable-move edges, components."""

    nodes: tuple[Table, ...]
    edges: tuple[tuple[int, int, Move], ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def connected(self) -> bool:
        return len(self.components) <= 1


def build_fiber_graph(fiber, b: MoveSet) -> FiberGraph:
    """Graph with an edge (x, y) iff y - x is (plus or minus) a move of ``b``."""
    _check_single_key(b.source_config, fiber)
    nodes = tuple(fiber)
    index = {x.values: i for i, x in enumerate(nodes)}
    edges = []
    seen = set()
    for i, x in enumerate(nodes):
        for z in b.moves:
            y = tuple(a + v for a, v in zip(x.values, z.vec))
            j = index.get(y)
            if j is None or j == i:
                continue
            key = (min(i, j), max(i, j))
            if key not in seen:
                seen.add(key)
                edges.append((key[0], key[1], z))
    # breadth-first components
    adj: dict[int, list[int]] = {i: [] for i in range(len(nodes))}
    for i, j, _ in edges:
        adj[i].append(j)
        adj[j].append(i)
    unvisited = set(range(len(nodes)))
    comps = []
    while unvisited:
        root = min(unvisited)
        queue = [root]
        unvisited.discard(root)
        comp = []
        while queue:
            u = queue.pop(0)
            comp.append(u)
            for v in adj[u]:
                if v in unvisited:
                    unvisited.discard(v)
                    queue.append(v)
        comps.append(tuple(sorted(comp)))
    return FiberGraph(nodes, tuple(edges), tuple(comps))


def _neighbor_lists(M: np.ndarray, b: MoveSet) -> list[list[int]]:
    """For each node, indices of in-fiber states reachable by one signed move."""
    m, n = M.shape
    index = {tuple(int(v) for v in row): i for i, row in enumerate(M)}
    nbrs: list[set[int]] = [set() for _ in range(m)]
    for z in b.moves:
        for sgn in (1, -1):
            vec = np.array(z.vec, dtype=np.int8) * sgn
            plus = np.flatnonzero(vec > 0)
            minus = np.flatnonzero(vec < 0)
            ok = np.ones(m, dtype=bool)
            if len(plus):
                ok &= (M[:, plus] == 0).all(axis=1)
            if len(minus):
                ok &= (M[:, minus] == 1).all(axis=1)
            for i in np.flatnonzero(ok):
                y = tuple(int(v) for v in (M[i] + vec))
                j = index.get(y)
                if j is not None and j != i:
                    nbrs[i].add(j)
    return [sorted(s) for s in nbrs]


def check_distance_reducing(b: MoveSet, fiber, strong: bool = False):
    """Verify the (strong) distance-reduction property over a complete fiber.

    Returns ``(True, None)`` or ``(False, (x, y))`` with the first failing
    pair in node order.
    """
    _check_single_key(b.source_config, fiber)
    m = len(fiber)
    if m <= 1:
        return True, None
    M = _fiber_matrix(fiber)
    nbrs = _neighbor_lists(M, b)
    D = (M[:, None, :] != M[None, :, :]).sum(axis=2)
    # reduce[i, j]: some applicable move takes node i strictly closer to node j
    reduce_ok = np.zeros((m, m), dtype=bool)
    for i in range(m):
        if nbrs[i]:
            reduce_ok[i] = (D[nbrs[i], :].min(axis=0) < D[i, :])
    for i in range(m):
        for j in range(i + 1, m):
            if strong:
                ok = reduce_ok[i, j] and reduce_ok[j, i]
            else:
                ok = reduce_ok[i, j] or reduce_ok[j, i]
            if not ok:
                return False, (fiber[i], fiber[j])
    return True, None


@dataclass(frozen=True)
class CrossingReport:
    """Witness (or absence) of a crossing pattern between two tables."""

    condition: str
    witness: tuple[tuple[int, int, int, int], int] | None

    @property
    def found(self) -> bool:
        return self.witness is not None


def _column_codes(cfg: Configuration) -> list[int]:
    A = cfg.matrix
    bound = max(max(abs(v) for v in row) for row in A) * 4 + 1
    codes = []
    for c in range(cfg.n_cells):
        code = 0
        for r in range(cfg.n_rows):
            code = code * bound + A[r][c]
        codes.append(code)
    return codes


def _crossing_search(x: Table, y: Table, cfg: Configuration, weak: bool) -> CrossingReport:
    if x.values == y.values:
        raise ZeroOneError("crossing patterns are defined for distinct tables")
    cond = "weak" if weak else "strong"
    col = _column_codes(cfg)
    n = cfg.n_cells
    for direction, (u, v) in ((1, (x, y)), (-1, (y, x))):
        gt = [i for i in range(n) if u[i] > v[i]]
        lt = [i for i in range(n) if u[i] < v[i]]
        if weak:
            fourth = list(range(n))
        else:
            fourth = [i for i in range(n) if u[i] <= v[i]]
        for a in range(len(gt)):
            for bidx in range(a + 1, len(gt)):
                i1, i2 = gt[a], gt[bidx]
                lhs = col[i1] + col[i2]
                for i3 in lt:
                    for i4 in fourth:
                        if i4 in (i1, i2, i3):
                            continue
                        if col[i3] + col[i4] == lhs:
                            return CrossingReport(cond, ((i1, i2, i3, i4), direction))
    return CrossingReport(cond, None)


def check_strong_crossing(x: Table, y: Table, cfg: Configuration) -> CrossingReport:
    """Condition: distinct cells with x>y, x>y, x<y, x<=y (or the mirror),
    such that swapping along them is a move."""
    return _crossing_search(x, y, cfg, weak=False)


def check_weak_crossing(x: Table, y: Table, cfg: Configuration) -> CrossingReport:
    return _crossing_search(x, y, cfg, weak=True)


def check_generalized_crossing(b: MoveSet, b0: MoveSet):
    """Every member of ``b0`` outside ``b`` must admit a crossing member of ``b``.

    Pattern: a square-free z' in ``b`` whose negative support sits inside
    supp(z+), whose positive support sits inside supp(z-) except possibly
    one designated cell where z <= 0 (or the sign-swapped version).
    Returns ``(True, None)`` or ``(False, first_uncovered_move)``.
    """
    bvecs = {z.vec for z in b.moves}
    b0vecs = {z.vec for z in b0.moves}
    if not bvecs <= b0vecs:
        raise ZeroOneError("b must be a subset of b0")
    for z in b0.moves:
        if z.vec in bvecs:
            continue
        if not _has_crossing_member(z, b):
            return False, z
    return True, None


def _has_crossing_member(z: Move, b: MoveSet) -> bool:
    for zp in b.moves:
        if not zp.square_free:
            continue
        for sgn in (1, -1):
            pos = [k for k, v in zp.entries.items() if v * sgn > 0]
            neg = [k for k, v in zp.entries.items() if v * sgn < 0]
            if any(z.vec[k] <= 0 for k in neg):
                continue
            if any(z.vec[k] > 0 for k in pos):
                continue
            strict = sum(1 for k in pos if z.vec[k] < 0)
            if strict >= len(pos) - 1:
                return True
    return False


def conformal_decompose(x: Table, y: Table, b0: MoveSet) -> list[Move]:
    """Signed members of ``b0`` summing to ``y - x`` with no sign cancellation.

    Depth-first over conformal members in canonical order; raises
    :class:`NoDecompositionError` when ``b0`` cannot express the difference.
    """
    if b0.source_config is not None:
        cfg = b0.source_config
        if cfg.sufficient_stat(x) != cfg.sufficient_stat(y):
            raise MixedFiberError("tables are not in the same fiber")
    diff = tuple(b - a for a, b in zip(x.values, y.values))

    def rec(d, acc):
        if not any(d):
            return list(acc)
        for z in b0.moves:
            for sgn in (1, -1):
                v = z.vec if sgn > 0 else tuple(-w for w in z.vec)
                if _conformal_leq(v, d):
                    res = rec(tuple(a - bb for a, bb in zip(d, v)), acc + [Move(v)])
                    if res is not None:
                        return res
        return None

    result = rec(diff, [])
    if result is None:
        raise NoDecompositionError("difference is not a conformal sum over the given set")
    return result


@dataclass(frozen=True)
class SweepReport:
    """Connectivity summary of all zero-one tables of a configuration."""

    n_tables: int
    n_fibers: int
    n_components: int

    @property
    def all_connected(self) -> bool:
        return self.n_components == self.n_fibers


def sweep_connectivity(cfg: Configuration, b: MoveSet, max_cells: int = 24) -> SweepReport:
    """Partition all 2^n zero-one tables by key and count move components.

    Vectorised union over the whole sweep: moves preserve the key, so
    every fiber is connected iff the global component count equals the
    number of distinct keys.
    """
    n = cfg.n_cells
    if n > max_cells:
        raise CapExceededError(1 << max_cells, f"sweep over 2^{n} tables refused")
    A = cfg.array
    N = 1 << n
    arr = np.arange(N, dtype=np.int64)
    row_sums = A.sum(axis=1)
    base = int(row_sums.max(initial=0)) + 1
    pw = base ** np.arange(cfg.n_rows, dtype=np.int64)
    if cfg.n_rows * np.log(max(base, 2)) > 62 * np.log(2):
        raise CapExceededError(N, "key encoding overflows; reduce the model")
    wcol = A.T @ pw  # code is linear in the table bits
    codes = np.zeros(N, dtype=np.int64)
    for k in range(n):
        codes += ((arr >> k) & 1) * int(wcol[k])
    n_fibers = len(np.unique(codes))
    srcs, dsts = [], []
    for z in b.moves:
        if not z.square_free:
            continue  # cannot apply to a zero-one table without leaving {0,1}
        p, mmask = z.masks
        app = ((arr & p) == 0) & ((arr & mmask) == mmask)
        src = arr[app]
        srcs.append(src)
        dsts.append(src ^ (p | mmask))
    if srcs:
        src = np.concatenate(srcs)
        dst = np.concatenate(dsts)
        g = coo_matrix(
            (np.ones(len(src), dtype=np.int8), (src, dst)), shape=(N, N)
        )
        n_comp = connected_components(g, directed=False)[0]
    else:
        n_comp = N
    return SweepReport(N, n_fibers, int(n_comp))
