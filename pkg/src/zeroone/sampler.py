"""Seeded random walks over zero-one fibers.

Proposals draw a move and a sign uniformly; invalid proposals are
rejected (the chain stays put), which keeps the kernel symmetric and the
stationary distribution uniform on the reachable component.  All
randomness comes from ``numpy.random.Generator(PCG64(seed))``, a named
portable generator with identical streams across platforms.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cells import Move, Table
from .errors import IpfError, ZeroOneError
from .fiber import enumerate_zero_one_fiber
from .graver import MoveSet
from .models import Configuration, build_ntfi
from .movegen import basic_moves_two_way, degree8_moves_4x4, ntfi_333_family

_CHUNK = 1 << 16


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _masks(b: MoveSet):
    out = []
    for z in b.moves:
        if not z.square_free:
            continue  # never applicable to a zero-one table
        out.append(z.masks)
    return out


def _to_mask(x: Table) -> int:
    m = 0
    for k, v in enumerate(x.values):
        if v:
            m |= 1 << k
    return m


def _from_mask(m: int, n: int) -> Table:
    return Table(tuple((m >> k) & 1 for k in range(n)))


def random_walk(
    cfg: Configuration,
    x0: Table,
    b: MoveSet,
    steps: int,
    seed: int,
):
    """Trajectory of ``steps + 1`` states (including the start).

    Returns ``(states, acceptance_rate)`` where states are Tables.
    """
    masks, traj, accepted = _walk_masks(cfg, x0, b, steps, seed)
    n = cfg.n_cells
    states = [_from_mask(m, n) for m in traj]
    rate = accepted / steps if steps else 0.0
    return states, rate


def _walk_masks(cfg, x0, b, steps, seed):
    x0.check_length(cfg.cell_space)
    if not x0.zero_one:
        raise ZeroOneError("start table must be zero-one")
    moves = _masks(b)
    if not moves:
        raise ZeroOneError("empty move set")
    rng = _rng(seed)
    x = _to_mask(x0)
    traj = [x]
    accepted = 0
    done = 0
    while done < steps:
        k = min(_CHUNK, steps - done)
        idx = rng.integers(0, len(moves), size=k)
        sgn = rng.integers(0, 2, size=k)
        for i in range(k):
            p, m = moves[idx[i]]
            if sgn[i]:
                p, m = m, p
            if (x & p) == 0 and (x & m) == m:
                x ^= p | m
                accepted += 1
            traj.append(x)
        done += k
    return moves, traj, accepted


@dataclass(frozen=True)
class SampleRun:
    """Result of one seeded exact-test run."""

    seed: int
    steps: int
    burn_in: int
    thinning: int
    trajectory_stats: tuple[float, ...]
    acceptance_rate: float
    p_value_estimate: float
    observed_stat: float
    final_state: Table


def ipf_fit(cfg: Configuration, t, tol: float = 1e-10, max_cycles: int = 10_000):
    """Expected cell counts by iterative proportional fitting of the key.

    Requires a 0/1 constraint matrix (marginal-sum rows); raises
    :class:`IpfError` otherwise or on non-convergence.
    """
    A = cfg.array
    if not np.isin(A, (0, 1)).all():
        raise IpfError("IPF needs indicator (0/1) statistic rows")
    t = np.asarray(t, dtype=float)
    m = np.ones(cfg.n_cells, dtype=float)
    supports = [np.flatnonzero(A[r]) for r in range(cfg.n_rows)]
    for _ in range(max_cycles):
        delta = 0.0
        for r, supp in enumerate(supports):
            cur = m[supp].sum()
            if t[r] == 0:
                if cur > 0:
                    m[supp] = 0.0
                    delta = max(delta, 1.0)
                continue
            if cur == 0:
                raise IpfError("key is infeasible for IPF (zero mass on a positive row)")
            f = t[r] / cur
            m[supp] *= f
            delta = max(delta, abs(f - 1.0))
        if delta < tol:
            return m
    raise IpfError(f"IPF did not converge within {max_cycles} cycles")


def chi_square_stat(cfg: Configuration, expected: np.ndarray):
    """Statistic function: Pearson chi-square against fixed expected counts."""

    def stat(values) -> float:
        s = 0.0
        for x, e in zip(values, expected):
            if e > 0:
                s += (x - e) ** 2 / e
            elif x:
                return float("inf")
        return s

    return stat


def resolve_statistic(cfg: Configuration, spec, t=None):
    """Build a statistic callable from a spec.

    ``("linear", weights)`` gives a weighted cell sum; ``"chi2-ipf"``
    fits expected counts to the key ``t`` by IPF first.  Neither choice
    is canonical for these models; both are pragmatic defaults.
    """
    if isinstance(spec, tuple) and spec and spec[0] == "linear":
        weights = tuple(float(w) for w in spec[1])
        if len(weights) != cfg.n_cells:
            raise ZeroOneError("linear statistic weights length mismatch")
        return lambda values: float(sum(w * v for w, v in zip(weights, values)))
    if spec == "chi2-ipf":
        if t is None:
            raise ZeroOneError("chi2-ipf needs the fiber key")
        return chi_square_stat(cfg, ipf_fit(cfg, t))
    raise ZeroOneError(f"unknown statistic spec {spec!r}")


def exact_test(
    cfg: Configuration,
    x_obs: Table,
    b: MoveSet,
    statistic,
    steps: int,
    burn_in: int | None = None,
    thinning: int = 1,
    seed: int = 0,
) -> SampleRun:
    """Monte Carlo conditional test with the conservative +1 p-value.

    ``statistic`` is ``"chi2-ipf"``, ``("linear", weights)`` or any
    callable on cell-value tuples.  Large statistics are extreme.
    """
    if burn_in is None:
        burn_in = 10 * cfg.n_cells
    t = cfg.sufficient_stat(x_obs)
    if callable(statistic):
        stat = statistic
    else:
        stat = resolve_statistic(cfg, statistic, t)
    _, traj, accepted = _walk_masks(cfg, x_obs, b, burn_in + steps, seed)
    n = cfg.n_cells
    obs = stat(x_obs.values)
    samples = []
    for pos in range(burn_in + 1, len(traj), thinning):
        samples.append(stat(_from_mask(traj[pos], n).values))
    exceed = sum(1 for s in samples if s >= obs)
    p = (1 + exceed) / (1 + len(samples))
    total = burn_in + steps
    return SampleRun(
        seed=seed,
        steps=steps,
        burn_in=burn_in,
        thinning=thinning,
        trajectory_stats=tuple(samples),
        acceptance_rate=accepted / total if total else 0.0,
        p_value_estimate=p,
        observed_stat=obs,
        final_state=_from_mask(traj[-1], n),
    )


def latin_fiber_key(n: int):
    """All line sums equal to one for the n x n x n NTFI configuration."""
    return tuple(1 for _ in range(3 * n * n))


def latin_start_table(n: int) -> Table:
    """Orthogonal-array form of the cyclic Latin square (symbol = row+col mod n)."""
    space = build_ntfi(n).cell_space
    vals = [0] * space.cell_count
    for i in range(n):
        for j in range(n):
            vals[space.linear_index((i, j, (i + j) % n))] = 1
    return Table(tuple(vals))


def latin_move_set(n: int) -> MoveSet:
    """The connecting family: degree-6 orbit for n=3, basic + degree-8 for n=4."""
    if n == 3:
        return ntfi_333_family("deg6")
    if n == 4:
        basics = ntfi_basic_moves(4)
        return basics.union(degree8_moves_4x4())
    raise ZeroOneError(f"unsupported Latin-square size {n}")


def ntfi_basic_moves(n: int) -> MoveSet:
    """Degree-4 swap moves of the n x n x n NTFI model (2x2x2 sign patterns)."""
    import itertools

    space = build_ntfi(n).cell_space
    moves = []
    for i1, i2 in itertools.combinations(range(n), 2):
        for j1, j2 in itertools.combinations(range(n), 2):
            for k1, k2 in itertools.combinations(range(n), 2):
                vec = [0] * space.cell_count
                for (i, j), s in (
                    ((i1, j1), 1),
                    ((i1, j2), -1),
                    ((i2, j1), -1),
                    ((i2, j2), 1),
                ):
                    vec[space.linear_index((i, j, k1))] += s
                    vec[space.linear_index((i, j, k2))] -= s
                moves.append(Move.canonical(vec))
    return MoveSet.build(moves, "basic")


def sample_latin_square(n: int, steps: int, seed: int):
    """Random walk over the all-line-sums-one fiber; returns the final state.

    The result is ``(table, symbols)`` where ``symbols`` is the n x n
    symbol matrix (entries 1..n).
    """
    if n not in (3, 4):
        raise ZeroOneError(f"unsupported Latin-square size {n}")
    cfg = build_ntfi(n)
    b = latin_move_set(n)
    states, _rate = random_walk(cfg, latin_start_table(n), b, steps, seed)
    final = states[-1]
    return final, latin_symbols(final, n)


def latin_symbols(x: Table, n: int):
    """Symbol-matrix rendering of an orthogonal-array zero-one table."""
    space = build_ntfi(n).cell_space
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            syms = [k for k in range(n) if x[space.linear_index((i, j, k))]]
            if len(syms) != 1:
                raise ZeroOneError("table is not in orthogonal-array Latin form")
            out[i][j] = syms[0] + 1
    return out
