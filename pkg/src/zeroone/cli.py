"""Command-line front end.

Subcommands: ``graver``, ``connect``, ``check``, ``sample``, ``latin``.
Exit codes: 0 pass/connected, 1 fail/disconnected, 2 usage error,
3 budget or cap exhausted.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import fileio
from .cells import CellSpace, Table
from .errors import BudgetExhaustedError, CapExceededError, ZeroOneError
from .fiber import (
    build_fiber_graph,
    check_distance_reducing,
    check_generalized_crossing,
    check_weak_crossing,
    check_strong_crossing,
    enumerate_zero_one_fiber,
    sweep_connectivity,
)
from .graver import (
    MoveSet,
    degree_histogram,
    graver_basis,
    prune_by_one_cancellation,
    square_free_graver,
    square_free_subset,
)
from .models import (
    build_complete_independence,
    build_many_facet_rasch,
    build_ntfi,
    build_quasi_independence,
    build_two_way_independence,
    lawrence_lift,
)
from .movegen import (
    basic_moves_two_way,
    degree2_threeway_patterns,
    degree8_moves_4x4,
    df1_loops,
    loops_degree_r,
    ntfi_333_moves,
)
from .sampler import (
    exact_test,
    latin_symbols,
    ntfi_basic_moves,
    random_walk,
    resolve_statistic,
    sample_latin_square,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _parse_dims(s):
    try:
        dims = tuple(int(tok) for tok in s.split(","))
    except ValueError:
        raise ZeroOneError(f"bad dims {s!r}")
    if not dims:
        raise ZeroOneError("empty dims")
    return dims


def build_model(args):
    dims = _parse_dims(args.dims) if args.dims else None
    name = args.model
    if name == "two-way-indep":
        if dims is None or len(dims) != 2:
            raise ZeroOneError("two-way-indep needs --dims I,J")
        return build_two_way_independence(*dims)
    if name == "complete-indep":
        if dims is None:
            raise ZeroOneError("complete-indep needs --dims")
        return build_complete_independence(dims)
    if name == "quasi-indep":
        if dims is None or len(dims) != 2:
            raise ZeroOneError("quasi-indep needs --dims I,J")
        if not args.zeros:
            raise ZeroOneError("quasi-indep needs --zeros MASKFILE")
        zeros = fileio.read_mask(args.zeros)
        box = {(i, j) for i in range(dims[0]) for j in range(dims[1])}
        return build_quasi_independence(dims[0], dims[1], box - set(zeros))
    if name == "ntfi":
        n = dims[0] if dims else 3
        return build_ntfi(n)
    if name == "many-facet-rasch":
        if dims is None:
            raise ZeroOneError("many-facet-rasch needs --dims")
        return build_many_facet_rasch(dims, getattr(args, "constant_item_param", False))
    raise ZeroOneError(f"unknown model {name!r}")


def resolve_moves(spec: str, cfg, args) -> MoveSet:
    """Move-set source: a generated family name or a move file path."""
    if Path(spec).is_file():
        moves = fileio.read_moves(spec)
        return MoveSet.build(moves, "file", cfg, validate=True)
    dims = cfg.cell_space.dims
    if spec == "basic":
        if len(dims) == 2:
            ms = basic_moves_two_way(*dims)
        elif len(dims) == 3 and dims[0] == dims[1] == dims[2]:
            ms = ntfi_basic_moves(dims[0])
        else:
            raise ZeroOneError("no basic family for this model")
        return MoveSet(ms.moves, ms.provenance, cfg)
    if spec == "loops":
        out = basic_moves_two_way(*dims)
        for r in range(3, min(dims) + 1):
            out = out.union(loops_degree_r(dims[0], dims[1], r))
        return MoveSet(out.moves, out.provenance, cfg)
    if spec.startswith("loop-"):
        ms = loops_degree_r(dims[0], dims[1], int(spec.split("-")[1]))
        return MoveSet(ms.moves, ms.provenance, cfg)
    if spec == "df1":
        ms = df1_loops(cfg.cell_space)
        return MoveSet(ms.moves, ms.provenance, cfg)
    if spec == "deg2-patterns":
        return degree2_threeway_patterns(dims)
    if spec in ("deg6", "deg9", "basic+deg6", "basic+deg6+deg9", "deg6+deg9"):
        if dims != (3, 3, 3):
            raise ZeroOneError(f"family {spec!r} is specific to the 3x3x3 model")
        ms = ntfi_333_moves(spec)
        return MoveSet(ms.moves, ms.provenance, cfg)
    if spec == "deg8":
        if dims != (4, 4, 4):
            raise ZeroOneError("deg8 is specific to the 4x4x4 model")
        ms = degree8_moves_4x4()
        return MoveSet(ms.moves, ms.provenance, cfg)
    if spec == "basic+deg8":
        if dims != (4, 4, 4):
            raise ZeroOneError("basic+deg8 is specific to the 4x4x4 model")
        ms = ntfi_basic_moves(4).union(degree8_moves_4x4())
        return MoveSet(ms.moves, ms.provenance, cfg)
    if spec == "square-free-graver":
        if args.max_degree is None:
            raise ZeroOneError("square-free-graver needs --max-degree")
        return square_free_graver(cfg, args.max_degree)
    if spec == "graver":
        return graver_basis(cfg)
    raise ZeroOneError(f"unknown move family {spec!r}")


def _get_key(args, cfg):
    if args.t:
        return fileio.read_vector(args.t)
    if args.from_table:
        return cfg.sufficient_stat(fileio.read_table(args.from_table))
    raise ZeroOneError("need --t or --from-table")


def cmd_graver(args) -> int:
    cfg = build_model(args)
    if args.lawrence:
        cfg = lawrence_lift(cfg)
    if args.square_free and args.max_degree is not None:
        b = square_free_graver(cfg, args.max_degree)
    else:
        b = graver_basis(cfg, max_candidates=args.budget)
        if args.square_free:
            b = square_free_subset(b)
    if args.prune:
        b = prune_by_one_cancellation(b)
    hist = degree_histogram(b)
    print(f"moves: {len(b)}")
    for d, c in hist.items():
        print(f"degree {d}: {c}")
    if args.out:
        fileio.write_moves(args.out, b.moves)
        print(f"wrote {args.out}")
    return EXIT_PASS


def cmd_connect(args) -> int:
    cfg = build_model(args)
    b = resolve_moves(args.moves, cfg, args)
    t = _get_key(args, cfg)
    fiber = enumerate_zero_one_fiber(cfg, t, cap=args.cap)
    graph = build_fiber_graph(fiber, b)
    print(f"fiber size: {len(fiber)}")
    print(f"components: {graph.n_components}")
    for k, comp in enumerate(graph.components):
        rep = fiber[comp[0]]
        print(f"component {k} (size {len(comp)}): {' '.join(str(v) for v in rep.values)}")
    if args.out:
        fileio.write_matrix(args.out, [list(x.values) for x in fiber])
    return EXIT_PASS if graph.connected else EXIT_FAIL


def cmd_check(args) -> int:
    cfg = build_model(args)
    b = resolve_moves(args.moves, cfg, args)

    if args.condition == "generalized":
        md = args.max_degree
        if md is None:
            raise ZeroOneError("generalized check needs --max-degree for the reference set")
        b0 = square_free_graver(cfg, md)
        ok, cex = check_generalized_crossing(b, b0)
        if ok:
            print("generalized crossing: all covered")
            return EXIT_PASS
        print(f"uncovered move: {' '.join(str(v) for v in cex.vec)}")
        return EXIT_FAIL

    if args.sweep:
        if args.condition == "distance-reducing":
            report = None
            from itertools import product

            tables = {}
            for bits in product((0, 1), repeat=cfg.n_cells):
                tables.setdefault(cfg.sufficient_stat(Table(bits)), []).append(Table(bits))
            for key, fiber in sorted(tables.items()):
                ok, cex = check_distance_reducing(b, fiber, strong=args.strong)
                if not ok:
                    print(f"fails on key {key}")
                    return EXIT_FAIL
            print("distance reducing on every fiber")
            return EXIT_PASS
        if args.condition in ("strong", "weak"):
            checker = check_strong_crossing if args.condition == "strong" else check_weak_crossing
            from itertools import product

            tables = {}
            for bits in product((0, 1), repeat=cfg.n_cells):
                tables.setdefault(cfg.sufficient_stat(Table(bits)), []).append(Table(bits))
            for key, fiber in sorted(tables.items()):
                for a in range(len(fiber)):
                    for bb in range(a + 1, len(fiber)):
                        rep = checker(fiber[a], fiber[bb], cfg)
                        if not rep.found:
                            print(f"no {args.condition} crossing for a pair in key {key}")
                            return EXIT_FAIL
            print(f"{args.condition} crossing pattern exists for every pair")
            return EXIT_PASS
        raise ZeroOneError(f"--sweep does not apply to {args.condition}")

    t = _get_key(args, cfg)
    fiber = enumerate_zero_one_fiber(cfg, t, cap=args.cap)
    if args.condition == "distance-reducing":
        ok, cex = check_distance_reducing(b, fiber, strong=args.strong)
        if ok:
            print("distance reducing on this fiber")
            return EXIT_PASS
        x, y = cex
        print("counterexample pair:")
        print(" ".join(str(v) for v in x.values))
        print(" ".join(str(v) for v in y.values))
        return EXIT_FAIL
    checker = check_strong_crossing if args.condition == "strong" else check_weak_crossing
    for a in range(len(fiber)):
        for bb in range(a + 1, len(fiber)):
            rep = checker(fiber[a], fiber[bb], cfg)
            if not rep.found:
                print("pair without crossing pattern:")
                print(" ".join(str(v) for v in fiber[a].values))
                print(" ".join(str(v) for v in fiber[bb].values))
                return EXIT_FAIL
    print(f"{args.condition} crossing pattern exists for every pair")
    return EXIT_PASS


def _parse_stat(spec: str):
    if spec == "chi2-ipf":
        return "chi2-ipf"
    if spec.startswith("linear:"):
        return ("linear", [float(tok) for tok in spec.split(":", 1)[1].split(",")])
    raise ZeroOneError(f"unknown statistic {spec!r}")


def cmd_sample(args) -> int:
    cfg = build_model(args)
    b = resolve_moves(args.moves, cfg, args)
    x0 = fileio.read_table(args.start)
    stat = _parse_stat(args.stat)
    run = exact_test(
        cfg,
        x0,
        b,
        stat,
        steps=args.steps,
        burn_in=args.burn_in,
        thinning=args.thinning,
        seed=args.seed,
    )
    print(f"seed: {run.seed}")
    print(f"steps: {run.steps}  burn_in: {run.burn_in}  thinning: {run.thinning}")
    print(f"samples: {len(run.trajectory_stats)}")
    print(f"acceptance_rate: {run.acceptance_rate:.6f}")
    print(f"observed_stat: {run.observed_stat:.10g}")
    print(f"p_value: {run.p_value_estimate:.6f}")
    if args.trace:
        Path(args.trace).write_text(
            "".join(f"{s:.10g}\n" for s in run.trajectory_stats)
        )
        print(f"wrote {args.trace}")
    if args.verify_exact:
        t = cfg.sufficient_stat(x0)
        fiber = enumerate_zero_one_fiber(cfg, t, cap=args.cap)
        sf = resolve_statistic(cfg, stat, t)
        obs = sf(x0.values)
        exact_p = sum(1 for x in fiber if sf(x.values) >= obs) / len(fiber)
        n = len(run.trajectory_stats)
        se = (exact_p * (1 - exact_p) / n) ** 0.5
        diff = abs(run.p_value_estimate - exact_p)
        print(f"exact_p: {exact_p:.6f}  se: {se:.6f}  diff: {diff:.6f}")
        if diff > 3 * se + 2 / n:
            print("verify-exact: FAIL")
            return EXIT_FAIL
        print("verify-exact: ok")
    return EXIT_PASS


def cmd_latin(args) -> int:
    for k in range(args.count):
        table, symbols = sample_latin_square(args.n, args.steps, args.seed + k)
        for row in symbols:
            print(" ".join(str(v) for v in row))
        if args.zero_one:
            print("cells: " + " ".join(str(v) for v in table.values))
        if k + 1 < args.count:
            print()
    return EXIT_PASS


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="zeroone",
        description="Markov/Graver move sets, fiber connectivity and random walks "
        "for zero-one contingency tables",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    def add_model(sp):
        sp.add_argument("--model", required=True,
                        choices=["two-way-indep", "complete-indep", "quasi-indep",
                                 "ntfi", "many-facet-rasch"])
        sp.add_argument("--dims")
        sp.add_argument("--zeros", help="structural-zero mask file")
        sp.add_argument("--constant-item-param", action="store_true")

    g = sub.add_parser("graver", help="compute a Graver basis or its square-free part")
    add_model(g)
    g.add_argument("--square-free", action="store_true")
    g.add_argument("--prune", action="store_true")
    g.add_argument("--max-degree", type=int)
    g.add_argument("--lawrence", action="store_true")
    g.add_argument("--budget", type=int, default=2_000_000)
    g.add_argument("--out")
    g.set_defaults(fn=cmd_graver)

    c = sub.add_parser("connect", help="fiber connectivity under a move set")
    add_model(c)
    c.add_argument("--moves", required=True)
    c.add_argument("--t")
    c.add_argument("--from-table")
    c.add_argument("--cap", type=int, default=5_000_000)
    c.add_argument("--max-degree", type=int)
    c.add_argument("--out")
    c.set_defaults(fn=cmd_connect)

    k = sub.add_parser("check", help="crossing patterns and distance reduction")
    add_model(k)
    k.add_argument("--condition", required=True,
                   choices=["strong", "weak", "generalized", "distance-reducing"])
    k.add_argument("--moves", required=True)
    k.add_argument("--t")
    k.add_argument("--from-table")
    k.add_argument("--sweep", action="store_true")
    k.add_argument("--strong", action="store_true",
                   help="strong variant of distance reduction")
    k.add_argument("--cap", type=int, default=5_000_000)
    k.add_argument("--max-degree", type=int)
    k.set_defaults(fn=cmd_check)

    s = sub.add_parser("sample", help="random-walk exact test")
    add_model(s)
    s.add_argument("--moves", required=True)
    s.add_argument("--start", required=True)
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--stat", default="chi2-ipf")
    s.add_argument("--burn-in", type=int)
    s.add_argument("--thinning", type=int, default=1)
    s.add_argument("--trace")
    s.add_argument("--verify-exact", action="store_true")
    s.add_argument("--cap", type=int, default=5_000_000)
    s.add_argument("--max-degree", type=int)
    s.set_defaults(fn=cmd_sample)

    l = sub.add_parser("latin", help="sample random Latin squares")
    l.add_argument("n", type=int, choices=[3, 4])
    l.add_argument("--steps", type=int, default=1000)
    l.add_argument("--seed", type=int, required=True)
    l.add_argument("--count", type=int, default=1)
    l.add_argument("--zero-one", action="store_true",
                   help="also print the flat zero-one cell vector")
    l.set_defaults(fn=cmd_latin)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (BudgetExhaustedError, CapExceededError) as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ZeroOneError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
