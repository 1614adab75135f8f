#!/usr/bin/env python3
"""Print the degree histograms of the square-free primitive move sets of
small three-way complete-independence models.

Each row enumerates the full set one degree past the last populated
degree, so absence at the top is verified rather than assumed.

Usage:
    python3 scripts/degree_tables.py [--include-235]
"""
import argparse
import time

from zeroone.graver import degree_histogram, square_free_graver
from zeroone.models import build_complete_independence

ROWS = [
    ((2, 2, 2), 3),
    ((2, 2, 3), 4),
    ((2, 2, 4), 5),
    ((2, 2, 5), 5),
    ((2, 3, 3), 5),
    ((2, 3, 4), 6),
    ((3, 3, 3), 6),
]
LONG_ROWS = [((2, 3, 5), 7)]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--include-235", action="store_true",
                    help="also enumerate the 2x3x5 model (slow)")
    args = ap.parse_args()
    rows = ROWS + (LONG_ROWS if args.include_235 else [])
    print(f"{'model':>10}  {'total':>6}  histogram")
    for dims, max_degree in rows:
        t0 = time.time()
        b0 = square_free_graver(build_complete_independence(dims), max_degree)
        hist = degree_histogram(b0)
        label = "x".join(str(d) for d in dims)
        body = ", ".join(f"{d}: {c}" for d, c in hist.items())
        print(f"{label:>10}  {len(b0):>6}  {{{body}}}  ({time.time() - t0:.1f}s)")


if __name__ == "__main__":
    main()
