#!/usr/bin/env python3
"""Measure how often random tables pass the balance checks.

Runs independent seeded searches and reports the pass rate, the first
passing trial per seed, and wall time, optionally writing the first
table found.  Useful for picking trial budgets before committing to a
parameter point.

Example:
    python scripts/search_tables.py --n 3 --m 1 --S 4 --shift-bound 2 \
        --trials 2000 --seeds 5
"""

import argparse
import time

from kextract import btable


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--m", type=int, required=True)
    parser.add_argument("--S", type=int, required=True)
    parser.add_argument("--shift-bound", type=int, required=True)
    parser.add_argument("--trials", type=int, default=10**4)
    parser.add_argument("--seeds", type=int, default=3, help="number of seeded runs")
    parser.add_argument("--seed0", type=int, default=0, help="first seed")
    parser.add_argument("--out", help="write the first table found here")
    args = parser.parse_args()

    spec = btable.BalanceSpec(S=args.S, shift_bound=args.shift_bound)
    hits = 0
    written = False
    for seed in range(args.seed0, args.seed0 + args.seeds):
        start = time.monotonic()
        result = btable.search_table(
            args.n, args.m, spec, "random", trials=args.trials, seed=seed
        )
        elapsed = time.monotonic() - start
        if isinstance(result, btable.Table):
            hits += 1
            print(f"seed {seed}: HIT  {result.provenance} ({elapsed:.2f}s)")
            if args.out and not written:
                btable.write_table(result, args.out, {"seed": seed})
                print(f"  wrote {args.out}")
                written = True
        else:
            print(f"seed {seed}: MISS {result} ({elapsed:.2f}s)")
    print(f"{hits}/{args.seeds} seeds produced a table within {args.trials} trials")


if __name__ == "__main__":
    main()
