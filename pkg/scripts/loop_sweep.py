"""Sweep degrees of a loop algebra and print derivation/centroid dimensions with check results.

    python3 scripts/loop_sweep.py --case a2-twisted --lo -4 --hi 4 --window 10
"""
import argparse
import time

from dkit.catalog import LOOP_CASES, catalog_get
from dkit.graded import verify_main_theorem_graded


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--case", default="a2-twisted", choices=sorted(LOOP_CASES))
    ap.add_argument("--lo", type=int, default=-4)
    ap.add_argument("--hi", type=int, default=4)
    ap.add_argument("--window", type=int, default=10)
    ap.add_argument("--parallel", action="store_true")
    args = ap.parse_args()

    base, aut, m = LOOP_CASES[args.case]
    t0 = time.time()
    res = verify_main_theorem_graded(catalog_get(base), aut, m, range(args.lo, args.hi + 1), args.window,
                                     parallel=args.parallel)
    print(f"{'delta':>5} {'dim B':>6} {'Der':>5} {'pred':>5} {'Cent':>5} {'H1':>4}  status")
    for r in res.results:
        print(f"{r.delta:>5} {r.dim_component:>6} {str(r.der.dim):>5} {str(r.der.predicted):>5} "
              f"{str(r.cent.dim):>5} {str(r.h1):>4}  {r.status}")
    failed = sorted({k for r in res.results for k, v in r.checks.items() if not v})
    print(f"overall: {res.status}  ({time.time() - t0:.1f}s)")
    if failed:
        print("failed checks:", ", ".join(failed))


if __name__ == "__main__":
    main()
