"""Observed prime-denominator counts against the rank-dependent heuristic.

For each curve the census is run once at the largest cap and restricted to a
grid of smaller caps. The last columns show the observed count divided by the
heuristic shape (constant, log log Z, or (log Z)^(r/2-1)) and the naive
expectation sum 1/log z.

    python scripts/rank_vs_heuristic.py --max-exp 40
"""

import argparse

from _common import load_basis
from ecdenom.census import heuristic_count, run_census


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--curves", nargs="+", default=["37a1", "x3p17", "5077a1"])
    ap.add_argument("--max-exp", type=int, default=30)
    ap.add_argument("--step", type=int, default=5)
    args = ap.parse_args()

    for name in args.curves:
        ci, basis = load_basis(name)
        full = run_census(basis, 10**args.max_exp)
        print(f"\n{ci.label}: rank {basis.rank}, torsion {basis.torsion.describe()}, "
              f"shells visited {full.shells_visited}")
        print(f"{'log10 Z':>8} {'total':>7} {'prime':>6} {'sum 1/log z':>12} {'regime':>8} {'prime/shape':>12}")
        for e in range(args.step, args.max_exp + 1, args.step):
            res = full.restrict(10**e)
            pred = heuristic_count(basis.rank, 10**e)
            print(f"{e:>8} {res.total_count:>7} {res.prime_count:>6} {res.expected_prime_mass():>12.2f} "
                  f"{pred.regime:>8} {res.prime_count / pred.value:>12.2f}")


if __name__ == "__main__":
    main()
