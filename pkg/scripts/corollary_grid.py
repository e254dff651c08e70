"""Prime-denominator ratio against 1/log log Z on rank-1 curves, with and without torsion.

    python scripts/corollary_grid.py --max-exp 200
"""

import argparse

from _common import load_basis
from ecdenom.census import corollary_ratio, run_census


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--curves", nargs="+", default=["37a1", "congruent5"])
    ap.add_argument("--max-exp", type=int, default=200, help="largest Z is 10**max_exp")
    ap.add_argument("--step", type=int, default=20)
    args = ap.parse_args()

    for name in args.curves:
        ci, basis = load_basis(name)
        full = run_census(basis, 10**args.max_exp)
        print(f"\n{ci.label}  torsion {basis.torsion.describe()}  rank {basis.rank}")
        print(f"{'log10 Z':>8} {'total':>6} {'prime':>6} {'ratio':>8} {'1/loglogZ':>10} {'ratio*loglogZ':>14}")
        for e in range(args.step, args.max_exp + 1, args.step):
            res = full.restrict(10**e)
            ratio, bound = corollary_ratio(res)
            print(f"{e:>8} {res.total_count:>6} {res.prime_count:>6} {ratio:>8.4f} {bound:>10.4f} {ratio / bound:>14.4f}")
        per = full.per_coset()
        if len(per) > 1:
            print("per torsion coset (total, prime):", per)


if __name__ == "__main__":
    main()
