"""Composite n with z(nQ) prime, plus primitive-divisor misses, up to nmax.

    python scripts/lemma_stabilization.py --nmax 300
"""

import argparse
import time

from _common import load_basis
from ecdenom.census import full_report


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--curves", nargs="+", default=["37a1", "congruent5", "x3p17"])
    ap.add_argument("--nmax", type=int, default=200)
    args = ap.parse_args()

    for name in args.curves:
        ci, basis = load_basis(name)
        for i, Q in enumerate(basis.free_generators):
            t0 = time.perf_counter()
            rep = full_report(basis.curve, Q, args.nmax)
            dt = time.perf_counter() - t0
            print(f"{ci.label} generator {i} ({Q.x}, {Q.y}), n <= {args.nmax}, {dt:.1f}s")
            print(f"  divisibility failures : {rep.divisibility_failures}")
            print(f"  composite n, prime z  : {[(n, str(z)) for n, z in rep.primality_exceptions]}")
            print(f"  no primitive divisor  : {rep.primitive_divisor_misses}")


if __name__ == "__main__":
    main()
