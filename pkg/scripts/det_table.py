"""Closed-form determinants against the modular circulant oracle, one row per (p, q, class).

    python scripts/det_table.py --max-n 400 --primes 3
"""

import argparse
import time

from cyclodyne.ntcore import make_params, valid_pairs
from cyclodyne.verify import coprimality_audit, verify_det


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=250)
    ap.add_argument("--primes", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(f"{'p':>4} {'q':>4} {'N':>6} cls sign exact  gcd(det,2^N-1)  twin  secs")
    for p, q in valid_pairs(args.max_n):
        pr = make_params(p, q)
        for which in (1, 2):
            t0 = time.perf_counter()
            rep = verify_det(pr, which, trial_primes=args.primes, seed=args.seed, strict=False)
            audit = coprimality_audit(pr, which, strict=False)
            exact = "-" if rep.exact is None else ("ok" if rep.exact["ok"] else "BAD")
            sign = {1: "+", -1: "-", None: "MISMATCH"}[rep.sign]
            print(
                f"{p:>4} {q:>4} {pr.N:>6} {which:>3} {sign:>4} {exact:>5}  {audit.overall:>14}  "
                f"{'yes' if pr.is_twin else 'no':>4}  {time.perf_counter() - t0:.2f}"
            )


if __name__ == "__main__":
    main()
