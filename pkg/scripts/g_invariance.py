"""Check that every common primitive root g gives the same classes D0, D1.

    python scripts/g_invariance.py --max-n 3000
"""

import argparse

from cyclodyne.cyclotomy import build_partition
from cyclodyne.ntcore import is_primitive_root, make_params, valid_pairs


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=1000)
    args = ap.parse_args()
    worst = 0
    for p, q in valid_pairs(args.max_n):
        roots = [g for g in range(2, p * q) if is_primitive_root(g, p) and is_primitive_root(g, q)]
        classes = {build_partition(make_params(p, q, g)).d0 for g in roots}
        worst = max(worst, len(classes))
        if len(classes) > 1:
            print(f"({p}, {q}): {len(classes)} distinct D0 over {len(roots)} roots")
    print(f"pairs checked: {len(valid_pairs(args.max_n))}; max distinct D0 per pair: {worst}")


if __name__ == "__main__":
    main()
