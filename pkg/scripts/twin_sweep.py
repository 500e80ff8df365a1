"""Sweep twin prime pairs and print 2-adic and linear complexity of both classes as CSV.

    python scripts/twin_sweep.py --max-p 150
"""

import argparse
import sys
import time

from cyclodyne.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-p", type=int, default=150)
    args = ap.parse_args()
    t0 = time.perf_counter()
    code = cli_main(["verify-twin", "--max-p", str(args.max_p), "--format", "csv"])
    print(f"# {time.perf_counter() - t0:.1f}s, exit {code}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
