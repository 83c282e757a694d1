"""Closed forms against the quadrature oracle on a seeded ensemble.

Writes the per-scenario report and prints the summary lines.

    python3 scripts/run_verification.py --seed 42 --cases 1000
"""

import argparse
import sys
import time
from pathlib import Path

from weakinterference.cli import verify_report
from weakinterference.quadrature import QuadratureGrid


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--cases", type=int, default=1000)
    parser.add_argument("--samples", type=int, default=QuadratureGrid.samples)
    parser.add_argument("--out", default="results/verify.csv")
    args = parser.parse_args()

    t0 = time.perf_counter()
    text, ok = verify_report(args.seed, args.cases, QuadratureGrid(samples=args.samples))
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    for line in text.splitlines()[-3:]:
        print(line)
    print(f"# wrote {out} in {time.perf_counter() - t0:.1f} s")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
