"""Sweep the bound table over a grid of (q, n, k, m) and emit CSV.

Each row reports the best applicable integer lower bound, the trivial
upper bound m q^{n-k}, and the gap between them.  Useful for spotting
where the desk-scale bounds are tight and where they collapse.

Usage:
    python3 scripts/bound_sweep.py --qs 2 3 --nmax 4 > sweep.csv
"""

import argparse
import csv
import sys

from flab.furstenberg import FurstenbergInstance, bound_table
from flab.gf import field_build


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--qs", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--nmax", type=int, default=4)
    args = ap.parse_args()

    writer = csv.writer(sys.stdout)
    writer.writerow(["q", "n", "k", "m", "best_lower", "trivial_upper",
                     "gap", "applicable_lower_rows"])
    for q in args.qs:
        p, e = q, 1
        if q == 4:
            p, e = 2, 2
        F = field_build(p, e)
        for n in range(2, args.nmax + 1):
            for k in range(1, n):
                for m in range(1, q ** k + 1):
                    inst = FurstenbergInstance(field=F, n=n, k=k, m=m)
                    report = bound_table(inst)
                    lower = report.best_integer_lower()
                    upper = m * q ** (n - k)
                    writer.writerow([
                        q, n, k, m, lower, upper, upper - lower,
                        ";".join(r.source for r in report.lower_rows()),
                    ])
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
