#!/usr/bin/env python3
"""Export the elliptic residue table as CSV: (q, a, n, beta, b_n, ratio, bounds).

The beta column comes from the three-term recursion, b_n from the exact series
exponential; the two must agree row by row, so the file doubles as a quick
dual-route audit that is easy to diff or plot.

  python scripts/export_beta_table.py --out reports/elliptic_beta_table.csv --nmax 8
"""

import argparse
import sys
from pathlib import Path

from zetatower.mult_struct import export_elliptic_grid_csv


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", default="2,3,4,5")
    ap.add_argument("--nmax", type=int, default=8)
    ap.add_argument("--out", default="reports/elliptic_beta_table.csv")
    args = ap.parse_args()

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    qs = tuple(int(q) for q in args.q.split(","))
    rows = export_elliptic_grid_csv(out, qs, n_max=args.nmax)
    print(f"wrote {out} ({rows} rows)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
