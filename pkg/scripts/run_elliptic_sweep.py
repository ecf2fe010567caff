#!/usr/bin/env python3
"""Run the full conjecture battery over the elliptic grid and save the report.

Defaults reproduce the desk-scale experiment: q in {2,3,4,5}, every
Hasse-admissible trace, tuples (1),(2),(3),(4),(2,2),(2,3),(3,2),(2,2,2),
all six checks.  The report is deterministic JSON.

  python scripts/run_elliptic_sweep.py --out reports/sweep_elliptic.json --jobs 4
"""

import argparse
import sys
from pathlib import Path

from zetatower.rh_lab import ALL_CHECKS, SweepConfig, builtin_elliptic_grid, report_to_json, sweep

DEFAULT_TUPLES = ((1,), (2,), (3,), (4,), (2, 2), (2, 3), (3, 2), (2, 2, 2))


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", default="2,3,4,5", help="comma-separated prime powers")
    ap.add_argument("--tuples", default=";".join(",".join(map(str, t)) for t in DEFAULT_TUPLES))
    ap.add_argument("--checks", default="all")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default="reports/sweep_elliptic.json")
    args = ap.parse_args()

    qs = tuple(int(q) for q in args.q.split(","))
    tuples = tuple(tuple(int(n) for n in part.split(",")) for part in args.tuples.split(";"))
    checks = ALL_CHECKS if args.checks == "all" else tuple(args.checks.split(","))
    config = SweepConfig(curves=tuple(builtin_elliptic_grid(qs)), tuples=tuples, checks=checks)
    report = sweep(config, jobs=args.jobs)

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(report_to_json(report), encoding="utf-8")

    summary = report["summary"]
    print(f"wrote {out} ({summary['cells']} cells)")
    for name, counts in summary["per_check"].items():
        print(f"  {name}: {counts}")
    return 1 if summary["failed"] else 0


if __name__ == "__main__":
    sys.exit(main())
