"""Command-line front end.

Commands: catalog, derive, invariants, rh-check, sweep.  Curves come from an
inline spec (``elliptic:q=2,a=0`` or ``counts:q=2,g=2,N=3;5``), from the
built-in catalog (``catalog:E2a0``), or from a JSON file matching the curve
schema.  Every rational in emitted JSON is an exact string; numeric RH
deviations are decimal strings at the stated precision.  Identical inputs
produce byte-identical output files.

Exit codes: 0 ok, 1 check failed, 2 usage error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from zetatower.curves import (
    CATALOG,
    CurveSpec,
    artin_zeta,
    catalog_curve,
    count_points_bruteforce,
    load_curves,
)
from zetatower.derived_engine import derive_tower, special_values
from zetatower.exact_arith import rat_str
from zetatower.invariants import extract_invariants, invariant_report
from zetatower.rh_lab import (
    ALL_CHECKS,
    DEFAULT_PRECISION_BITS,
    SweepConfig,
    builtin_elliptic_grid,
    report_to_json,
    rh_verdict_for_level,
    sweep,
)

ENV_PRECISION = "ZETATOWER_PRECISION_BITS"
ENV_PRODUCT_CAP = "ZETATOWER_PRODUCT_CAP"
DEFAULT_PRODUCT_CAP = 64


class UsageError(ValueError):
    pass


def parse_curve_arg(text: str) -> CurveSpec:
    if text.startswith("elliptic:"):
        kv = dict(part.split("=", 1) for part in text[len("elliptic:") :].split(","))
        q, a = int(kv["q"]), int(kv["a"])
        return CurveSpec(label=f"elliptic_q{q}_a{a}", q=q, genus=1, trace=a)
    if text.startswith("counts:"):
        kv = dict(part.split("=", 1) for part in text[len("counts:") :].split(","))
        counts = tuple(int(n) for n in kv["N"].split(";"))
        q, g = int(kv["q"]), int(kv["g"])
        return CurveSpec(label=f"counts_q{q}_g{g}", q=q, genus=g, point_counts=counts)
    if text.startswith("catalog:"):
        return catalog_curve(text[len("catalog:") :]).spec()
    path = Path(text)
    if not path.exists():
        raise UsageError(f"curve file not found: {text}")
    curves = load_curves(path)
    if len(curves) != 1:
        raise UsageError(f"expected exactly one curve in {text}, found {len(curves)}")
    return curves[0]


def parse_tuple_arg(text: str, cap: int, allow_large: bool) -> tuple:
    try:
        steps = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"malformed tuple {text!r}; expected comma-separated integers") from None
    if not steps or any(n < 1 for n in steps):
        raise UsageError("tuple entries must be positive integers")
    prod = 1
    for n in steps:
        prod *= n
    if prod > cap and not allow_large:
        raise UsageError(f"step product {prod} exceeds cap {cap}; pass --allow-large to override")
    return steps


def _write_output(text: str, output):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_catalog(args) -> int:
    entries = []
    for label in sorted(CATALOG):
        c = CATALOG[label]
        counts = [count_points_bruteforce(c.model, c.q, k) for k in range(1, c.genus + 1)]
        entries.append(
            {
                "label": label,
                "q": c.q,
                "genus": c.genus,
                "model": c.model.describe(),
                "point_counts": counts,
            }
        )
    _write_output(json.dumps(entries, sort_keys=True, indent=2) + "\n", args.output)
    return 0


def _tower(args):
    spec = parse_curve_arg(args.curve)
    cap = int(os.environ.get(ENV_PRODUCT_CAP, DEFAULT_PRODUCT_CAP))
    steps = parse_tuple_arg(args.tuple, cap, args.allow_large)
    base = artin_zeta(spec)
    levels = [base] + derive_tower(base, steps, normalize=args.normalize)
    return spec, steps, levels


def cmd_derive(args) -> int:
    spec, steps, levels = _tower(args)
    payload = {"curve": spec.to_dict(), "tuple": list(steps), "levels": []}
    for z in levels:
        P = z.numerator()
        payload["levels"].append(
            {
                "tuple": list(z.steps),
                "Q": rat_str(z.Q),
                "genus": z.genus,
                "numerator": [rat_str(P[i]) for i in range(2 * z.genus + 1)],
                "normalized": z.normalized,
                "normalization": rat_str(z.scale),
            }
        )
        print(
            f"level {list(z.steps)}: Q = {rat_str(z.Q)}, numerator degree {int(P.degree)}, "
            f"beta = {rat_str(extract_invariants(z).beta)}",
            file=sys.stderr,
        )
    _write_output(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.output)
    return 0


def cmd_invariants(args) -> int:
    spec, steps, levels = _tower(args)
    reports = []
    for i, z in enumerate(levels):
        gamma_ns, sv = (), None
        if i > 0:
            n = steps[i - 1]
            sv = special_values(levels[i - 1], n)
            gamma_ns = (n,)
        rep = invariant_report(z, gamma_ns=gamma_ns, sv_prev=sv)
        rep["curve"] = spec.label
        reports.append(rep)
    if args.format == "csv":
        lines = ["curve,tuple,Q,alphas,beta,positivity"]
        for rep in reports:
            lines.append(
                ",".join(
                    [
                        rep["curve"],
                        ";".join(str(n) for n in rep["tuple"]),
                        rep["Q"],
                        ";".join(rep["alphas"]),
                        rep["beta"],
                        str(int(rep["positivity"])),
                    ]
                )
            )
        _write_output("\n".join(lines) + "\n", args.output)
    else:
        _write_output(json.dumps(reports, sort_keys=True, indent=2) + "\n", args.output)
    return 0 if all(rep["positivity"] for rep in reports) else 1


def cmd_rh_check(args) -> int:
    spec, steps, levels = _tower(args)
    precision = args.precision_bits or int(os.environ.get(ENV_PRECISION, DEFAULT_PRECISION_BITS))
    verdicts = []
    all_hold = True
    for z in levels:
        v = rh_verdict_for_level(z, precision_bits=precision, tolerance=args.tolerance)
        verdicts.append(
            {
                "tuple": list(z.steps),
                "method": v.method,
                "holds": v.holds,
                "boundary": v.boundary,
                "discriminant": rat_str(v.discriminant) if v.discriminant is not None else None,
                "max_deviation": v.max_deviation,
                "precision_bits": v.precision_bits,
                "tolerance": v.tolerance,
            }
        )
        all_hold = all_hold and v.holds is True
    payload = {"curve": spec.to_dict(), "verdicts": verdicts}
    _write_output(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.output)
    return 0 if all_hold else 1


def cmd_sweep(args) -> int:
    cap = int(os.environ.get(ENV_PRODUCT_CAP, DEFAULT_PRODUCT_CAP))
    tuples = tuple(parse_tuple_arg(part, cap, args.allow_large) for part in args.tuples.split(";"))
    if args.curves:
        curves = tuple(load_curves(args.curves))
    elif args.grid == "builtin-elliptic":
        qs = tuple(int(q) for q in args.q.split(","))
        curves = tuple(builtin_elliptic_grid(qs))
    elif args.grid == "catalog":
        curves = tuple(CATALOG[label].spec() for label in sorted(CATALOG))
    else:
        raise UsageError(f"unknown grid {args.grid!r} and no --curves file given")
    checks = ALL_CHECKS if args.checks == "all" else tuple(args.checks.split(","))
    unknown = set(checks) - set(ALL_CHECKS)
    if unknown:
        raise UsageError(f"unknown checks: {sorted(unknown)}; available: {ALL_CHECKS}")
    precision = args.precision_bits or int(os.environ.get(ENV_PRECISION, DEFAULT_PRECISION_BITS))
    config = SweepConfig(
        curves=curves,
        tuples=tuples,
        checks=checks,
        precision_bits=precision,
        product_cap=cap if not args.allow_large else 10**9,
    )
    report = sweep(config, jobs=args.jobs)
    _write_output(report_to_json(report), args.output)
    print(
        "sweep: {cells} cells, failed={failed}".format(
            cells=report["summary"]["cells"], failed=report["summary"]["failed"]
        ),
        file=sys.stderr,
    )
    return 1 if report["summary"]["failed"] else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zetatower", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, tuple_required=True):
        p.add_argument("--curve", required=True, help="elliptic:q=2,a=0 | counts:q=..,g=..,N=..;.. | catalog:LABEL | file.json")
        p.add_argument("--tuple", required=tuple_required, default="1", help="comma-separated derivation indices, e.g. 2,3")
        p.add_argument("--normalize", action="store_true", help="divide each level by its constant term")
        p.add_argument("--allow-large", action="store_true", help="override the step-product cap")
        p.add_argument("--output", default=None, help="output file (default: stdout)")

    p = sub.add_parser("catalog", help="list the built-in equation catalog")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("derive", help="derive the tower and emit per-level numerators")
    add_common(p)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("invariants", help="extract alpha/beta invariants per level")
    add_common(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("rh-check", help="Riemann-hypothesis verdicts per level")
    add_common(p)
    p.add_argument("--precision-bits", type=int, default=None)
    p.add_argument("--tolerance", default=None)
    p.set_defaults(func=cmd_rh_check)

    p = sub.add_parser("sweep", help="run a check battery over a curve x tuple grid")
    p.add_argument("--grid", default="builtin-elliptic", help="builtin-elliptic | catalog")
    p.add_argument("--q", default="2,3,4,5", help="q values for the builtin elliptic grid")
    p.add_argument("--curves", default=None, help="JSON file with a list of curves")
    p.add_argument("--tuples", required=True, help="semicolon-separated tuples, e.g. '2;3;2,2'")
    p.add_argument("--checks", default="all", help="all or comma-separated subset of " + ",".join(ALL_CHECKS))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--precision-bits", type=int, default=None)
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - internal failure path
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
