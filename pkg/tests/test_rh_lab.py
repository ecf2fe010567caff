"""Tests for the RH verdicts and the sweep harness."""

from fractions import Fraction

import mpmath as mp
import pytest

from zetatower.curves import CurveSpec, artin_elliptic, artin_from_point_counts, hasse_traces
from zetatower.derived_engine import derive_step
from zetatower.exact_arith import Poly
from zetatower.invariants import extract_invariants
from zetatower.rh_lab import (
    SweepConfig,
    builtin_elliptic_grid,
    report_to_json,
    rh_exact_genus1,
    rh_numeric,
    rh_verdict_for_level,
    root_pairing_defect,
    run_cell,
    sweep,
)


# -- exact genus-1 criterion -----------------------------------------------------


def test_exact_holds_trace_zero():
    v = rh_exact_genus1(extract_invariants(artin_elliptic(2, 0)))
    assert v.holds and not v.boundary and v.method == "exact_g1"


def test_exact_holds_derived_level():
    v = rh_exact_genus1(extract_invariants(derive_step(artin_elliptic(2, 0), 2)))
    assert v.holds and v.discriminant == 1 - 16


def test_exact_fails_synthetic():
    # A = 5, Q = 4 sits outside the Hasse interval: 25 > 16
    from zetatower.invariants import InvariantSet

    P = Poly([1, -5, 4])
    inv = InvariantSet(alphas=(Fraction(1),), beta=Fraction(0), P=P, A=(1, -5, 4), Q=Fraction(4), genus=1)
    assert rh_exact_genus1(inv).holds is False


def test_exact_boundary_flag():
    v = rh_exact_genus1(extract_invariants(artin_elliptic(4, 4)))
    assert v.holds and v.boundary


def test_exact_rejects_higher_genus():
    with pytest.raises(ValueError):
        rh_exact_genus1(extract_invariants(artin_from_point_counts(2, 2, [3, 5])))


# -- numeric route ------------------------------------------------------------------


def test_numeric_matches_exact_on_subgrid():
    for q in (2, 3):
        for a in hasse_traces(q):
            inv = extract_invariants(artin_elliptic(q, a))
            exact = rh_exact_genus1(inv)
            numeric = rh_numeric(inv)
            assert numeric.holds == exact.holds is True
            assert mp.mpf(numeric.max_deviation) < mp.mpf("1e-30")


def test_numeric_genus2_product():
    # (1 + 2T^2)(1 - 2T + 2T^2): all reciprocal roots on |T| = 2^(-1/2)
    P = Poly([1, 0, 2]) * Poly([1, -2, 2])
    v = rh_numeric(P, 2, precision_bits=256)
    assert v.holds and v.self_inversive
    assert mp.mpf(v.max_deviation) < mp.mpf("1e-30")


def test_numeric_planted_off_circle_fails():
    P = Poly([1, Fraction(-1, 3)]) * Poly([1, -3]) * Poly([1, 0, 2])
    v = rh_numeric(P, 2)
    assert v.holds is False
    assert v.self_inversive is False
    assert mp.mpf(v.max_deviation) > 1


def test_numeric_boundary_double_root():
    v = rh_numeric(extract_invariants(artin_elliptic(4, -4)))
    assert v.holds and mp.mpf(v.max_deviation) < mp.mpf("1e-30")


def test_numeric_requires_even_degree():
    with pytest.raises(ValueError):
        rh_numeric(Poly([1, 1, 1, 1]), 2)


def test_numeric_needs_q_for_raw_poly():
    with pytest.raises(ValueError):
        rh_numeric(Poly([1, 0, 2]))


def test_self_inversive_root_pairing():
    P = Poly([1, 0, 2]) * Poly([1, -2, 2])
    assert root_pairing_defect(P, 2) < mp.mpf("1e-20")


def test_verdict_dispatch_by_genus():
    assert rh_verdict_for_level(artin_elliptic(2, 1)).method == "exact_g1"
    assert rh_verdict_for_level(artin_from_point_counts(2, 2, [3, 5])).method == "numeric"


# -- sweep harness -------------------------------------------------------------------


def test_empty_grid_gives_empty_report():
    rep = sweep(SweepConfig(curves=(), tuples=((2,),)))
    assert rep["cells"] == [] and rep["summary"]["cells"] == 0
    assert rep["summary"]["failed"] is False


def test_sweep_small_grid_all_pass():
    cfg = SweepConfig(curves=tuple(builtin_elliptic_grid((2,))), tuples=((2,), (2, 2)))
    rep = sweep(cfg)
    assert rep["summary"]["failed"] is False
    assert rep["summary"]["cells"] == 10
    for cell in rep["cells"]:
        assert all(v in ("pass", "skipped") for v in cell["checks"].values())


def test_sweep_reports_are_byte_identical():
    cfg = SweepConfig(curves=tuple(builtin_elliptic_grid((2,))), tuples=((2,),))
    assert report_to_json(sweep(cfg)) == report_to_json(sweep(cfg))


def test_sweep_parallel_matches_serial():
    cfg = SweepConfig(curves=tuple(builtin_elliptic_grid((2,))), tuples=((2,), (3,)))
    assert report_to_json(sweep(cfg, jobs=1)) == report_to_json(sweep(cfg, jobs=2))


def test_sweep_records_cell_errors():
    bad = CurveSpec(label="boundary", q=4, genus=1, trace=4)
    # tuples beyond the cap abort up front instead of running
    with pytest.raises(ValueError, match="cap"):
        sweep(SweepConfig(curves=(bad,), tuples=((65,),)))


def test_run_cell_genus2():
    spec = CurveSpec(label="X2g2", q=2, genus=2, point_counts=(3, 5))
    cell = run_cell(spec, (2,), SweepConfig(curves=(spec,), tuples=((2,),)))
    assert "error" not in cell
    assert cell["checks"]["positivity"] == "pass"
    assert cell["checks"]["rh"] == "pass"
    assert cell["checks"]["ratio_bounds"] == "skipped"
    assert cell["checks"]["miracle"] == "pass"
