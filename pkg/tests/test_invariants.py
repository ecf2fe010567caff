"""Tests for invariant extraction, the closed beta formula, and interlacing."""

from fractions import Fraction

import pytest

from zetatower.curves import artin_elliptic, artin_from_point_counts, hasse_traces
from zetatower.derived_engine import derive_step, derive_tower, special_values
from zetatower.exact_arith import Poly, residue_simple_pole
from zetatower.invariants import (
    beta_closed_form,
    counting_miracle_check,
    extract_invariants,
    interlacing_poly,
    interlacing_sign_check,
    interlacing_signs,
    invariant_report,
    reconstruct_numerator,
)


# -- extraction ---------------------------------------------------------------


def test_extract_artin_elliptic():
    inv = extract_invariants(artin_elliptic(2, 0))
    assert inv.alphas == (1,)
    assert inv.beta == 3
    assert inv.A == (1, 0, 2)


def test_extract_q3_a3():
    inv = extract_invariants(artin_elliptic(3, 3))
    assert inv.beta == Fraction(1, 2)
    assert inv.alphas == (1,)


def test_extract_genus2():
    inv = extract_invariants(artin_from_point_counts(2, 2, [3, 5]))
    assert inv.alphas == (1, 3)
    assert inv.beta == 5
    assert inv.P == Poly([1, 0, 0, 0, 4])


def test_normalized_level_has_alpha0_one():
    levels = derive_tower(artin_elliptic(2, 0), (2, 2), normalize=True)
    for z in levels:
        assert extract_invariants(z).alphas[0] == 1


def test_reconstruction_round_trip_small():
    for q, a in [(2, 0), (3, 3), (5, -4)]:
        inv = extract_invariants(artin_elliptic(q, a))
        assert reconstruct_numerator(inv.alphas, inv.beta, inv.Q, 1) == inv.P


def test_reconstruction_exercises_all_coefficient_ranges():
    # genus 3 makes every index range of the coefficient table nondegenerate:
    # k = 0, 1, 2..g-1, g, g+1, g+2..2g-1, 2g
    for q, counts in [(2, (3, 9, 9)), (2, (4, 8, 10)), (3, (5, 11, 29))]:
        z = artin_from_point_counts(q, 3, counts)
        inv = extract_invariants(z)
        P = reconstruct_numerator(inv.alphas, inv.beta, inv.Q, 3)
        assert P == inv.P
        assert P.degree == 6
        for i in range(7):
            assert inv.A[6 - i] == inv.Q ** (3 - i) * inv.A[i]


def test_trace_of_genus1():
    inv = extract_invariants(derive_step(artin_elliptic(2, 0), 2))
    assert inv.trace() == -1  # (Q+1) - (Q-1) * beta2/beta1 = 5 - 3*2


# -- beta closed form ------------------------------------------------------------


def test_beta_closed_form_depth_one_is_residue():
    z = artin_elliptic(2, 0)
    sv = special_values(z, 1)
    assert beta_closed_form(sv, 1, 1) == 3 == sv.zeta1


def test_beta_closed_form_depth_two():
    z = artin_elliptic(2, 0)
    sv = special_values(z, 2)
    # v2 + v1^2/(1 - Q^2) = 9 + 9/(1-4) = 6
    assert beta_closed_form(sv, 2, 1) == 6


def test_beta_dual_route_small_grid():
    for q in (2, 3):
        for a in hasse_traces(q):
            base = artin_elliptic(q, a)
            for steps in [(2,), (3,), (2, 2)]:
                levels = [base] + derive_tower(base, steps)
                for prev, nxt, n in zip(levels, levels[1:], steps):
                    sv = special_values(prev, n)
                    assert residue_simple_pole(nxt.zeta, 1) == beta_closed_form(sv, n, prev.genus)


def test_beta_closed_form_needs_depth():
    sv = special_values(artin_elliptic(2, 0), 1)
    with pytest.raises(ValueError, match="depth"):
        beta_closed_form(sv, 2, 1)


# -- counting miracle ---------------------------------------------------------------


def test_miracle_elliptic_n1_n2():
    z = artin_elliptic(2, 0)
    assert counting_miracle_check(z, 1).passed
    assert counting_miracle_check(z, 2).passed
    # g = 1 kills the q-power prefactor: alpha0 at (2) equals beta at (1)
    assert derive_step(z, 2).numerator()[0] == 3


def test_miracle_at_depth():
    z2 = derive_step(artin_elliptic(2, 0), 2)
    assert counting_miracle_check(z2, 1).passed
    assert counting_miracle_check(z2, 2).passed


def test_miracle_genus2_prefactor():
    zg = artin_from_point_counts(2, 2, [3, 5])
    assert counting_miracle_check(zg, 1).passed
    assert counting_miracle_check(zg, 2).passed
    # n = 1, g = 2: alpha0 at (2) picks up q^(g-1) = 2 on alpha0 * beta = 5
    assert derive_step(zg, 2).numerator()[0] == 10


# -- interlacing polynomial -----------------------------------------------------------


def test_interlacing_n1_constant():
    sv = special_values(artin_elliptic(2, 0), 1)
    ip = interlacing_poly(sv, 1)
    assert ip.poly == Poly([3])
    assert interlacing_sign_check(ip).passed


def test_interlacing_n2_shape_and_signs():
    sv = special_values(artin_elliptic(2, 0), 2)
    ip = interlacing_poly(sv, 2)
    # v2*(QT-1) + v1^2/(Q^2-1)*(Q^2 T-1) = 9(2T-1) + 3(4T-1) = 30T - 12
    assert ip.poly == Poly([-12, 30])
    assert ip.poly.degree == 1
    assert interlacing_signs(ip) == [1, -1]
    assert ip.constant_term_identity()
    # the single root 2/5 lies inside (Q^-2, Q^-1) = (1/4, 1/2)
    root = Fraction(12, 30)
    assert Fraction(1, 4) < root < Fraction(1, 2)


def test_interlacing_alternation_deeper():
    sv = special_values(artin_elliptic(2, 0), 5)
    for n in (3, 4, 5):
        ip = interlacing_poly(sv, n)
        assert ip.poly.degree == n - 1
        assert interlacing_signs(ip) == [(-1) ** (k + 1) for k in range(1, n + 1)]
        assert interlacing_sign_check(ip).passed
        assert ip.constant_term_identity()


def test_interlacing_defining_identity():
    # gamma equals the tail sum times the clearing product, as rational functions
    sv = special_values(artin_elliptic(3, -2), 4)
    ip = interlacing_poly(sv, 4)
    clearing = Poly([1])
    for ell in range(1, 5):
        clearing = clearing * Poly([-1, Fraction(3) ** ell])
    assert (ip.tail * clearing).to_poly() == ip.poly


# -- reports -----------------------------------------------------------------------


def test_positivity_flag():
    assert extract_invariants(artin_elliptic(2, 2)).positivity()


def test_invariant_report_schema():
    z = artin_elliptic(2, 0)
    z2 = derive_step(z, 2)
    rep = invariant_report(z2, gamma_ns=(2,), sv_prev=special_values(z, 2))
    assert rep["tuple"] == [2]
    assert rep["Q"] == "4"
    assert rep["alphas"] == ["3"]
    assert rep["beta"] == "6"
    assert rep["positivity"] is True
    assert rep["gamma_signs"] == {"2": [1, -1]}
