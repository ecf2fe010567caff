"""Numerator invariants of a tower level and their cross-checks.

A level's numerator P (degree 2g, constant term alpha(0)) decomposes as

    P = S(T) * (1-T)(1-QT) + (Q-1) * beta * T^g

where beta is the residue at T = 1 and S is palindromic of degree 2(g-1) with
lower coefficients alpha(0)..alpha(g-1).  Extraction inverts that by exact
division, so any deviation from the required shape fails loudly instead of
being least-squares'd away.  The same beta is also given by a closed sum over
integer compositions of special values of the previous level, which gives the
dual route the test suite exercises everywhere.

The interlacing polynomial built here clears the composition sum

    sum over (k) of n:  [prod v_{k_i} / prod_j (Q^(k_j+k_{j+1}) - 1)] / (Q^(k_p) T - 1)

against prod_{l=1..n} (Q^l T - 1).  All composition weights are positive, so
at T = Q^-kappa only the compositions ending in kappa survive and the sign is
forced to (-1)^(kappa+1): the sign vector alternates and pins one real root in
each interval (Q^-(kappa+1), Q^-kappa), kappa = 1..n-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from zetatower.curves import CheckResult, ZetaLevel
from zetatower.derived_engine import (
    SpecialValues,
    compositions,
    composition_weight,
    derive_step,
)
from zetatower.exact_arith import BigRat, Poly, RatFunc, rat_str, residue_simple_pole


@dataclass(frozen=True)
class InvariantSet:
    """alpha(0)..alpha(g-1), beta, and the numerator they reconstruct."""

    alphas: tuple
    beta: BigRat
    P: Poly
    A: tuple  # A[i] = coefficient of T^i in P, length 2g+1
    Q: BigRat
    genus: int

    def positivity(self) -> bool:
        return all(a > 0 for a in self.alphas) and self.beta > 0

    def trace(self) -> Fraction:
        """For genus 1: the A with P = alpha(0) * (1 - A*T + Q*T^2)."""
        if self.genus != 1:
            raise ValueError("trace only defined for genus 1")
        return -self.A[1] / self.A[0]


def reconstruct_numerator(alphas, beta, Q: BigRat, genus: int) -> Poly:
    """Expand the (alphas, beta) decomposition back into P."""
    g = genus
    Q = Fraction(Q)
    s_coeffs = [Fraction(0)] * (2 * g - 1)
    for ell in range(g - 1):
        s_coeffs[ell] += Fraction(alphas[ell])
        s_coeffs[2 * (g - 1) - ell] += Q ** (g - 1 - ell) * Fraction(alphas[ell])
    s_coeffs[g - 1] += Fraction(alphas[g - 1])
    S = Poly(s_coeffs)
    pole_part = (Q - 1) * Fraction(beta) * Poly([0, 1]) ** g
    return S * Poly([1, -1]) * Poly([1, -Q]) + pole_part


def extract_invariants(z: ZetaLevel) -> InvariantSet:
    """Read (alphas, beta) off a level by residue plus exact division."""
    g = z.genus
    P = z.numerator()
    if P.degree != 2 * g:
        raise ValueError(f"numerator degree {P.degree}, expected {2 * g}")
    beta = residue_simple_pole(z.zeta, 1)
    remainder_num = P - (z.Q - 1) * beta * Poly([0, 1]) ** g
    S, rem = divmod(remainder_num, Poly([1, -1]) * Poly([1, -z.Q]))
    if not rem.is_zero():
        raise ValueError("level violates the numerator decomposition shape")
    if S.degree > 2 * (g - 1):
        raise ValueError(f"interior part has degree {S.degree} > 2(g-1)")
    for ell in range(g - 1):
        if S[2 * (g - 1) - ell] != z.Q ** (g - 1 - ell) * S[ell]:
            raise ValueError("interior part is not palindromic")
    alphas = tuple(S[ell] for ell in range(g))
    A = tuple(P[i] for i in range(2 * g + 1))
    inv = InvariantSet(alphas=alphas, beta=beta, P=P, A=A, Q=z.Q, genus=g)
    assert reconstruct_numerator(alphas, beta, z.Q, g) == P
    return inv


def beta_closed_form(sv: SpecialValues, n: int, genus: int) -> Fraction:
    """Residue of the next level by the closed composition sum, no derivation."""
    if sv.depth < n:
        raise ValueError(f"special values of depth {sv.depth} < {n}")
    acc = Fraction(0)
    for comp in compositions(n):
        acc += composition_weight(comp, sv)
    return sv.Q ** (comb(n, 2) * (genus - 1)) * acc


def counting_miracle_check(prev: ZetaLevel, n: int) -> CheckResult:
    """Constant term at step n+1 against q^(n(g-1)) * alpha_prev(0) * beta at step n.

    All three quantities are computed independently: two fresh derivations and
    one residue.
    """
    g = prev.genus
    alpha0_prev = prev.numerator()[0]
    beta_n = residue_simple_pole(derive_step(prev, n).zeta, 1)
    alpha0_next = derive_step(prev, n + 1).numerator()[0]
    expected = prev.Q ** (n * (g - 1)) * alpha0_prev * beta_n
    return CheckResult(
        "counting_miracle",
        alpha0_next == expected,
        f"alpha0(step {n + 1}) = {rat_str(alpha0_next)}, expected {rat_str(expected)}",
    )


# --------------------------------------------------------------------------
# Interlacing polynomial
# --------------------------------------------------------------------------


def _positive_weight(comp, sv: SpecialValues) -> Fraction:
    """Composition weight with the pair denominators taken positively."""
    w = Fraction(1)
    for part in comp:
        w *= sv.vhat(part)
    for left, right in zip(comp, comp[1:]):
        w /= sv.Q ** (left + right) - 1
    return w


@dataclass(frozen=True)
class InterlacingPoly:
    """Cleared composition sum whose sign alternation certifies root interlacing."""

    n: int
    Q_prev: BigRat
    tail: RatFunc  # the uncleaned sum, one simple pole per ending part
    poly: Poly  # tail * prod_{l=1..n} (Q^l T - 1)

    def constant_term_identity(self) -> bool:
        """(-1)^(n-1) * poly(0) equals the plain positive-weight sum."""
        return Fraction(-1) ** (self.n - 1) * self.poly[0] == self.tail_sum()

    def tail_sum(self) -> Fraction:
        return -self.tail(0)  # each 1/(Q^k * 0 - 1) contributes -weight


def interlacing_poly(sv: SpecialValues, n: int, Q_prev: BigRat = None) -> InterlacingPoly:
    """Build the cleared composition polynomial of degree n-1."""
    if sv.depth < n:
        raise ValueError(f"special values of depth {sv.depth} < {n}")
    Q = Fraction(Q_prev) if Q_prev is not None else sv.Q
    tail = RatFunc(0)
    for comp in compositions(n):
        w = _positive_weight(comp, sv)
        tail = tail + w * RatFunc(1, Poly([-1, Q ** comp[-1]]))
    clearing = Poly([1])
    for ell in range(1, n + 1):
        clearing = clearing * Poly([-1, Q**ell])
    poly = (tail * RatFunc(clearing)).to_poly()
    if poly.degree > n - 1:
        raise ValueError(f"cleared polynomial has degree {poly.degree} > n-1 = {n - 1}")
    return InterlacingPoly(n=n, Q_prev=Q, tail=tail, poly=poly)


def interlacing_sign_check(ip: InterlacingPoly) -> CheckResult:
    """Exact signs at T = Q^-kappa, kappa = 1..n, must alternate starting +.

    The alternation forces one real root in each interval
    (Q^-(kappa+1), Q^-kappa) for kappa = 1..n-1; a zero value at a sample
    point is reported as degenerate rather than passed.
    """
    signs = []
    for kappa in range(1, ip.n + 1):
        v = ip.poly(ip.Q_prev**-kappa)
        signs.append(0 if v == 0 else (1 if v > 0 else -1))
    if 0 in signs:
        return CheckResult("interlacing", False, f"root at sample point; signs {signs}")
    ok = all(s == (-1) ** (kappa + 1) for kappa, s in enumerate(signs, start=1))
    degree_ok = ip.poly.degree == ip.n - 1 if ip.n > 1 else ip.poly.degree <= 0
    return CheckResult(
        "interlacing",
        ok and degree_ok,
        f"signs at Q^-kappa: {signs}; degree {ip.poly.degree}",
    )


def interlacing_signs(ip: InterlacingPoly) -> list:
    signs = []
    for kappa in range(1, ip.n + 1):
        v = ip.poly(ip.Q_prev**-kappa)
        signs.append(0 if v == 0 else (1 if v > 0 else -1))
    return signs


# --------------------------------------------------------------------------
# Report serialization
# --------------------------------------------------------------------------


def invariant_report(z: ZetaLevel, gamma_ns=(), sv_prev: SpecialValues = None) -> dict:
    """JSON-ready record of one level's invariants and optional sign vectors."""
    inv = extract_invariants(z)
    report = {
        "curve": z.label,
        "tuple": list(z.steps),
        "Q": rat_str(z.Q),
        "alphas": [rat_str(a) for a in inv.alphas],
        "beta": rat_str(inv.beta),
        "positivity": inv.positivity(),
        "gamma_signs": {},
    }
    for n in gamma_ns:
        if sv_prev is None or sv_prev.depth < n:
            raise ValueError("sign vectors need the previous level's special values")
        report["gamma_signs"][str(n)] = interlacing_signs(interlacing_poly(sv_prev, n))
    return report
