"""Power sums, the residue-generating series, and the elliptic recursions.

N_k = Q^k + 1 - p_k, where p_k is the k-th power sum of the reciprocal roots
of the (constant-term-1) numerator, obtained from its coefficients by
Newton's identities; no root extraction anywhere.  The generating series

    B(x) = exp( sum_m  N_m / (Q^m - 1) * x^m / m )

is computed two independent ways: directly by the exact series exponential,
and by the three-term recursion obtained from clearing denominators in
(1-x)(1-Qx) B(Qx) = B(x) * P(x),

    (Q^k - 1) b_k = (Q+1) Q^(k-1) b_{k-1} - Q^(k-1) b_{k-2}
                    + sum_{l=1..min(k,2g)} A_l b_{k-l},      b_0 = 1.

(The recursion's middle coefficient is (Q+1), matching the denominator
clearing; a displayed (Q-1) variant is a typo that the exp route would
immediately contradict.)  For genus 1 under the constant-term-1 convention,
b_n equals the residue of the n-th derived level, which yields the elliptic
three-term recursion and the ratio bounds checked here.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from zetatower.curves import CheckResult, ZetaLevel
from zetatower.derived_engine import derive_tower
from zetatower.exact_arith import (
    BigRat,
    FormalSeries,
    newton_power_sums,
    rat_str,
    series_exp,
)
from zetatower.invariants import InvariantSet, extract_invariants


@dataclass(frozen=True)
class PowerSums:
    Q: BigRat
    N: tuple  # N[k-1] = N_k

    def n_k(self, k: int) -> Fraction:
        return self.N[k - 1]


def power_sums(inv: InvariantSet, k_max: int) -> PowerSums:
    """N_1..N_K from the numerator coefficients by Newton's identities."""
    if inv.A[0] != 1:
        raise ValueError("power sums need the numerator normalized to constant term 1")
    elem = [(-1) ** i * inv.A[i] for i in range(1, 2 * inv.genus + 1)]
    psums = newton_power_sums(elem, k_max)
    return PowerSums(Q=inv.Q, N=tuple(inv.Q**k + 1 - psums[k - 1] for k in range(1, k_max + 1)))


@dataclass(frozen=True)
class ResidueSeries:
    """Coefficients b_0..b_K of B(x), tagged with the route that produced them."""

    Q: BigRat
    b: tuple
    route: str

    def __getitem__(self, k: int) -> Fraction:
        return self.b[k]


def residue_series_exp(ps: PowerSums, k_max: int) -> ResidueSeries:
    if ps.Q == 1:
        raise ValueError("Q = 1 makes the series undefined")
    if len(ps.N) < k_max:
        raise ValueError(f"need N_1..N_{k_max}, have {len(ps.N)}")
    log_b = FormalSeries(
        tuple([Fraction(0)] + [ps.n_k(m) / ((ps.Q**m - 1) * m) for m in range(1, k_max + 1)])
    )
    return ResidueSeries(Q=ps.Q, b=series_exp(log_b).coeffs, route="exp")


def residue_series_recursion(inv: InvariantSet, k_max: int) -> ResidueSeries:
    if inv.A[0] != 1:
        raise ValueError("recursion needs the numerator normalized to constant term 1")
    Q, g = inv.Q, inv.genus
    b = [Fraction(1)]
    for k in range(1, k_max + 1):
        rhs = (Q + 1) * Q ** (k - 1) * b[k - 1]
        if k >= 2:
            rhs -= Q ** (k - 1) * b[k - 2]
        for ell in range(1, min(k, 2 * g) + 1):
            rhs += inv.A[ell] * b[k - ell]
        b.append(rhs / (Q**k - 1))
    return ResidueSeries(Q=Q, b=tuple(b), route="recursion")


def elliptic_beta_recursion(a: BigRat, Q_prev: BigRat, n_max: int) -> list:
    """beta(0)..beta(n_max) for a genus-1 level with trace a over Q_prev.

    (Q^n - 1) beta(n) = (Q^n + Q^(n-1) - a) beta(n-1) - (Q^(n-1) - Q) beta(n-2),
    with beta(0) = 1 and beta(-1) = 0 under the constant-term-1 convention.
    """
    a = Fraction(a)
    Q = Fraction(Q_prev)
    betas = [Fraction(1)]
    prev2 = Fraction(0)
    for n in range(1, n_max + 1):
        value = ((Q**n + Q ** (n - 1) - a) * betas[-1] - (Q ** (n - 1) - Q) * prev2) / (Q**n - 1)
        prev2 = betas[-1]
        betas.append(value)
    return betas


def elliptic_beta_series_check(level: ZetaLevel, n_max: int) -> CheckResult:
    """Residues of the derived levels against the series coefficients, exactly.

    level must be a normalized genus-1 level; beta at step n comes from a
    fresh derivation plus extraction, b_n from the exp route on the level.
    """
    if level.genus != 1:
        raise ValueError("the identity is specific to genus 1")
    if not level.normalized and level.numerator()[0] != 1:
        raise ValueError("the identity needs the constant-term-1 convention")
    inv = extract_invariants(level)
    series = residue_series_exp(power_sums(inv, n_max), n_max)
    mismatches = []
    for n in range(0, n_max + 1):
        if n == 0:
            beta_n = Fraction(1)
        else:
            derived = derive_tower(level, (n,), normalize=False)[-1]
            beta_n = extract_invariants(derived).beta
        if beta_n != series[n]:
            mismatches.append((n, beta_n, series[n]))
    return CheckResult(
        "beta_equals_series",
        not mismatches,
        "exact match to order %d" % n_max if not mismatches else f"mismatches: {mismatches}",
    )


def ratio_bounds_check(betas: Sequence[Fraction], Q_prev: BigRat) -> list:
    """Per-step bound checks 1 < beta(n)/beta(n-1) < (Q^(n/2)+1)/(Q^(n/2)-1).

    The upper bound is tested in the squared form Q^n (r-1)^2 < (r+1)^2 so odd
    n never needs an irrational square root.  Entry n = 1 is reported but the
    bounds genuinely start at n = 2 (the base ratio N_1/(Q-1) may drop below 1
    for admissible traces); callers asserting the theorem should look at n >= 2.
    """
    Q = Fraction(Q_prev)
    out = []
    for n in range(1, len(betas)):
        r = Fraction(betas[n]) / Fraction(betas[n - 1])
        lower = r > 1
        upper = Q**n * (r - 1) ** 2 < (r + 1) ** 2 if r > 1 else False
        out.append(
            CheckResult(
                f"ratio_bounds[n={n}]",
                lower and upper,
                f"r = {rat_str(r)}; lower {'ok' if lower else 'FAIL'}, upper {'ok' if upper else 'FAIL'}",
            )
        )
    return out


def export_elliptic_grid_csv(path, qs: Sequence[int], n_max: int = 8) -> int:
    """Write (q, a, n, beta, b_n, ratio, bounds) rows for the full Hasse grid.

    Returns the number of rows written.  Row order and formatting are fixed,
    so identical inputs produce byte-identical files.
    """
    from zetatower.curves import artin_elliptic, hasse_traces

    rows = 0
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["q", "a", "n", "beta", "b_n", "ratio", "lower_ok", "upper_ok"])
        for q in qs:
            for a in hasse_traces(q):
                level = artin_elliptic(q, a)
                inv = extract_invariants(level)
                series = residue_series_exp(power_sums(inv, n_max), n_max)
                betas = elliptic_beta_recursion(inv.trace(), inv.Q, n_max)
                checks = ratio_bounds_check(betas, inv.Q)
                for n in range(1, n_max + 1):
                    r = betas[n] / betas[n - 1]
                    ok = checks[n - 1].passed
                    writer.writerow(
                        [
                            q,
                            a,
                            n,
                            rat_str(betas[n]),
                            rat_str(series[n]),
                            rat_str(r),
                            int(betas[n] > betas[n - 1]),
                            int(ok),
                        ]
                    )
                    rows += 1
    return rows
