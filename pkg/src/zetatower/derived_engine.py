"""The inductive derivation step of the zeta tower.

Given a level with prime power Q, zeta Z(T) and special values, the next
level for index n is the finite double-composition sum

    q^(C(n,2)(g-1)) * sum over a = 1..n of
        [sum over compositions (k) of n-a:  w(k) * T/(T - Q^(a+k_p-n))]
      * Z(Q^(n-a) * T)
      * [sum over compositions (l) of a-1:  w(l) / (1 - Q^(n-a+1+l_1) * T)]

with composition weight w(k) = prod v_{k_i} / prod_j (1 - Q^(k_j + k_{j+1})),
where v_N is the product of the first N special values of the previous level.
An empty composition sum (n-a = 0, resp. a-1 = 0) contributes the constant 1
with no boundary factor.  Everything is exact rational-function arithmetic;
the apparent extra poles at intermediate powers of Q cancel identically, and
the result is re-validated before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence, Union

from zetatower.curves import CurveSpec, ZetaLevel, artin_zeta, validate_zeta_level
from zetatower.exact_arith import (
    BigRat,
    Poly,
    RatFunc,
    residue_simple_pole,
)


class DerivationError(RuntimeError):
    """A derived level failed validation; signals an implementation bug."""


def compositions(total: int) -> Iterator[tuple]:
    """All ordered compositions of ``total`` into positive parts, lexicographically.

    total = 0 yields the empty composition exactly once; total = n >= 1 yields
    2**(n-1) tuples.
    """
    if total < 0:
        raise ValueError("compositions of a negative total")
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


@dataclass(frozen=True)
class SpecialValues:
    """Special values of one level: zeta_hat(k) for k = 1..depth and their products.

    zeta_hat(1) is the residue at T = 1; zeta_hat(k) for k >= 2 is the exact
    value at T = Q^-k (never a pole, the only poles being T = 1 and T = 1/Q).
    vhat(N) = prod_{k<=N} zeta_hat(k), with vhat(0) = 1.
    """

    Q: BigRat
    values: tuple  # values[k-1] = zeta_hat(k)
    vhats: tuple  # vhats[N] = vhat(N), length depth+1

    @property
    def zeta1(self) -> Fraction:
        return self.values[0]

    @property
    def depth(self) -> int:
        return len(self.values)

    def zeta_hat(self, k: int) -> Fraction:
        return self.values[k - 1]

    def vhat(self, n: int) -> Fraction:
        return self.vhats[n]


def special_values(z: ZetaLevel, n_max: int) -> SpecialValues:
    if n_max < 1:
        raise ValueError("need depth >= 1")
    values = [residue_simple_pole(z.zeta, 1)]
    for k in range(2, n_max + 1):
        values.append(z.zeta(z.Q**-k))
    vhats = [Fraction(1)]
    for v in values:
        vhats.append(vhats[-1] * v)
    return SpecialValues(Q=z.Q, values=tuple(values), vhats=tuple(vhats))


def composition_weight(comp: Sequence[int], sv: SpecialValues) -> Fraction:
    """prod v_{k_i} / prod_j (1 - Q^(k_j + k_{j+1})) for one composition."""
    w = Fraction(1)
    for part in comp:
        w *= sv.vhat(part)
    for left, right in zip(comp, comp[1:]):
        w /= 1 - sv.Q ** (left + right)
    return w


def derive_step(z: ZetaLevel, n: int) -> ZetaLevel:
    """Produce the next tower level; exact, validated, and pure."""
    if n < 1:
        raise ValueError("derivation index must be >= 1")
    g = z.genus
    qp = z.Q
    sv = special_values(z, n) if n > 1 else None

    total = RatFunc(0)
    for a in range(1, n + 1):
        mid = z.zeta.scale_var(qp ** (n - a))

        if n - a == 0:
            right = RatFunc(1)
        else:
            right = RatFunc(0)
            for comp in compositions(n - a):
                w = composition_weight(comp, sv)
                boundary = RatFunc(Poly([0, 1]), Poly([-(qp ** (a + comp[-1] - n)), 1]))
                right = right + w * boundary

        if a - 1 == 0:
            left = RatFunc(1)
        else:
            left = RatFunc(0)
            for comp in compositions(a - 1):
                w = composition_weight(comp, sv)
                boundary = RatFunc(1, Poly([1, -(qp ** (n - a + 1 + comp[0]))]))
                left = left + w * boundary

        total = total + right * mid * left

    zeta_new = qp ** (comb(n, 2) * (g - 1)) * total
    level = ZetaLevel(
        steps=z.steps + (n,),
        Q=qp**n,
        genus=g,
        zeta=zeta_new,
        normalized=False,
        label=z.label,
    )
    failed = [c for c in validate_zeta_level(level) if not c.passed]
    if failed:
        raise DerivationError(
            "derivation inconsistency at steps "
            f"{level.steps}: {'; '.join(f'{c.name}: {c.detail}' for c in failed)}"
        )
    return level


def normalize_level(z: ZetaLevel) -> ZetaLevel:
    """Divide the zeta by its constant numerator coefficient and record it."""
    alpha0 = z.numerator()[0]
    if alpha0 == 0:
        raise ValueError("cannot normalize: numerator constant term is zero")
    return ZetaLevel(
        steps=z.steps,
        Q=z.Q,
        genus=z.genus,
        zeta=z.zeta * (1 / alpha0),
        normalized=True,
        scale=z.scale * alpha0,
        label=z.label,
    )


def derive_tower(
    base: Union[CurveSpec, ZetaLevel], steps: Sequence[int], normalize: bool = False
) -> list:
    """Iterate derive_step along ``steps``; returns the derived levels in order.

    With normalize=True every level (including the base) is divided by its
    constant numerator coefficient before deriving further; the constants are
    recorded in each level's ``scale`` field.
    """
    steps = tuple(int(n) for n in steps)
    if not steps:
        raise ValueError("derivation tuple must be nonempty")
    if any(n < 1 for n in steps):
        raise ValueError("derivation tuple entries must be >= 1")
    cur = artin_zeta(base) if isinstance(base, CurveSpec) else base
    if normalize:
        cur = normalize_level(cur)
    levels = []
    for n in steps:
        cur = derive_step(cur, n)
        if normalize:
            cur = normalize_level(cur)
        levels.append(cur)
    return levels
