"""Exact arithmetic substrate: big rationals, dense polynomials, rational functions.

Every scalar is a ``fractions.Fraction`` (aliased ``BigRat``); nothing in this
module ever touches a float.  A polynomial is a dense tuple of coefficients,
index ``i`` holding the coefficient of ``T**i``, with no trailing zeros (the
zero polynomial is the empty tuple).  A rational function is stored fully
reduced and canonically normalized: numerator and denominator are coprime and
the denominator's lowest nonzero coefficient is 1.  Structural equality of the
canonical form is therefore mathematical equality, which the rest of the
package (and its tests) relies on everywhere.

All values are immutable after construction and all operations are pure, so
everything here is safe to share freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

BigRat = Fraction

Scalar = Union[int, str, Fraction]

NEG_INF = float("-inf")


def as_rat(x: Scalar) -> Fraction:
    """Coerce ints, ``"p/q"`` strings and Fractions to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rat_str(x: Fraction) -> str:
    """Serialize exactly; round-trips through as_rat."""
    return str(Fraction(x))


class PoleError(ArithmeticError):
    """Raised when a rational function is evaluated at a pole."""

    def __init__(self, point: Fraction):
        self.point = point
        super().__init__(f"pole at evaluation point {point}")


class Poly:
    """Dense univariate polynomial over the rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("Poly is immutable")

    # -- structure ----------------------------------------------------------

    @property
    def degree(self) -> "int | float":
        """Degree, with -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*T")
            else:
                terms.append(f"{c}*T^{i}")
        return "Poly(" + " + ".join(terms) + ")"

    def __getitem__(self, i: int) -> Fraction:
        """Coefficient of T**i (zero beyond the stored degree)."""
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return ZERO
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Poly"):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.coeffs[-1]
        dlen = len(other.coeffs)
        while len(rem) >= dlen and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) < dlen:
                break
            f = rem[-1] / lead
            shift = len(rem) - dlen
            quo[shift] = f
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= f * c
            rem.pop()
        return Poly(quo), Poly(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- analysis ------------------------------------------------------------

    def __call__(self, t: Scalar) -> Fraction:
        t = as_rat(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ValueError("zero polynomial has no monic form")
        lead = self.coeffs[-1]
        return Poly([c / lead for c in self.coeffs])

    def scale_var(self, c: Scalar) -> "Poly":
        """p(c*T) for a nonzero constant c."""
        c = as_rat(c)
        out, power = [], Fraction(1)
        for coeff in self.coeffs:
            out.append(coeff * power)
            power *= c
        return Poly(out)

    def reverse_scaled(self, c: Scalar) -> "Poly":
        """T**deg * p(c/T), the coefficient reversal with a substitution scale."""
        c = as_rat(c)
        out, power = [], Fraction(1)
        for coeff in self.coeffs:
            out.append(coeff * power)
            power *= c
        return Poly(out[::-1])

    def lowest_nonzero(self) -> Fraction:
        for c in self.coeffs:
            if c != 0:
                return c
        raise ValueError("zero polynomial has no nonzero coefficient")


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly([x])
    raise TypeError(f"cannot interpret {x!r} as a polynomial")


ZERO = Poly()
ONE = Poly([1])
X = Poly([0, 1])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor over the rationals."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd undefined for two zero polynomials")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


class RatFunc:
    """Reduced quotient of two polynomials in one formal variable.

    Canonical form: gcd(num, den) = 1 and the denominator's lowest nonzero
    coefficient equals 1 (its constant term, whenever that is nonzero).
    """

    __slots__ = ("num", "den")

    def __init__(self, num=ZERO, den=ONE):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = ZERO, ONE
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            c = den.lowest_nonzero()
            if c != 1:
                num = num * (1 / c)
                den = den * (1 / c)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("RatFunc is immutable")

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den == ONE

    def to_poly(self) -> Poly:
        if not self.is_poly():
            raise ValueError(f"not a polynomial: denominator {self.den!r}")
        return self.num

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, Poly)):
            return self == RatFunc(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFunc({self.num!r} / {self.den!r})"

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        return self + (-_as_ratfunc(other))

    def __rsub__(self, other) -> "RatFunc":
        return _as_ratfunc(other) - self

    def __mul__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return _as_ratfunc(other) / self

    # -- evaluation and substitution ------------------------------------------

    def __call__(self, t: Scalar) -> Fraction:
        t = as_rat(t)
        d = self.den(t)
        if d == 0:
            raise PoleError(t)
        return self.num(t) / d

    def scale_var(self, c: Scalar) -> "RatFunc":
        """f(c*T) for nonzero c."""
        c = as_rat(c)
        if c == 0:
            raise ValueError("variable scale must be nonzero")
        return RatFunc(self.num.scale_var(c), self.den.scale_var(c))

    def subst_reciprocal(self, c: Scalar) -> "RatFunc":
        """f(c/T) for nonzero c, as a rational function of T."""
        c = as_rat(c)
        if c == 0:
            raise ValueError("substitution constant must be nonzero")
        num = self.num.reverse_scaled(c)
        den = self.den.reverse_scaled(c)
        dn = len(self.num.coeffs) - 1 if self.num.coeffs else 0
        dd = len(self.den.coeffs) - 1
        if dd >= dn:
            num = num * X ** (dd - dn)
        else:
            den = den * X ** (dn - dd)
        return RatFunc(num, den)


def _as_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    return RatFunc(_as_poly(x))


RF_ZERO = RatFunc(ZERO)
RF_ONE = RatFunc(ONE)


def residue_simple_pole(f: RatFunc, t0: Scalar) -> Fraction:
    """Residue of f at a simple pole t0, computed as num(t0)/den'(t0)."""
    t0 = as_rat(t0)
    if f.den(t0) != 0:
        raise ValueError(f"not a pole: {t0}")
    d = f.den.derivative()(t0)
    if d == 0:
        raise ValueError(f"pole not simple at {t0}")
    return f.num(t0) / d


@dataclass(frozen=True)
class FormalSeries:
    """Power series truncated at a stated order; arithmetic keeps the min order."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_rat(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant term")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> "FormalSeries":
        return cls(tuple(p[i] for i in range(order + 1)))

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        k = min(self.order, other.order)
        return FormalSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(k + 1)))

    def __sub__(self, other: "FormalSeries") -> "FormalSeries":
        k = min(self.order, other.order)
        return FormalSeries(tuple(self.coeffs[i] - other.coeffs[i] for i in range(k + 1)))

    def __mul__(self, other: "FormalSeries") -> "FormalSeries":
        k = min(self.order, other.order)
        out = [Fraction(0)] * (k + 1)
        for i in range(k + 1):
            a = self.coeffs[i]
            if a == 0:
                continue
            for j in range(k + 1 - i):
                out[i + j] += a * other.coeffs[j]
        return FormalSeries(tuple(out))


def series_exp(g: FormalSeries) -> FormalSeries:
    """exp of a series with zero constant term, truncated to the same order.

    Uses the derivative recursion exp(g)' = g' * exp(g), so every coefficient
    is an exact rational.
    """
    if g[0] != 0:
        raise ValueError("series_exp requires a zero constant term")
    k = g.order
    e = [Fraction(1)] + [Fraction(0)] * k
    for n in range(1, k + 1):
        acc = Fraction(0)
        for j in range(1, n + 1):
            acc += j * g[j] * e[n - j]
        e[n] = acc / n
    return FormalSeries(tuple(e))


def newton_power_sums(elem: Sequence[Fraction], k_max: int) -> list:
    """Power sums p_1..p_K from elementary symmetric values e_1..e_m.

    Newton's identities; no root extraction.  elem[i-1] holds e_i, values
    beyond the given list are zero.
    """
    e = [as_rat(c) for c in elem]
    m = len(e)

    def ei(i: int) -> Fraction:
        return e[i - 1] if 1 <= i <= m else Fraction(0)

    p: list = []
    for k in range(1, k_max + 1):
        acc = (-1) ** (k - 1) * k * ei(k)
        for i in range(1, k):
            acc += (-1) ** (i - 1) * ei(i) * p[k - i - 1]
        p.append(acc)
    return p
