"""Exact Clebsch-Gordan coefficients from ladder-operator recursion.

Every coefficient <j1 m1; j2 m2 | J M> is a signed square root of a
rational number, so the whole table can be built exactly:

* the stretched state |Jmax, Jmax> is a single product state;
* each lower-M state follows by applying the total lowering operator
  J- = J1- + J2- and dividing by sqrt(J(J+1) - M(M-1));
* each lower-J top state |J, J> is fixed by annihilation under the total
  raising operator plus normalization, signed so the coefficient at
  m1 = j1 is positive.

The arithmetic type :class:`SqrtRational` stores sign and radicand; sums
that arise in the recursion always collapse back to a single signed root
(if two roots a, b and their sum are all signed roots of rationals, then
a/b must be rational).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .errors import IrrationalSum, ValidationError
from .exact import HalfInt


def _fraction_sqrt(value: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None."""
    if value < 0:
        return None
    num = math.isqrt(value.numerator)
    den = math.isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


@dataclass(frozen=True)
class SqrtRational:
    """A number of the form sign * sqrt(radicand) with rational radicand."""

    sign: int
    radicand: Fraction

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise ValidationError(f"sign must be -1, 0 or 1, got {self.sign}")
        if (self.sign == 0) != (self.radicand == 0):
            raise ValidationError("zero sign requires zero radicand and vice versa")
        if self.radicand < 0:
            raise ValidationError("radicand must be non-negative")

    @classmethod
    def zero(cls) -> "SqrtRational":
        return cls(0, Fraction(0))

    @classmethod
    def one(cls) -> "SqrtRational":
        return cls(1, Fraction(1))

    @classmethod
    def sqrt_of(cls, value: Fraction) -> "SqrtRational":
        if value < 0:
            raise ValidationError(f"cannot take sqrt of negative rational {value}")
        if value == 0:
            return cls.zero()
        return cls(1, value)

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def squared(self) -> Fraction:
        return self.radicand

    def as_float(self) -> float:
        return self.sign * math.sqrt(float(self.radicand))

    def __neg__(self) -> "SqrtRational":
        return SqrtRational(-self.sign, self.radicand)

    def __mul__(self, other: "SqrtRational") -> "SqrtRational":
        sign = self.sign * other.sign
        if sign == 0:
            return SqrtRational.zero()
        return SqrtRational(sign, self.radicand * other.radicand)

    def __truediv__(self, other: "SqrtRational") -> "SqrtRational":
        if other.is_zero:
            raise ZeroDivisionError("division by zero SqrtRational")
        if self.is_zero:
            return SqrtRational.zero()
        return SqrtRational(self.sign * other.sign, self.radicand / other.radicand)

    def __add__(self, other: "SqrtRational") -> "SqrtRational":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        root = _fraction_sqrt(self.radicand / other.radicand)
        if root is None:
            raise IrrationalSum(
                f"sqrt({self.radicand}) and sqrt({other.radicand}) do not combine"
            )
        coeff = self.sign * root + other.sign
        if coeff == 0:
            return SqrtRational.zero()
        return SqrtRational(1 if coeff > 0 else -1, coeff * coeff * other.radicand)

    def __sub__(self, other: "SqrtRational") -> "SqrtRational":
        return self + (-other)


# A coupled-basis table: {(J, M): {(m1, m2): coefficient}}, all spins as
# Fractions.  Only non-zero coefficients are stored.
CGTable = Dict[Tuple[Fraction, Fraction], Dict[Tuple[Fraction, Fraction], SqrtRational]]


def _lower_factor(j: Fraction, m: Fraction) -> Fraction:
    """J-|j m> = sqrt((j+m)(j-m+1)) |j m-1>."""
    return (j + m) * (j - m + 1)


def _raise_factor(j: Fraction, m: Fraction) -> Fraction:
    """J+|j m> = sqrt((j-m)(j+m+1)) |j m+1>."""
    return (j - m) * (j + m + 1)


def _m1_range(j1: Fraction, j2: Fraction, big_m: Fraction) -> list[Fraction]:
    """All m1 with |m1| <= j1 and |big_m - m1| <= j2, ascending."""
    lo = max(-j1, big_m - j2)
    hi = min(j1, big_m + j2)
    out = []
    m1 = lo
    while m1 <= hi:
        out.append(m1)
        m1 += 1
    return out


def _stretched_top(j1: Fraction, j2: Fraction, big_j: Fraction) -> Dict[Tuple[Fraction, Fraction], SqrtRational]:
    """Coefficients of |J, M=J> fixed by J+ annihilation and normalization."""
    m1_values = _m1_range(j1, j2, big_j)
    coeffs = [SqrtRational.one()]
    for m1 in m1_values[:-1]:
        # Raising annihilates: c(m1) A1(m1) + c(m1+1) A2(J-m1-1) = 0.
        r1 = _raise_factor(j1, m1)
        r2 = _raise_factor(j2, big_j - m1 - 1)
        step = SqrtRational.sqrt_of(r1 / r2)
        coeffs.append(-(coeffs[-1] * step))
    norm = sum((c.squared() for c in coeffs), Fraction(0))
    inv = SqrtRational.sqrt_of(1 / norm)
    coeffs = [c * inv for c in coeffs]
    if coeffs[-1].sign < 0:  # anchor at the largest m1 must be positive
        coeffs = [-c for c in coeffs]
    return {
        (m1, big_j - m1): c for m1, c in zip(m1_values, coeffs) if not c.is_zero
    }


def cg_table(j1: HalfInt | Fraction, j2: HalfInt | Fraction) -> CGTable:
    """Full exact Clebsch-Gordan table for coupling j1 with j2."""
    f1 = j1.as_fraction() if isinstance(j1, HalfInt) else Fraction(j1)
    f2 = j2.as_fraction() if isinstance(j2, HalfInt) else Fraction(j2)
    if f1 < 0 or f2 < 0 or (2 * f1).denominator != 1 or (2 * f2).denominator != 1:
        raise ValidationError(f"invalid spins {j1}, {j2}")
    table: CGTable = {}
    big_j = f1 + f2
    while big_j >= abs(f1 - f2):
        state = _stretched_top(f1, f2, big_j)
        table[(big_j, big_j)] = state
        big_m = big_j
        while big_m > -big_j:
            norm = SqrtRational.sqrt_of(1 / _lower_factor(big_j, big_m))
            lowered: Dict[Tuple[Fraction, Fraction], SqrtRational] = {}
            for (m1, m2), c in state.items():
                if m1 > -f1:
                    term = c * SqrtRational.sqrt_of(_lower_factor(f1, m1))
                    key = (m1 - 1, m2)
                    lowered[key] = lowered.get(key, SqrtRational.zero()) + term
                if m2 > -f2:
                    term = c * SqrtRational.sqrt_of(_lower_factor(f2, m2))
                    key = (m1, m2 - 1)
                    lowered[key] = lowered.get(key, SqrtRational.zero()) + term
            state = {
                key: c * norm for key, c in lowered.items() if not c.is_zero
            }
            big_m -= 1
            table[(big_j, big_m)] = state
        big_j -= 1
    return table


def coefficient(
    table: CGTable, big_j: Fraction, big_m: Fraction, m1: Fraction, m2: Fraction
) -> SqrtRational:
    return table.get((big_j, big_m), {}).get((m1, m2), SqrtRational.zero())


def swap_symmetry_sign(s: HalfInt, big_s: int) -> int:
    """Sign relating C(m2, m1) to C(m1, m2) when coupling s with s to S.

    Determined empirically from the exact table: for every M and every
    (m1, m2) with a non-zero coefficient, C(m2, m1) = sign * C(m1, m2)
    with one consistent sign.  (Equivalently (-1)^(2s - S), but the value
    returned here is read off the ladder recursion, not assumed.)
    """
    f = s.as_fraction()
    big = Fraction(big_s)
    if big < 0 or big > 2 * f or big.denominator != 1:
        raise ValidationError(f"total spin {big_s} out of range for s={s}")
    table = cg_table(s, s)
    sign: int | None = None
    for (j, _m), coeffs in table.items():
        if j != big:
            continue
        for (m1, m2), c in coeffs.items():
            if c.sign == 0:
                continue
            mirrored = coeffs.get((m2, m1), SqrtRational.zero())
            if mirrored.radicand != c.radicand:
                raise IrrationalSum(
                    f"swap partners differ in magnitude for S={big_s}: {c} vs {mirrored}"
                )
            this = mirrored.sign * c.sign
            if sign is None:
                sign = this
            elif sign != this:
                raise IrrationalSum(f"inconsistent swap symmetry for S={big_s}")
    if sign is None:
        raise ValidationError(f"no non-zero coefficients found for S={big_s}")
    return sign
