"""Exact arithmetic primitives: half-integer spins, turn angles, phases.

All phase bookkeeping in this package reduces to three exact carriers:

* :class:`HalfInt` -- a spin or spin projection stored as twice its value,
  so half-odd-integer spins are exact and fermion tests are parity tests.
* :class:`TurnAngle` -- an azimuthal angle stored as a rational number of
  full turns (possibly outside [0, 1), the integer part counts windings).
  Angles that enter through floating point are snapped to a rational when
  a nearby one exists, otherwise they stay marked inexact.
* :class:`Phase` -- a unit complex number e^{i pi h} with h a rational
  number of half-turns, plus an optional inexact residue in radians.
  A phase with integer h and no residue is exactly +1 or -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InexactAngle, InexactTie, SpinError, ValidationError

TWO_PI = 2.0 * math.pi

# Floats snap to a rational number of turns only when a denominator this
# small reproduces them within ANGLE_SNAP_TOL radians.
SNAP_MAX_DENOMINATOR = 10**6
ANGLE_SNAP_TOL = 1e-9


@dataclass(frozen=True, order=True)
class HalfInt:
    """An integer or half-odd-integer, stored as twice its value."""

    twice: int

    def __post_init__(self) -> None:
        if not isinstance(self.twice, int):
            raise SpinError(f"half-integer must store an int, got {self.twice!r}")

    @classmethod
    def parse(cls, value: Union[str, int, Fraction, "HalfInt"]) -> "HalfInt":
        """Parse "3/2", "-1/2", "2", an int, or a Fraction with denominator 1 or 2."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, Fraction):
            frac = value
        elif isinstance(value, str):
            try:
                frac = Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise SpinError(f"cannot parse half-integer from {value!r}") from exc
        else:
            raise SpinError(f"cannot parse half-integer from {value!r}")
        if frac.denominator not in (1, 2):
            raise SpinError(f"{value!r} is not an integer or half-odd-integer")
        return cls(int(frac * 2))

    @property
    def is_half_odd(self) -> bool:
        """True for half-odd-integer values (fermionic spins)."""
        return self.twice % 2 == 1

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def as_float(self) -> float:
        return self.twice / 2.0

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice))

    def __add__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice + other.twice)

    def __sub__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice - other.twice)

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


def check_spin_projection(s: HalfInt, m: HalfInt) -> None:
    """Require |m| <= s and that m differs from s by an integer."""
    if s.twice < 0:
        raise SpinError(f"spin must be non-negative, got {s}")
    if abs(m.twice) > s.twice:
        raise SpinError(f"projection m={m} exceeds spin s={s}")
    if (s.twice - m.twice) % 2 != 0:
        raise SpinError(f"projection m={m} and spin s={s} differ by a non-integer")


def _as_fraction_turns(value: Union[str, int, float, Fraction]) -> Fraction:
    """Parse a rational number of turns from a string/int/Fraction.

    Floats are accepted only when they are exactly representable as a
    rational with a small denominator (e.g. 0.25); otherwise the caller
    should use :meth:`TurnAngle.from_radians`.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"cannot parse turns from {value!r}") from exc
    if isinstance(value, float):
        frac = Fraction(value).limit_denominator(SNAP_MAX_DENOMINATOR)
        if abs(float(frac) - value) * TWO_PI < ANGLE_SNAP_TOL:
            return frac
        raise ValidationError(f"{value!r} is not close to a rational number of turns")
    raise ValidationError(f"cannot parse turns from {value!r}")


@dataclass(frozen=True)
class TurnAngle:
    """An angle as a number of full turns, exact when possible.

    Exactly one of ``turns`` (a Fraction) and ``approx_radians`` (a float)
    is set.  Exact angles support exact ordering, ties and winding counts;
    inexact angles only support float comparisons with a tolerance guard.
    """

    turns: Fraction | None
    approx_radians: float | None = None

    def __post_init__(self) -> None:
        if (self.turns is None) == (self.approx_radians is None):
            raise ValidationError("TurnAngle needs exactly one of turns/approx_radians")

    @classmethod
    def from_turns(cls, value: Union[str, int, float, Fraction]) -> "TurnAngle":
        return cls(turns=_as_fraction_turns(value))

    @classmethod
    def from_radians(cls, radians: float, snap_tol: float = ANGLE_SNAP_TOL) -> "TurnAngle":
        """Build from a float angle, snapping to a rational number of turns
        when one with denominator <= 10^6 lies within ``snap_tol`` radians."""
        turns = radians / TWO_PI
        candidate = Fraction(turns).limit_denominator(SNAP_MAX_DENOMINATOR)
        if abs(float(candidate) * TWO_PI - radians) < snap_tol:
            return cls(turns=candidate)
        return cls(turns=None, approx_radians=radians)

    @property
    def is_exact(self) -> bool:
        return self.turns is not None

    @property
    def radians(self) -> float:
        if self.turns is not None:
            return float(self.turns) * TWO_PI
        return float(self.approx_radians)  # type: ignore[arg-type]

    def turns_or_raise(self) -> Fraction:
        if self.turns is None:
            raise InexactAngle(f"exact angle required, got {self!r}")
        return self.turns

    def mod_turn(self) -> "TurnAngle":
        """Reduce into [0, 1) turns, discarding the winding count."""
        if self.turns is not None:
            return TurnAngle(turns=self.turns % 1)
        return TurnAngle(turns=None, approx_radians=self.radians % TWO_PI)

    @property
    def winding(self) -> int:
        """Number of whole turns (floor)."""
        return math.floor(self.turns_or_raise())

    def __add__(self, other: Union["TurnAngle", Fraction, int]) -> "TurnAngle":
        if isinstance(other, (Fraction, int)):
            other = TurnAngle(turns=Fraction(other))
        if self.turns is not None and other.turns is not None:
            return TurnAngle(turns=self.turns + other.turns)
        return TurnAngle(turns=None, approx_radians=self.radians + other.radians)

    def __sub__(self, other: Union["TurnAngle", Fraction, int]) -> "TurnAngle":
        if isinstance(other, (Fraction, int)):
            other = TurnAngle(turns=Fraction(other))
        if self.turns is not None and other.turns is not None:
            return TurnAngle(turns=self.turns - other.turns)
        return TurnAngle(turns=None, approx_radians=self.radians - other.radians)

    def __neg__(self) -> "TurnAngle":
        if self.turns is not None:
            return TurnAngle(turns=-self.turns)
        return TurnAngle(turns=None, approx_radians=-self.radians)

    def __str__(self) -> str:
        if self.turns is not None:
            return f"{self.turns} turn"
        return f"~{self.radians:.12g} rad"


def compare_angles(a: TurnAngle, b: TurnAngle, tol: float = ANGLE_SNAP_TOL) -> int:
    """Order two angles: -1, 0 or +1.

    Exact angles compare exactly (0 means a certified tie).  If either
    side is inexact, the angles must differ by more than ``tol`` radians;
    otherwise the tie cannot be certified and :class:`InexactTie` is raised.
    """
    if a.turns is not None and b.turns is not None:
        if a.turns == b.turns:
            return 0
        return -1 if a.turns < b.turns else 1
    diff = a.radians - b.radians
    if abs(diff) < tol:
        raise InexactTie(
            f"angles {a} and {b} are within {tol} rad but not certifiably equal"
        )
    return -1 if diff < 0 else 1


@dataclass(frozen=True)
class Phase:
    """A unit phase e^{i pi half_turns} * e^{i inexact_radians}.

    ``half_turns`` is an exact rational; the phase is exact when
    ``inexact_radians`` is zero.  Composition adds both parts.  Equality
    is phase-value equality and is only ever True between exact phases
    (inexact phases never silently compare equal; use
    :meth:`approx_equal`).
    """

    half_turns: Fraction = Fraction(0)
    inexact_radians: float = 0.0

    @property
    def is_exact(self) -> bool:
        return self.inexact_radians == 0.0

    @property
    def is_real_unit(self) -> bool:
        """True when the phase is exactly +1 or -1."""
        return self.is_exact and self.half_turns.denominator == 1

    def sign(self) -> int:
        """Return +1/-1 for an exactly real phase; raise otherwise."""
        if not self.is_real_unit:
            raise ValidationError(f"phase {self} is not exactly +1 or -1")
        return -1 if (self.half_turns.numerator % 2) else 1

    @property
    def value(self) -> complex:
        return complex(
            math.cos(math.pi * float(self.half_turns) + self.inexact_radians),
            math.sin(math.pi * float(self.half_turns) + self.inexact_radians),
        )

    def compose(self, other: "Phase") -> "Phase":
        return Phase(
            half_turns=self.half_turns + other.half_turns,
            inexact_radians=self.inexact_radians + other.inexact_radians,
        )

    __mul__ = compose

    def inverse(self) -> "Phase":
        return Phase(half_turns=-self.half_turns, inexact_radians=-self.inexact_radians)

    def __truediv__(self, other: "Phase") -> "Phase":
        return self.compose(other.inverse())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Phase):
            return NotImplemented
        if self.is_exact and other.is_exact:
            return (self.half_turns - other.half_turns) % 2 == 0
        return False

    def __hash__(self) -> int:
        if self.is_exact:
            return hash(self.half_turns % 2)
        return hash((self.half_turns, self.inexact_radians))

    def approx_equal(self, other: "Phase", tol: float = ANGLE_SNAP_TOL) -> bool:
        delta = (
            math.pi * float(self.half_turns - other.half_turns)
            + self.inexact_radians
            - other.inexact_radians
        )
        return abs(math.remainder(delta, TWO_PI)) < tol

    def display(self) -> str:
        """Render as '+1', '-1', 'e^{i pi r}' with rational r, or an
        approximate value carrying a tolerance note."""
        if self.is_exact:
            reduced = self.half_turns % 2
            if reduced == 0:
                return "+1"
            if reduced == 1:
                return "-1"
            return f"e^{{i pi {reduced}}}"
        total = math.pi * float(self.half_turns) + self.inexact_radians
        return f"~e^{{i {math.remainder(total, TWO_PI):.12g}}} (inexact, tol {ANGLE_SNAP_TOL})"

    def __str__(self) -> str:
        return self.display()


PHASE_ONE = Phase()
PHASE_MINUS_ONE = Phase(half_turns=Fraction(1))


def winding_phase(m: HalfInt, winding_delta: int) -> Phase:
    """Phase e^{i 2 pi m N} acquired by projection m under N extra turns.

    Always exactly +-1 when 2m is an integer (it is, by construction):
    e^{i 2 pi m N} = (-1)^{2 m N}.
    """
    if not isinstance(winding_delta, int):
        raise ValidationError(f"winding count must be an integer, got {winding_delta!r}")
    return Phase(half_turns=Fraction(m.twice * winding_delta))


def compose(*phases: Phase) -> Phase:
    """Product of phases (sum of half-turn exponents)."""
    result = PHASE_ONE
    for ph in phases:
        result = result.compose(ph)
    return result


def canonical_rotation_phase(m: HalfInt, phi: TurnAngle) -> Phase:
    """Phase e^{i m phi} from rotating a projection-m state by phi about z.

    Exact angles contribute an exact rational number of half-turns
    (2 m * turns); inexact angles contribute an inexact residue.
    """
    if phi.turns is not None:
        return Phase(half_turns=phi.turns * m.twice)
    return Phase(inexact_radians=m.as_float() * phi.radians)
