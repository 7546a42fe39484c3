"""Exact half-integer, turn-angle and unit-phase arithmetic."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from permsym.errors import InexactAngle, InexactTie, SpinError, ValidationError
from permsym.exact import (
    ANGLE_SNAP_TOL,
    PHASE_MINUS_ONE,
    PHASE_ONE,
    HalfInt,
    Phase,
    TurnAngle,
    canonical_rotation_phase,
    check_spin_projection,
    compare_angles,
    compose,
    winding_phase,
)

half_ints = st.integers(min_value=-20, max_value=20).map(HalfInt)
rational_turns = st.fractions(
    min_value=Fraction(-5), max_value=Fraction(5), max_denominator=1000
)


class TestHalfInt:
    def test_parse_forms(self):
        assert HalfInt.parse("3/2").twice == 3
        assert HalfInt.parse("-1/2").twice == -1
        assert HalfInt.parse("2").twice == 4
        assert HalfInt.parse(2).twice == 4
        assert HalfInt.parse(Fraction(5, 2)).twice == 5
        h = HalfInt(3)
        assert HalfInt.parse(h) is h

    @pytest.mark.parametrize("bad", ["1/3", "abc", "1/0", 1.5, None])
    def test_parse_rejects(self, bad):
        with pytest.raises(SpinError):
            HalfInt.parse(bad)

    def test_parity(self):
        assert HalfInt.parse("1/2").is_half_odd
        assert not HalfInt.parse("1/2").is_integer
        assert HalfInt.parse(1).is_integer
        assert not HalfInt.parse(1).is_half_odd
        assert HalfInt(0).is_integer

    def test_fraction_and_float(self):
        assert HalfInt(3).as_fraction() == Fraction(3, 2)
        assert HalfInt(-1).as_float() == -0.5

    def test_str(self):
        assert str(HalfInt(3)) == "3/2"
        assert str(HalfInt(4)) == "2"
        assert str(HalfInt(-1)) == "-1/2"

    @given(half_ints, half_ints)
    def test_ordering_matches_fractions(self, a, b):
        assert (a < b) == (a.as_fraction() < b.as_fraction())
        assert (a == b) == (a.as_fraction() == b.as_fraction())


class TestSpinProjection:
    def test_valid(self):
        check_spin_projection(HalfInt.parse("3/2"), HalfInt.parse("-1/2"))
        check_spin_projection(HalfInt(2), HalfInt(0))

    def test_mixed_parity_rejected(self):
        with pytest.raises(SpinError):
            check_spin_projection(HalfInt.parse("1/2"), HalfInt.parse(0))

    def test_out_of_range_rejected(self):
        with pytest.raises(SpinError):
            check_spin_projection(HalfInt.parse("1/2"), HalfInt.parse("3/2"))

    def test_negative_spin_rejected(self):
        with pytest.raises(SpinError):
            check_spin_projection(HalfInt(-1), HalfInt(-1))


class TestTurnAngle:
    def test_from_turns_is_exact(self):
        a = TurnAngle.from_turns(Fraction(1, 3))
        assert a.is_exact
        assert a.turns_or_raise() == Fraction(1, 3)
        assert math.isclose(a.radians, 2 * math.pi / 3)

    def test_from_radians_snaps_simple_fractions(self):
        a = TurnAngle.from_radians(math.pi / 3)
        assert a.is_exact
        assert a.turns_or_raise() == Fraction(1, 6)

    def test_from_radians_keeps_far_values_inexact(self):
        # 1/997 + 1/(997*2000003) turns sits ~3.2e-9 rad from the nearest
        # rational with denominator <= 10^6, beyond the snap tolerance.
        t = Fraction(1, 997) + Fraction(1, 997 * 2000003)
        a = TurnAngle.from_radians(float(t) * 2 * math.pi)
        assert not a.is_exact
        with pytest.raises(InexactAngle):
            a.turns_or_raise()
        assert math.isclose(a.radians, float(t) * 2 * math.pi)

    def test_mod_turn_and_winding(self):
        a = TurnAngle.from_turns(Fraction(5, 4))
        assert a.mod_turn().turns_or_raise() == Fraction(1, 4)
        assert a.winding == 1
        assert TurnAngle.from_turns(Fraction(-1, 4)).winding == -1

    def test_arithmetic(self):
        a = TurnAngle.from_turns(Fraction(1, 3))
        b = TurnAngle.from_turns(Fraction(1, 2))
        assert (a + b).turns_or_raise() == Fraction(5, 6)
        assert (b - a).turns_or_raise() == Fraction(1, 6)
        assert (-a).turns_or_raise() == Fraction(-1, 3)
        assert (a + Fraction(1, 6)).turns_or_raise() == Fraction(1, 2)

    def test_mixing_exact_and_inexact_degrades(self):
        a = TurnAngle.from_turns(Fraction(1, 3))
        rough = TurnAngle(turns=None, approx_radians=1.0)
        assert not (a + rough).is_exact

    @given(rational_turns, rational_turns)
    def test_addition_matches_fractions(self, x, y):
        total = TurnAngle.from_turns(x) + TurnAngle.from_turns(y)
        assert total.turns_or_raise() == x + y


class TestCompareAngles:
    def test_exact_comparison(self):
        a = TurnAngle.from_turns(Fraction(1, 3))
        b = TurnAngle.from_turns(Fraction(2, 3))
        assert compare_angles(a, b) == -1
        assert compare_angles(b, a) == 1
        assert compare_angles(a, a) == 0

    def test_inexact_far_apart_is_fine(self):
        a = TurnAngle(turns=None, approx_radians=1.0)
        b = TurnAngle(turns=None, approx_radians=2.0)
        assert compare_angles(a, b) == -1

    def test_inexact_near_equal_raises(self):
        a = TurnAngle(turns=None, approx_radians=1.0)
        b = TurnAngle(turns=None, approx_radians=1.0 + 1e-12)
        with pytest.raises(InexactTie):
            compare_angles(a, b)

    def test_exact_tie_is_not_an_error(self):
        a = TurnAngle.from_turns(Fraction(1, 7))
        b = TurnAngle.from_turns(Fraction(1, 7))
        assert compare_angles(a, b) == 0


class TestPhase:
    def test_identity_and_minus_one(self):
        assert PHASE_ONE.sign() == 1
        assert PHASE_MINUS_ONE.sign() == -1
        assert PHASE_ONE.is_real_unit
        assert PHASE_MINUS_ONE.is_real_unit

    def test_half_turns_reduce_mod_two(self):
        assert Phase(half_turns=Fraction(2)).sign() == 1
        assert Phase(half_turns=Fraction(3)).sign() == -1
        assert Phase(half_turns=Fraction(-1)).sign() == -1

    def test_compose_and_inverse(self):
        p = Phase(half_turns=Fraction(1, 2))
        q = Phase(half_turns=Fraction(3, 2))
        assert compose(p, q).sign() == 1
        assert compose(p, p).sign() == -1
        assert p.compose(p.inverse()).sign() == 1
        assert (q / p).half_turns % 2 == Fraction(1)

    def test_value_on_unit_circle(self):
        p = Phase(half_turns=Fraction(1, 2))
        assert math.isclose(abs(p.value), 1.0)
        assert math.isclose(p.value.imag, 1.0)

    def test_non_real_phase_has_no_sign(self):
        with pytest.raises(ValidationError):
            Phase(half_turns=Fraction(1, 2)).sign()

    def test_display_forms(self):
        assert Phase().display() == "+1"
        assert Phase(half_turns=Fraction(1)).display() == "-1"
        assert "pi" in Phase(half_turns=Fraction(1, 3)).display()
        assert "inexact" in Phase(inexact_radians=0.5).display()

    def test_inexact_phase_composition(self):
        p = Phase(inexact_radians=0.25)
        q = Phase(inexact_radians=-0.25)
        assert not p.is_exact
        assert p.compose(q).approx_equal(PHASE_ONE)

    @given(
        st.fractions(min_value=Fraction(-4), max_value=Fraction(4), max_denominator=60),
        st.fractions(min_value=Fraction(-4), max_value=Fraction(4), max_denominator=60),
    )
    def test_group_law(self, x, y):
        p = Phase(half_turns=x)
        q = Phase(half_turns=y)
        left = p.compose(q)
        assert left.half_turns % 2 == (x + y) % 2
        assert p.compose(p.inverse()).half_turns % 2 == 0


class TestDerivedPhases:
    def test_winding_phase_parity(self):
        # e^{i 2 pi m N} = (-1)^{2mN}
        assert winding_phase(HalfInt.parse("1/2"), 1).sign() == -1
        assert winding_phase(HalfInt.parse("1/2"), 2).sign() == 1
        assert winding_phase(HalfInt.parse(1), 1).sign() == 1
        assert winding_phase(HalfInt.parse("3/2"), 3).sign() == -1
        assert winding_phase(HalfInt.parse("-1/2"), 1).sign() == -1

    def test_winding_phase_needs_integer(self):
        with pytest.raises(ValidationError):
            winding_phase(HalfInt(1), 1.5)

    @given(half_ints, st.integers(min_value=-6, max_value=6))
    def test_winding_phase_sign_formula(self, m, n):
        assert winding_phase(m, n).sign() == (-1) ** abs(m.twice * n)

    def test_rotation_phase_exact(self):
        p = canonical_rotation_phase(HalfInt.parse("1/2"), TurnAngle.from_turns(Fraction(1, 2)))
        assert p.is_exact
        assert p.half_turns == Fraction(1, 2)

    def test_rotation_phase_inexact(self):
        rough = TurnAngle(turns=None, approx_radians=0.7)
        p = canonical_rotation_phase(HalfInt.parse("1/2"), rough)
        assert not p.is_exact
        assert math.isclose(p.inexact_radians, 0.35)

    def test_full_turn_rotation_matches_statistics(self):
        turn = TurnAngle.from_turns(Fraction(1))
        assert canonical_rotation_phase(HalfInt.parse("1/2"), turn).sign() == -1
        assert canonical_rotation_phase(HalfInt.parse(1), turn).sign() == 1
