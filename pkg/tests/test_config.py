"""Configuration parsing, validation diagnostics and round-tripping."""

import math
from fractions import Fraction

import pytest

from permsym.config import ANGLES, CARTESIAN, parse_config, serialize_config
from permsym.errors import DegenerateAxis, ValidationError
from permsym.geometry import GEOM_TOL


def angle_entry(pid, phi="0", s="1/2", m="1/2", theta=1.0, q="e"):
    return {"id": pid, "Q": q, "s": s, "m": m, "theta": theta, "phi_turns": phi}


def angles_config(**extra):
    data = {
        "particles": [
            angle_entry("a", "0"),
            angle_entry("b", "1/3"),
            angle_entry("c", "2/3"),
        ],
        "scheme": {"a": ["c"], "b": ["a"], "c": ["b"]},
    }
    data.update(extra)
    return data


def cartesian_config():
    return {
        "particles": [
            {"id": "a", "Q": "e", "s": "1/2", "m": "1/2", "p": [1.0, 0.0, 1.0]},
            {"id": "b", "Q": "e", "s": "1/2", "m": "-1/2", "p": [-1.0, 0.0, 1.0]},
        ]
    }


class TestParsing:
    def test_angle_mode(self):
        cfg = parse_config(angles_config())
        assert cfg.mode == ANGLES
        assert cfg.ids == ("a", "b", "c")
        assert cfg.tolerance == GEOM_TOL
        assert cfg.scheme_mapping == {"a": ("c",), "b": ("a",), "c": ("b",)}
        phis = [state.angles.phi.turns_or_raise() for _, state in cfg.members]
        assert phis == [Fraction(0), Fraction(1, 3), Fraction(2, 3)]

    def test_cartesian_mode_snaps_azimuths(self):
        cfg = parse_config(cartesian_config())
        assert cfg.mode == CARTESIAN
        phis = [state.angles.phi.turns_or_raise() for _, state in cfg.members]
        # aggregate axis is +z; the pair sits at azimuth 0 and 1/2
        assert phis == [Fraction(0), Fraction(1, 2)]
        assert cfg.members[0][1].p is not None

    def test_scheme_optional(self):
        cfg = parse_config({"particles": [angle_entry("a")]})
        assert cfg.scheme_mapping is None
        assert cfg.annotated_state().phase().sign() == 1

    def test_frame_rotation_shifts_declared_azimuths(self):
        cfg = parse_config(angles_config(canonical_frame={"rotation_turns": "1/3"}))
        assert cfg.rotation_turns == Fraction(1, 3)
        phis = [state.angles.phi.turns_or_raise() for _, state in cfg.members]
        assert phis == [Fraction(2, 3), Fraction(0), Fraction(1, 3)]

    def test_tolerance_priority(self):
        assert parse_config(angles_config()).tolerance == GEOM_TOL
        assert parse_config(angles_config(tolerance=1e-7)).tolerance == 1e-7
        # explicit argument wins over the config entry
        assert parse_config(angles_config(tolerance=1e-7), tolerance=1e-5).tolerance == 1e-5

    def test_annotated_state_uses_scheme(self):
        cfg = parse_config(angles_config())
        assert cfg.annotated_state().phase().sign() == -1  # sorted fermion cycle

    def test_momenta_exposed_in_both_modes(self):
        ang = parse_config(angles_config())
        assert len(ang.momenta) == 3
        assert all(abs(v.norm - 1.0) < 1e-12 for v in ang.momenta)  # unit directions
        cart = parse_config(cartesian_config())
        assert cart.momenta[0].as_tuple() == (1.0, 0.0, 1.0)


class TestValidation:
    def test_bad_projection_names_particle(self):
        data = {"particles": [angle_entry("odd_one", m="3/2")]}
        with pytest.raises(ValidationError, match="odd_one"):
            parse_config(data)

    def test_duplicate_ids(self):
        with pytest.raises(ValidationError, match="unique"):
            parse_config({"particles": [angle_entry("a"), angle_entry("a", "1/2")]})

    def test_empty_particles(self):
        with pytest.raises(ValidationError):
            parse_config({"particles": []})
        with pytest.raises(ValidationError):
            parse_config({})

    def test_mixed_kinematics_rejected(self):
        data = {
            "particles": [
                angle_entry("a"),
                {"id": "b", "Q": "e", "s": "1/2", "m": "1/2", "p": [0.0, 1.0, 1.0]},
            ]
        }
        with pytest.raises(ValidationError, match="same kinematics"):
            parse_config(data)

    def test_both_kinematics_on_one_particle_rejected(self):
        entry = angle_entry("a")
        entry["p"] = [0.0, 0.0, 1.0]
        with pytest.raises(ValidationError, match="not both"):
            parse_config({"particles": [entry]})

    def test_partial_angles_rejected(self):
        entry = {"id": "a", "Q": "e", "s": "1/2", "m": "1/2", "theta": 1.0}
        with pytest.raises(ValidationError, match="phi_turns"):
            parse_config({"particles": [entry]})

    def test_theta_bounds(self):
        for bad in (0.0, math.pi, -0.5, 4.0):
            with pytest.raises(ValidationError, match="theta"):
                parse_config({"particles": [angle_entry("a", theta=bad)]})

    def test_bad_momentum_shape(self):
        entry = {"id": "a", "Q": "e", "s": "1/2", "m": "1/2", "p": [1.0, 2.0]}
        with pytest.raises(ValidationError, match="3-component"):
            parse_config({"particles": [entry]})

    def test_missing_id(self):
        with pytest.raises(ValidationError, match="id"):
            parse_config({"particles": [{"Q": "e", "s": "1/2", "m": "1/2", "theta": 1.0, "phi_turns": "0"}]})

    def test_scheme_references_validated(self):
        with pytest.raises(ValidationError, match="unknown"):
            parse_config(angles_config(scheme={"a": ["nope"]}))
        with pytest.raises(ValidationError, match="unknown"):
            parse_config(angles_config(scheme={"nope": ["a"]}))
        with pytest.raises(ValidationError):
            parse_config(angles_config(scheme={"a": ["a"]}))
        with pytest.raises(ValidationError, match="list"):
            parse_config(angles_config(scheme={"a": "c"}))

    def test_unknown_top_level_keys(self):
        with pytest.raises(ValidationError, match="unknown configuration keys"):
            parse_config(angles_config(surprise=1))

    def test_unknown_frame_keys(self):
        with pytest.raises(ValidationError, match="canonical_frame"):
            parse_config(angles_config(canonical_frame={"tilt": 0.5}))

    def test_inexact_phi_rejected(self):
        with pytest.raises(ValidationError):
            parse_config({"particles": [angle_entry("a", phi="1/3x")]})

    def test_nonpositive_tolerance(self):
        with pytest.raises(ValidationError, match="tolerance"):
            parse_config(angles_config(tolerance=0))

    def test_degenerate_geometry_propagates(self):
        data = {
            "particles": [
                {"id": "a", "Q": "e", "s": "1/2", "m": "1/2", "p": [0.0, 0.0, 1.0]},
                {"id": "b", "Q": "e", "s": "1/2", "m": "-1/2", "p": [0.0, 0.0, -1.0]},
            ]
        }
        with pytest.raises(DegenerateAxis):
            parse_config(data)


class TestRoundTrip:
    def assert_roundtrips(self, data, tolerance=None):
        cfg = parse_config(data, tolerance=tolerance)
        again = parse_config(serialize_config(cfg))
        assert again == cfg

    def test_angle_config(self):
        self.assert_roundtrips(angles_config())

    def test_with_rotation_and_tolerance(self):
        self.assert_roundtrips(
            angles_config(canonical_frame={"rotation_turns": "5/12"}, tolerance=1e-8)
        )

    def test_cartesian_config(self):
        self.assert_roundtrips(cartesian_config())

    def test_without_scheme(self):
        data = angles_config()
        del data["scheme"]
        self.assert_roundtrips(data)

    def test_explicit_tolerance_survives(self):
        cfg = parse_config(angles_config(), tolerance=1e-6)
        assert parse_config(serialize_config(cfg)).tolerance == 1e-6
