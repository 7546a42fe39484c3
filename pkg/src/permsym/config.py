"""Particle configuration parsing and serialization.

A configuration is a JSON object:

    {
      "particles": [
        {"id": "a", "Q": "e", "p": [0.2, 0.0, 1.0], "s": "1/2", "m": "1/2"},
        {"id": "b", "Q": "e", "theta": 1.0, "phi_turns": "1/3",
         "s": "1/2", "m": "-1/2"},
        ...
      ],
      "scheme": {"b": ["a"]},
      "canonical_frame": {"rotation_turns": "0"},
      "tolerance": 1e-9
    }

Kinematics come in exactly one of two modes, uniform across particles:

* Cartesian: ``p`` holds the momentum components; canonical angles are
  computed from the aggregate axis and snapped to exact turns when a
  nearby rational exists.
* declared angles: ``theta`` (radians) and ``phi_turns`` (an exact
  rational fraction of a turn, as a string) give the canonical-frame
  angles directly; the implied common z axis is taken on trust (the
  ``verify`` command reports whether the angles actually close up).

``s`` and ``m`` are half-integer strings.  The optional ``scheme`` maps
each ranked particle id to its sequence of reference ids (absent ids are
rank 0).  ``canonical_frame.rotation_turns`` rotates the canonical frame
about its z axis; declared azimuths shrink by the same amount.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .errors import ValidationError
from .exact import HalfInt, TurnAngle, check_spin_projection
from .geometry import (
    GEOM_TOL,
    CanonicalAngles,
    Vec3,
    aggregate_axis,
    canonical_angles,
    canonical_frame,
    direction_from_angles,
)
from .ranking import scheme_from_mapping
from .states import FrameKind, ParticleState, SymmetricState, annotate, build_symmetric

CARTESIAN = "cartesian"
ANGLES = "angles"


@dataclass(frozen=True)
class ParsedConfig:
    """A validated configuration, ready for the state machinery."""

    members: tuple[tuple[str, ParticleState], ...]
    scheme_mapping: dict[str, tuple[str, ...]] | None
    rotation_turns: Fraction
    tolerance: float
    mode: str
    momenta: tuple[Vec3, ...]

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(pid for pid, _ in self.members)

    def base_state(self) -> SymmetricState:
        return build_symmetric(self.members, FrameKind.CANONICAL)

    def annotated_state(self):
        return annotate(self.base_state(), self.scheme_mapping)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValidationError(message)


def _parse_particle_entry(entry: Mapping[str, Any], position: int) -> dict[str, Any]:
    _require(isinstance(entry, Mapping), f"particle #{position} must be an object")
    pid = entry.get("id")
    _require(isinstance(pid, str) and pid != "", f"particle #{position} needs a non-empty string id")
    s = HalfInt.parse(entry.get("s", ""))
    m = HalfInt.parse(entry.get("m", ""))
    try:
        check_spin_projection(s, m)
    except ValidationError as exc:
        raise ValidationError(f"particle {pid!r}: {exc}") from exc
    has_p = "p" in entry
    has_angles = "theta" in entry or "phi_turns" in entry
    _require(
        has_p != has_angles,
        f"particle {pid!r} needs either p or theta/phi_turns (not both)",
    )
    out: dict[str, Any] = {"id": pid, "Q": str(entry.get("Q", "")), "s": s, "m": m}
    if has_p:
        p = entry["p"]
        _require(
            isinstance(p, Sequence) and len(p) == 3,
            f"particle {pid!r}: p must be a 3-component list",
        )
        out["p"] = Vec3.from_seq([float(c) for c in p])
    else:
        _require(
            "theta" in entry and "phi_turns" in entry,
            f"particle {pid!r} needs both theta and phi_turns",
        )
        theta = float(entry["theta"])
        _require(0.0 < theta < math.pi, f"particle {pid!r}: theta must lie strictly between 0 and pi")
        out["theta"] = theta
        try:
            out["phi_turns"] = TurnAngle.from_turns(entry["phi_turns"]).turns_or_raise()
        except ValidationError as exc:
            raise ValidationError(f"particle {pid!r}: {exc}") from exc
    return out


def parse_config(data: Mapping[str, Any], tolerance: float | None = None) -> ParsedConfig:
    """Validate a configuration mapping and build the particle states.

    ``tolerance`` overrides the geometric tolerance (defaults to the
    config's own ``tolerance`` entry, then to GEOM_TOL).
    """
    _require(isinstance(data, Mapping), "configuration must be a JSON object")
    raw_particles = data.get("particles")
    _require(
        isinstance(raw_particles, Sequence) and len(raw_particles) > 0,
        "configuration needs a non-empty particles list",
    )
    entries = [_parse_particle_entry(e, i) for i, e in enumerate(raw_particles)]
    ids = [e["id"] for e in entries]
    _require(len(set(ids)) == len(ids), f"particle ids must be unique, got {ids}")

    modes = {CARTESIAN if "p" in e else ANGLES for e in entries}
    _require(len(modes) == 1, "all particles must use the same kinematics mode")
    mode = modes.pop()

    rotation = Fraction(0)
    frame_patch = data.get("canonical_frame")
    if frame_patch is not None:
        _require(isinstance(frame_patch, Mapping), "canonical_frame must be an object")
        unknown = set(frame_patch) - {"rotation_turns"}
        _require(not unknown, f"unknown canonical_frame keys: {sorted(unknown)}")
        rotation = TurnAngle.from_turns(frame_patch.get("rotation_turns", 0)).turns_or_raise()

    tol = tolerance
    if tol is None:
        tol = float(data.get("tolerance", GEOM_TOL))
    _require(tol > 0, f"tolerance must be positive, got {tol}")

    members: list[tuple[str, ParticleState]] = []
    momenta: list[Vec3] = []
    if mode == CARTESIAN:
        vectors = [e["p"] for e in entries]
        k = aggregate_axis(vectors, tol)
        frame = canonical_frame(k, rotation_turns=float(rotation), tol=tol)
        for e in entries:
            angles = canonical_angles(e["p"], frame)
            members.append(
                (
                    e["id"],
                    ParticleState(
                        Q=e["Q"], s=e["s"], m=e["m"], frame=FrameKind.CANONICAL,
                        p=e["p"], angles=angles,
                    ),
                )
            )
            momenta.append(e["p"])
    else:
        for e in entries:
            phi = TurnAngle(turns=(e["phi_turns"] - rotation) % 1)
            angles = CanonicalAngles(theta=e["theta"], phi=phi)
            members.append(
                (
                    e["id"],
                    ParticleState(
                        Q=e["Q"], s=e["s"], m=e["m"], frame=FrameKind.CANONICAL,
                        p=None, angles=angles,
                    ),
                )
            )
            momenta.append(direction_from_angles(e["theta"], phi))

    scheme_raw = data.get("scheme")
    scheme_mapping: dict[str, tuple[str, ...]] | None = None
    if scheme_raw is not None:
        _require(isinstance(scheme_raw, Mapping), "scheme must be an object")
        scheme_mapping = {}
        for pid, seq in scheme_raw.items():
            _require(
                isinstance(seq, Sequence) and not isinstance(seq, str),
                f"scheme entry for {pid!r} must be a list of ids",
            )
            scheme_mapping[pid] = tuple(str(ref) for ref in seq)
        # Resolving validates all referenced ids and sequence shapes.
        scheme_from_mapping(scheme_mapping, ids)

    unknown_keys = set(data) - {"particles", "scheme", "canonical_frame", "tolerance"}
    _require(not unknown_keys, f"unknown configuration keys: {sorted(unknown_keys)}")

    return ParsedConfig(
        members=tuple(members),
        scheme_mapping=scheme_mapping,
        rotation_turns=rotation,
        tolerance=tol,
        mode=mode,
        momenta=tuple(momenta),
    )


def serialize_config(cfg: ParsedConfig) -> dict[str, Any]:
    """Serialize back to the JSON shape; parse(serialize(x)) == x."""
    particles = []
    for (pid, state), p in zip(cfg.members, cfg.momenta):
        entry: dict[str, Any] = {"id": pid, "Q": state.Q, "s": str(state.s), "m": str(state.m)}
        if cfg.mode == CARTESIAN:
            entry["p"] = list(p.as_tuple())
        else:
            assert state.angles is not None
            # Undo the frame rotation so the declared azimuth round-trips.
            declared = (state.angles.phi.turns_or_raise() + cfg.rotation_turns) % 1
            entry["theta"] = state.angles.theta
            entry["phi_turns"] = str(declared)
        particles.append(entry)
    out: dict[str, Any] = {"particles": particles, "tolerance": cfg.tolerance}
    if cfg.scheme_mapping is not None:
        out["scheme"] = {pid: list(seq) for pid, seq in cfg.scheme_mapping.items()}
    if cfg.rotation_turns != 0:
        out["canonical_frame"] = {"rotation_turns": str(cfg.rotation_turns)}
    return out
