"""Invariant checks for a particle configuration.

The ``verify`` command runs every check that applies to the input's
kinematics mode and reports a named pass/fail with the measured residual.
Failures here are honest reports, not errors; genuinely degenerate
geometry (no aggregate axis, a momentum along the axis) still raises and
is mapped to its own exit code by the command-line client.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import ANGLES, CARTESIAN, ParsedConfig
from .errors import GeometryError, IndeterminatePhi
from .exact import TWO_PI
from .geometry import (
    aggregate_axis,
    aggregate_frame,
    canonical_angles,
    canonical_frame,
    check_transverse_sum,
    dependent_phi,
    helicity_frame,
    subset_axis,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float | None
    tolerance: float | None
    note: str = ""


def _angle_distance_turns(a: float, b: float) -> float:
    """Distance between two angles in turns, on the circle."""
    d = abs(a - b) % 1.0
    return min(d, 1.0 - d)


def verification_suite(cfg: ParsedConfig) -> list[CheckResult]:
    """Run all applicable invariant checks on a parsed configuration."""
    tol = cfg.tolerance
    checks: list[CheckResult] = [
        CheckResult("unique-ids", True, None, None, "validated at parse time"),
        CheckResult("spin-projections", True, None, None, "validated at parse time"),
        CheckResult(
            "rank0-azimuths-in-range",
            all(
                0 <= p.angles.phi.turns_or_raise() < 1
                for _, p in cfg.members
                if p.angles is not None
            ),
            None,
            None,
            "all azimuths reduced into [0, 1) turns",
        ),
    ]

    momenta = list(cfg.momenta)
    n = len(momenta)

    if cfg.mode == CARTESIAN:
        k = aggregate_axis(momenta, tol)
        checks.append(
            CheckResult("aggregate-axis", True, k.norm, tol, f"|k| = {k.norm:.6g}")
        )
        frame = canonical_frame(k, rotation_turns=float(cfg.rotation_turns), tol=tol)
        residual = frame.orthonormality_residual()
        for i, p in enumerate(momenta):
            residual = max(residual, helicity_frame(p, k, tol).orthonormality_residual())
            residual = max(residual, aggregate_frame(p, k, tol).orthonormality_residual())
        checks.append(
            CheckResult("frames-orthonormal", residual <= tol, residual, tol)
        )
        closure = check_transverse_sum(momenta, k)
        checks.append(CheckResult("transverse-closure", closure <= tol, closure, tol))

        angles = [canonical_angles(p, frame) for p in momenta]
        exactness = all(a.phi.is_exact for a in angles)
        checks.append(
            CheckResult(
                "azimuths-snapped-exact",
                exactness,
                None,
                None,
                "all azimuths snapped to rational turns" if exactness else "some azimuths inexact",
            )
        )
    else:
        # Declared angles: the common z axis is implied; closure says the
        # unit directions actually sum onto it.
        sin_x = sum(math.sin(p.angles.theta) * math.cos(p.angles.phi.radians) for _, p in cfg.members)
        sin_y = sum(math.sin(p.angles.theta) * math.sin(p.angles.phi.radians) for _, p in cfg.members)
        cos_z = sum(math.cos(p.angles.theta) for _, p in cfg.members)
        transverse = math.hypot(sin_x, sin_y)
        checks.append(
            CheckResult(
                "transverse-closure",
                transverse <= tol,
                transverse,
                tol,
                "declared directions must sum onto the +z axis",
            )
        )
        checks.append(
            CheckResult(
                "aggregate-axis",
                cos_z > tol,
                cos_z,
                tol,
                "net direction must point along +z (cos sum positive)",
            )
        )
        angles = [p.angles for _, p in cfg.members]

    if n >= 2:
        worst = 0.0
        indeterminate = []
        for i in range(n):
            try:
                recon = dependent_phi(i, angles, tol)
            except IndeterminatePhi:
                indeterminate.append(cfg.ids[i])
                continue
            worst = max(
                worst,
                _angle_distance_turns(
                    recon.radians / TWO_PI, angles[i].phi.radians / TWO_PI
                )
                * TWO_PI,
            )
        note = ""
        if indeterminate:
            note = f"no transverse recoil for {indeterminate}; skipped"
        checks.append(
            CheckResult("dependent-azimuths", worst <= tol, worst, tol, note)
        )

    if cfg.mode == CARTESIAN and n >= 2:
        worst_pair = 0.0
        skipped = 0
        for i in range(n):
            for j in range(i + 1, n):
                try:
                    k2 = subset_axis(momenta, [i, j], tol)
                    pair_frame = canonical_frame(k2, tol=tol)
                    phi_i = canonical_angles(momenta[i], pair_frame).phi.radians
                    phi_j = canonical_angles(momenta[j], pair_frame).phi.radians
                except GeometryError:
                    skipped += 1
                    continue
                gap = _angle_distance_turns(
                    (phi_i - phi_j) / TWO_PI, 0.5
                ) * TWO_PI
                worst_pair = max(worst_pair, gap)
        note = f"{skipped} degenerate pair(s) skipped" if skipped else ""
        checks.append(
            CheckResult(
                "pair-azimuths-opposite",
                worst_pair <= tol,
                worst_pair,
                tol,
                note or "pair members sit pi apart about their own axis",
            )
        )

    checks.append(
        CheckResult(
            "scheme-valid",
            True,
            None,
            None,
            "scheme references resolved at parse time"
            if cfg.scheme_mapping
            else "no scheme declared (all rank 0)",
        )
    )
    return checks
