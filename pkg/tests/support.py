"""Shared builders for the test suite.

Everything here constructs states in angle mode with exact azimuths so
that ranking comparisons never hit an inexact tie.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from permsym.exact import HalfInt, TurnAngle
from permsym.geometry import CanonicalAngles
from permsym.states import (
    AnnotatedState,
    FrameKind,
    ParticleState,
    SymmetricState,
    annotate,
    build_symmetric,
)


def angle_particle(
    q: str,
    s: str | int,
    m: str | int,
    phi,
    theta: float = 1.0,
) -> ParticleState:
    """Particle at exact azimuth ``phi`` (turns) on a cone of polar angle theta."""
    return ParticleState(
        Q=q,
        s=HalfInt.parse(s),
        m=HalfInt.parse(m),
        frame=FrameKind.CANONICAL,
        angles=CanonicalAngles(theta=theta, phi=TurnAngle.from_turns(phi)),
    )


def fermion(q: str, phi, m: str | int = "1/2", theta: float = 1.0) -> ParticleState:
    return angle_particle(q, "1/2", m, phi, theta)


def boson(q: str, phi, m: str | int = 0, s: str | int = 0, theta: float = 1.0) -> ParticleState:
    return angle_particle(q, s, m, phi, theta)


def state_of(*members: tuple[str, ParticleState]) -> SymmetricState:
    return build_symmetric(list(members))


def annotated(scheme, *members: tuple[str, ParticleState]) -> AnnotatedState:
    return annotate(state_of(*members), scheme)


def distinct_turns(rng: random.Random, n: int, denominator: int = 720720) -> list[Fraction]:
    """n distinct exact azimuths, uniformly sampled on a fine rational grid."""
    numerators = rng.sample(range(denominator), n)
    return [Fraction(k, denominator) for k in numerators]


def random_spin(rng: random.Random, max_twice: int = 4) -> tuple[HalfInt, HalfInt]:
    """Random (s, m) pair with 2s in 1..max_twice and m a valid projection."""
    twice_s = rng.randint(1, max_twice)
    s = HalfInt(twice_s)
    m = HalfInt(rng.randrange(-twice_s, twice_s + 1, 2))
    return s, m


def random_members(
    rng: random.Random,
    n: int,
    species: Sequence[str] = ("e", "mu", "pi", "gamma"),
) -> list[tuple[str, ParticleState]]:
    """n particles with random species, spins and distinct exact azimuths."""
    turns = distinct_turns(rng, n)
    members = []
    for i, phi in enumerate(turns):
        s, m = random_spin(rng)
        members.append((f"p{i}", angle_particle(rng.choice(species), s, m, phi)))
    return members
