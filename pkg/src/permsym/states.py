"""Multi-particle state vectors and exchange phases.

A permutation-symmetric base state is an (unordered) multiset of single
particle descriptions; it carries no exchange structure at all, its
normalization is the symbolic 1/sqrt(n!).  Structure appears when the
state is *annotated* with a ranking scheme: each description is placed at
a slot of a fixed ranking pattern, and the state acquires the phase

    prod_slots e^{i 2 pi m N}  =  (-1)^{sum 2 m N}

where m is the occupant's spin projection and N the slot's winding number
evaluated on the current occupants.

Exchanging two particles swaps their descriptions between slots; the
pattern itself never moves.  Each description keeps its seniority (its
position in the creation order) as the tie-break label wherever it goes.
The exchange phase is the ratio of the annotated phases after and before
the swap, with every winding recomputed from scratch; it is always
exactly +1 or -1.  When the two descriptions are identical the swap maps
the state to itself, so a -1 exchange phase annihilates it (the exclusion
principle falls out of the bookkeeping).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import cg
from .errors import UnknownIdentity, ValidationError
from .exact import (
    HalfInt,
    Phase,
    TurnAngle,
    canonical_rotation_phase,
    check_spin_projection,
    compose,
    winding_phase,
)
from .geometry import CanonicalAngles, Vec3
from .ranking import (
    Rank0Azimuths,
    RankingScheme,
    WindingVector,
    scheme_from_mapping,
    scheme_windings,
)


class FrameKind(enum.Enum):
    """Which frame family the spin projections are quantized in."""

    HELICITY = "helicity"
    AGGREGATE = "aggregate"
    CANONICAL = "canonical"


@dataclass(frozen=True)
class ParticleState:
    """One particle's full description: species label, kinematics, spin.

    ``angles`` are the canonical-frame angles when known; they are what
    the ranking machinery consumes.  ``p`` is the momentum when the state
    was built from Cartesian input (purely informational for exchanges).
    """

    Q: str
    s: HalfInt
    m: HalfInt
    frame: FrameKind = FrameKind.CANONICAL
    p: Vec3 | None = None
    angles: CanonicalAngles | None = None

    def __post_init__(self) -> None:
        check_spin_projection(self.s, self.m)

    @property
    def is_fermion(self) -> bool:
        return self.s.is_half_odd

    def description_key(self) -> tuple:
        """Canonical value identity: equal keys mean identical descriptions."""
        if self.angles is not None:
            kin = ("angles", round(self.angles.theta, 12), str(self.angles.phi))
        elif self.p is not None:
            kin = ("p",) + tuple(round(c, 12) for c in self.p.as_tuple())
        else:
            kin = ("none",)
        return (self.Q, self.s.twice, self.m.twice, self.frame.value, kin)


@dataclass(frozen=True)
class SymmetricState:
    """Permutation-symmetric multiset of particle descriptions.

    ``members`` keeps creation order and ids for later annotation, but
    equality and hashing use only the unordered multiset of descriptions.
    The normalization 1/sqrt(n!) is carried symbolically as its square.
    """

    members: tuple[tuple[str, ParticleState], ...]

    def __post_init__(self) -> None:
        ids = [pid for pid, _ in self.members]
        if len(set(ids)) != len(ids):
            raise ValidationError(f"duplicate particle ids in {ids}")
        if not ids:
            raise ValidationError("a state needs at least one particle")

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(pid for pid, _ in self.members)

    @property
    def particles(self) -> tuple[ParticleState, ...]:
        return tuple(state for _, state in self.members)

    @property
    def alpha_squared(self) -> Fraction:
        """Square of the symbolic normalization 1/sqrt(n!)."""
        return Fraction(1, math.factorial(len(self.members)))

    def multiset_key(self) -> tuple:
        return tuple(sorted(state.description_key() for _, state in self.members))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymmetricState):
            return NotImplemented
        return self.multiset_key() == other.multiset_key()

    def __hash__(self) -> int:
        return hash(self.multiset_key())


def build_symmetric(
    members: Sequence[tuple[str, ParticleState]], frame: FrameKind = FrameKind.CANONICAL
) -> SymmetricState:
    """Assemble a permutation-symmetric state from (id, description) pairs.

    All descriptions must be quantized in the requested frame family.
    Mixed frame families never compare or combine (a helicity projection
    and a canonical projection are different quantum numbers even when
    numerically equal).
    """
    for pid, state in members:
        if state.frame is not frame:
            raise ValidationError(
                f"particle {pid!r} is quantized in {state.frame.value}, expected {frame.value}"
            )
    return SymmetricState(members=tuple(members))


def rank0_azimuths(state: SymmetricState) -> Rank0Azimuths:
    """Exact canonical azimuths of every member, in creation order."""
    turns = []
    for pid, p in state.members:
        if p.angles is None:
            raise ValidationError(f"particle {pid!r} has no canonical angles")
        turns.append(p.angles.phi)
    return Rank0Azimuths(turns)


def aggregate_to_canonical_phase(state: SymmetricState) -> Phase:
    """Phase prod_i e^{i m_i phi_i} relating the common-frame state to the
    per-particle aggregate-frame state (each particle is rotated by its
    own azimuth about the shared z axis)."""
    phases = []
    for pid, p in state.members:
        if p.angles is None:
            raise ValidationError(f"particle {pid!r} has no canonical angles")
        phases.append(canonical_rotation_phase(p.m, p.angles.phi))
    return compose(*phases)


@dataclass(frozen=True)
class AnnotatedState:
    """A symmetric base state plus a ranking pattern and an occupancy.

    ``occupancy[slot]`` is the member index currently sitting at that
    slot; slot t is named by the id of the member that sat there at
    annotation time.  The phase (relative to the all-rank-0 state) is
    recomputable from the occupancy at any time.
    """

    base: SymmetricState
    scheme: RankingScheme
    occupancy: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.base.members)
        if len(self.scheme) != n:
            raise ValidationError(
                f"scheme has {len(self.scheme)} slots for {n} particles"
            )
        if sorted(self.occupancy) != list(range(n)):
            raise ValidationError(f"occupancy {self.occupancy} is not a permutation")

    @property
    def slot_ids(self) -> tuple[str, ...]:
        return self.base.ids

    def occupant(self, slot: int) -> ParticleState:
        return self.base.particles[self.occupancy[slot]]

    def slot_of_member(self, member_index: int) -> int:
        return self.occupancy.index(member_index)

    def windings(self) -> WindingVector:
        return scheme_windings(self.scheme, rank0_azimuths(self.base), self.occupancy)

    def phase(self) -> Phase:
        """Exact phase relative to the all-rank-0 symmetric state."""
        winds = self.windings()
        return compose(
            *(
                winding_phase(self.occupant(t).m, winds[t])
                for t in range(len(self.scheme))
            )
        )

    def assignment_key(self) -> tuple:
        """Value identity of the slot -> description assignment."""
        return tuple(self.occupant(t).description_key() for t in range(len(self.scheme)))


def annotate(
    base: SymmetricState,
    scheme: RankingScheme | Mapping[str, Sequence[str]] | None,
) -> AnnotatedState:
    """Attach a ranking pattern to a symmetric state.

    The scheme may be a :class:`RankingScheme` over slot positions or an
    id-keyed mapping {target id: [sequence ids...]}; ids missing from the
    mapping are rank 0.  ``None`` means all rank 0.
    """
    if scheme is None:
        resolved = RankingScheme.all_rank0(len(base.members))
    elif isinstance(scheme, RankingScheme):
        resolved = scheme
    else:
        resolved = scheme_from_mapping(scheme, base.ids)
    state = AnnotatedState(
        base=base, scheme=resolved, occupancy=tuple(range(len(base.members)))
    )
    state.phase()  # force exact azimuths and windings to exist now
    return state


@dataclass(frozen=True)
class ExchangeReport:
    """Outcome of exchanging two particles in an annotated state."""

    pair: tuple[str, str]
    exchange_phase: Phase
    winding_deltas: dict[str, int]
    third_party_affected: tuple[str, ...]
    vanishes: bool

    def __post_init__(self) -> None:
        if not self.exchange_phase.is_real_unit:
            raise ValidationError(
                f"exchange phase must be exactly +1 or -1, got {self.exchange_phase}"
            )


def exchange(
    state: AnnotatedState, a: str, b: str
) -> tuple[AnnotatedState, ExchangeReport]:
    """Swap the descriptions of particles a and b between their slots.

    The ranking pattern stays glued to the slots; descriptions move, and
    every winding is recomputed for the new occupancy (never inferred
    from the old phase).  Returns the exchanged state and a report with
    the exact phase ratio, per-slot winding changes, and which bystander
    particles were affected.
    """
    ids = state.base.ids
    for pid in (a, b):
        if pid not in ids:
            raise UnknownIdentity(f"unknown particle id {pid!r}")
    if a == b:
        raise ValidationError(f"cannot exchange particle {a!r} with itself")
    member_a, member_b = ids.index(a), ids.index(b)
    slot_a = state.slot_of_member(member_a)
    slot_b = state.slot_of_member(member_b)
    new_occ = list(state.occupancy)
    new_occ[slot_a], new_occ[slot_b] = new_occ[slot_b], new_occ[slot_a]
    swapped = AnnotatedState(
        base=state.base, scheme=state.scheme, occupancy=tuple(new_occ)
    )

    before = state.windings()
    after = swapped.windings()
    slot_names = state.slot_ids
    deltas = {
        slot_names[t]: after[t] - before[t]
        for t in range(len(slot_names))
        if after[t] != before[t]
    }
    ratio = swapped.phase() / state.phase()
    third = tuple(
        slot_names[state.occupancy[t]]
        for t in range(len(slot_names))
        if after[t] != before[t]
        and state.occupancy[t] not in (member_a, member_b)
    )
    same_assignment = swapped.assignment_key() == state.assignment_key()
    report = ExchangeReport(
        pair=(a, b),
        exchange_phase=ratio,
        winding_deltas=deltas,
        third_party_affected=third,
        vanishes=same_assignment and ratio.sign() == -1,
    )
    return swapped, report


def pauli_check(state: AnnotatedState, a: str, b: str) -> bool:
    """True when exchanging a and b maps the state to minus itself.

    This is the exclusion principle as bookkeeping: identical descriptions
    make the swap an identity map, so a -1 phase forces the state vector
    to vanish.
    """
    _, report = exchange(state, a, b)
    return report.vanishes


def odd_s_exclusion(s: HalfInt) -> list[int]:
    """All total spins S forbidden for an identical pair of spin-s particles.

    Two routes are combined, neither assuming the answer:

    * the pair's exchange phase (-1)^{2s} from the ranking bookkeeping
      (one extra full turn on one member exactly when descriptions tie);
    * the coupled-basis swap sign of the exact Clebsch-Gordan table.

    A coupled state |S M> picks up (swap sign) * (-1)^{2s} under particle
    exchange; S values where that product is -1 cannot occur for an
    identical pair.  The result is the odd integers S <= 2s, for bosons
    and fermions alike.
    """
    twice = s.twice
    if twice < 0:
        raise ValidationError(f"spin must be non-negative, got {s}")
    exchange_sign = -1 if twice % 2 else 1  # (-1)^{2s} from the ranking machinery
    forbidden = []
    for big_s in range(0, twice + 1):
        total_sign = cg.swap_symmetry_sign(s, big_s) * exchange_sign
        if total_sign == -1:
            forbidden.append(big_s)
    return forbidden
