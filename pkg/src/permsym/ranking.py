"""Order-dependent azimuth machinery: deltas, order bits, windings.

Given exact rank-0 azimuths phi0 in [0, 1) turns, a particle's azimuth can
instead be defined relative to a sequence of other particles, accumulating
positive relative angles

    delta(j, i) = (phi0_j - phi0_i) mod 1 turn, in [0, 1] turns,

with ties resolved by particle seniority (position in the creation order):
delta is 0 for a tie when the reference is senior, a full turn when the
target is senior.  The companion order bit

    d(j, i) = 0 if phi0_j > phi0_i else 1  (ties again by seniority)

counts whether stepping from i to j wraps past the positive x axis.  A
rank-n azimuth walks a chain q_1 ... q_n and ends on the target q_{n+1}:

    phi(q_{n+1} | q_1 ... q_n) = phi0_{q_1} + sum_i delta(q_{i+1}, q_i)
                               = phi0_{q_{n+1}} + N * turn

where the winding number N is the number of wrapping steps,

    N = sum_{i=1..n} d(q_{i+1}, q_i).

Each wrapping step contributes one full turn, so N also equals the exact
angle difference divided by a full turn; both computations are exposed and
must agree.  All arithmetic here is exact (Fractions); inexact azimuths
are rejected rather than ranked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InvalidSequence, SameParticle, ValidationError
from .exact import TurnAngle, compare_angles

FULL_TURN = Fraction(1)


class Rank0Azimuths:
    """Exact rank-0 azimuths of all particles, reduced into [0, 1) turns.

    Index positions double as particle seniority for tie resolution:
    position 0 was created first.
    """

    __slots__ = ("_turns",)

    def __init__(self, angles: Iterable[TurnAngle | Fraction | str | int]):
        turns: list[Fraction] = []
        for a in angles:
            if isinstance(a, TurnAngle):
                turns.append(a.turns_or_raise() % 1)
            else:
                turns.append(TurnAngle.from_turns(a).turns_or_raise() % 1)
        if not turns:
            raise ValidationError("need at least one azimuth")
        self._turns = tuple(turns)

    def __len__(self) -> int:
        return len(self._turns)

    def __getitem__(self, i: int) -> Fraction:
        return self._turns[i]

    def __iter__(self):
        return iter(self._turns)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Rank0Azimuths):
            return NotImplemented
        return self._turns == other._turns

    def __repr__(self) -> str:
        return f"Rank0Azimuths({[str(t) for t in self._turns]})"

    def as_angles(self) -> tuple[TurnAngle, ...]:
        return tuple(TurnAngle(turns=t) for t in self._turns)

    def rotated(self, turns: Fraction | str | int) -> "Rank0Azimuths":
        """Azimuths re-measured in a frame rotated about z by ``turns``."""
        shift = TurnAngle.from_turns(turns).turns_or_raise()
        return Rank0Azimuths([TurnAngle(turns=(t - shift) % 1) for t in self._turns])


def _check_pair(j: int, i: int, n: int) -> None:
    for idx in (j, i):
        if not 0 <= idx < n:
            raise ValidationError(f"particle index {idx} out of range for {n} particles")
    if j == i:
        raise SameParticle(f"relative azimuth of particle {j} w.r.t. itself is undefined")


def index_sort(phi0: Rank0Azimuths | Sequence[TurnAngle]) -> tuple[int, ...]:
    """Particle indices in increasing azimuth, seniority breaking ties.

    The sort is stable, so equal azimuths keep creation order; relabeling
    particles by this permutation never changes any order bit or winding.
    Raw :class:`TurnAngle` sequences are accepted too, but every pair must
    then be certifiably ordered or exactly tied (:class:`InexactTie`
    otherwise).
    """
    if isinstance(phi0, Rank0Azimuths):
        return tuple(sorted(range(len(phi0)), key=lambda i: (phi0[i], i)))
    angles = [a.mod_turn() for a in phi0]
    order = list(range(len(angles)))
    for i in range(len(angles)):
        for j in range(i + 1, len(angles)):
            compare_angles(angles[i], angles[j])  # certify or raise InexactTie
    order.sort(key=lambda i: (angles[i].radians, i))
    return tuple(order)


def delta(j: int, i: int, phi0: Rank0Azimuths) -> TurnAngle:
    """Relative azimuth delta(j, i) in [0, 1] turns (1 = full turn).

    Antisymmetric around a full turn: delta(i, j) + delta(j, i) == 1 turn,
    including the tie case where the senior particle sees 0 and the junior
    one a full turn.
    """
    _check_pair(j, i, len(phi0))
    diff = (phi0[j] - phi0[i]) % 1
    if diff == 0:
        return TurnAngle(turns=FULL_TURN if j < i else Fraction(0))
    return TurnAngle(turns=diff)


def d_order(j: int, i: int, phi0: Rank0Azimuths) -> int:
    """Order bit d(j, i): 1 when stepping i -> j wraps past azimuth zero.

    0 when phi0_j > phi0_i, 1 when phi0_j < phi0_i; a tie counts the
    senior (lower-index) particle as the smaller azimuth.
    """
    _check_pair(j, i, len(phi0))
    if phi0[j] > phi0[i]:
        return 0
    if phi0[j] < phi0[i]:
        return 1
    return 0 if i < j else 1


def _check_chain(target: int, sequence: Sequence[int], n: int) -> None:
    if not sequence:
        raise InvalidSequence("a ranked azimuth needs a non-empty sequence")
    for idx in sequence:
        if not 0 <= idx < n:
            raise InvalidSequence(f"sequence index {idx} out of range for {n} particles")
        if idx == target:
            raise SameParticle(f"particle {target} cannot appear in its own sequence")
    chain = list(sequence) + [target]
    for prev, nxt in zip(chain, chain[1:]):
        if prev == nxt:
            raise InvalidSequence(f"sequence repeats particle {prev} in consecutive steps")


def rank_n_phi(target: int, sequence: Sequence[int], phi0: Rank0Azimuths) -> tuple[TurnAngle, int]:
    """Rank-n azimuth of ``target`` through ``sequence``, plus its winding.

    Accumulates phi0 of the sequence head plus every step delta; the
    returned winding is the exact integer (phi - phi0_target) / turn.
    """
    _check_chain(target, sequence, len(phi0))
    total = phi0[sequence[0]]
    chain = list(sequence) + [target]
    for prev, nxt in zip(chain, chain[1:]):
        total = total + delta(nxt, prev, phi0).turns_or_raise()
    winding = total - phi0[target]
    if winding.denominator != 1:
        raise ValidationError("internal error: winding is not an integer")
    return TurnAngle(turns=total), int(winding)


def winding_number(target: int, sequence: Sequence[int], phi0: Rank0Azimuths) -> int:
    """Winding number N of a ranked azimuth, from order bits alone.

    N = sum of d(next, previous) over consecutive chain links, ending on
    the target.  Matches the angle-difference computation of
    :func:`rank_n_phi` exactly for every valid chain.
    """
    _check_chain(target, sequence, len(phi0))
    chain = list(sequence) + [target]
    return sum(d_order(nxt, prev, phi0) for prev, nxt in zip(chain, chain[1:]))


def winding_parity_split(target: int, sequence: Sequence[int], phi0: Rank0Azimuths) -> tuple[int, int]:
    """Split N into a necessarily odd part and an order-violation count.

    Rewriting the final link with the complementary order bit,

        N = (1 - 2 d(q_n, q_{n+1})) + (sum_{i<n} d(q_{i+1}, q_i) + d(q_n, q_{n+1})),

    the first addend is always odd (+1 or -1) and the second counts
    wrapped links, so N's parity flips with the number of out-of-order
    adjacent chain pairs.  Returns the two addends.
    """
    _check_chain(target, sequence, len(phi0))
    d_last_rev = d_order(sequence[-1], target, phi0)
    odd_part = 1 - 2 * d_last_rev
    inner = sum(
        d_order(nxt, prev, phi0) for prev, nxt in zip(sequence, sequence[1:])
    )
    return odd_part, inner + d_last_rev


@dataclass(frozen=True)
class RankingScheme:
    """Which slots each slot's azimuth is ranked against.

    ``sequences[t]`` is the chain of slot positions whose occupants define
    slot t's azimuth; an empty chain means rank 0.  Slots are positions in
    a fixed pattern: occupants may move (exchanges), the pattern does not.
    Repeated slots across different sequences are allowed (shared
    dependencies); a slot may not appear in its own sequence and a
    sequence may not repeat a slot in consecutive steps.
    """

    sequences: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.sequences)
        for t, seq in enumerate(self.sequences):
            for idx in seq:
                if not 0 <= idx < n:
                    raise InvalidSequence(f"slot {t} references slot {idx} of {n}")
                if idx == t:
                    raise SameParticle(f"slot {t} appears in its own sequence")
            for prev, nxt in zip(seq, seq[1:]):
                if prev == nxt:
                    raise InvalidSequence(f"slot {t} repeats slot {prev} consecutively")

    @classmethod
    def from_sequences(cls, sequences: Sequence[Sequence[int]]) -> "RankingScheme":
        return cls(tuple(tuple(seq) for seq in sequences))

    @classmethod
    def all_rank0(cls, n: int) -> "RankingScheme":
        return cls(tuple(() for _ in range(n)))

    @classmethod
    def cyclic(cls, n: int, order: Sequence[int] | None = None) -> "RankingScheme":
        """Each slot rank 1 on the previous slot of ``order`` (cyclically).

        ``order`` lists slots in the intended azimuth order; by default
        slots are already in that order.
        """
        if n < 2:
            raise InvalidSequence("a cyclic scheme needs at least two slots")
        seq_order = list(order) if order is not None else list(range(n))
        if sorted(seq_order) != list(range(n)):
            raise InvalidSequence(f"order {seq_order} is not a permutation of 0..{n - 1}")
        sequences: list[tuple[int, ...]] = [()] * n
        for pos, slot in enumerate(seq_order):
            sequences[slot] = (seq_order[pos - 1],)
        return cls(tuple(sequences))

    def __len__(self) -> int:
        return len(self.sequences)

    @property
    def max_rank(self) -> int:
        return max((len(seq) for seq in self.sequences), default=0)

    def ranked_slots(self) -> tuple[int, ...]:
        return tuple(t for t, seq in enumerate(self.sequences) if seq)


class WindingVector(tuple):
    """Per-slot winding numbers (0 for rank-0 slots)."""

    __slots__ = ()


def scheme_windings(
    scheme: RankingScheme,
    phi0: Rank0Azimuths,
    occupancy: Sequence[int] | None = None,
) -> WindingVector:
    """Winding number of every slot for the given occupancy.

    ``occupancy[slot]`` is the particle currently at that slot (defaults
    to particle t at slot t).  Slot t's chain is evaluated on the
    occupants of its sequence slots, ending on its own occupant.
    """
    n = len(scheme)
    if len(phi0) != n:
        raise ValidationError(f"scheme has {n} slots but {len(phi0)} azimuths given")
    occ = tuple(occupancy) if occupancy is not None else tuple(range(n))
    if sorted(occ) != list(range(n)):
        raise ValidationError(f"occupancy {occ} is not a permutation of 0..{n - 1}")
    windings = []
    for t, seq in enumerate(scheme.sequences):
        if not seq:
            windings.append(0)
        else:
            chain = [occ[s] for s in seq]
            windings.append(winding_number(occ[t], chain, phi0))
    return WindingVector(windings)


def scheme_from_mapping(
    mapping: Mapping[str, Sequence[str]], ids: Sequence[str]
) -> RankingScheme:
    """Build a scheme from an id-keyed mapping, slots ordered as ``ids``."""
    index = {pid: i for i, pid in enumerate(ids)}
    for pid in mapping:
        if pid not in index:
            raise ValidationError(f"scheme references unknown particle id {pid!r}")
    sequences: list[tuple[int, ...]] = []
    for pid in ids:
        seq = mapping.get(pid, ())
        resolved = []
        for ref in seq:
            if ref not in index:
                raise ValidationError(
                    f"scheme for {pid!r} references unknown particle id {ref!r}"
                )
            resolved.append(index[ref])
        sequences.append(tuple(resolved))
    return RankingScheme(tuple(sequences))
