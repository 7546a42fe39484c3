"""Emulating pairwise exchange symmetry with ranking schemes.

The conventional symmetrization postulate (CSP) asks for state vectors
that pick up -1 under every fermion-fermion transposition and +1 under
every boson-boson transposition.  With ranked azimuths this behaviour is
not automatic; it has to be engineered through the choice of ranking
pattern, and it cannot always be engineered at all:

* up to three fermions: a fixed rule set (bosons rank 0, fermions chained
  cyclically in azimuth order) reproduces the CSP signs for all single
  and double transpositions;
* the same cyclic pattern exposes an anomaly: the sign of an exchange is
  controlled by the *middle* particle of the azimuth order, so two bosons
  straddling a fermion acquire -1;
* four fermions on a rank-1 cycle break the CSP: a double exchange nets
  the sign of a single one;
* no per-particle winding assignment can satisfy all three pairwise
  antisymmetry conditions for three fermions simultaneously - the parity
  search over all assignments returns an eight-row refutation table.

``scheme_search`` explores the full (bounded) space of ranking patterns
for a given particle set and reports every pattern whose single and
double exchange phases match the CSP.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExceeded, PermsymError, TooManyFermions, ValidationError
from .exact import HalfInt, Phase, TurnAngle
from .geometry import CanonicalAngles
from .ranking import Rank0Azimuths, RankingScheme, d_order, index_sort
from .states import (
    AnnotatedState,
    FrameKind,
    ParticleState,
    SymmetricState,
    annotate,
    build_symmetric,
    exchange,
    rank0_azimuths,
)

MAX_SEARCH_PARTICLES = 5
MAX_SEARCH_RANK = 3
MAX_SEARCH_CANDIDATES = 500_000


@dataclass(frozen=True)
class RuleSetScheme:
    """A ranking scheme produced by the fixed rule set, with provenance."""

    scheme: RankingScheme
    sorted_ids: tuple[str, ...]
    fermion_ids: tuple[str, ...]
    boson_ids: tuple[str, ...]


def ruleset_scheme(state: SymmetricState) -> RuleSetScheme:
    """Apply the fixed ranking rules to a configuration.

    1. Azimuth order is the index sort of the rank-0 azimuths.
    2. Every boson is rank 0.
    3. With one fermion it is rank 0 too; with two, the second fermion
       (in azimuth order) is rank 1 on the first; with three, each
       fermion is rank 1 on the previous fermion cyclically.
    4. More than three fermions are not covered by any rule
       (:class:`TooManyFermions`); see :func:`four_fermion_breakdown`.
    """
    phi0 = rank0_azimuths(state)
    order = index_sort(phi0)
    ids = state.ids
    particles = state.particles
    fermions = [i for i in order if particles[i].is_fermion]
    bosons = [i for i in order if not particles[i].is_fermion]
    if len(fermions) > 3:
        raise TooManyFermions(
            f"rule set covers at most 3 fermions, got {len(fermions)}"
        )
    sequences: list[tuple[int, ...]] = [() for _ in ids]
    if len(fermions) == 2:
        first, second = fermions
        sequences[second] = (first,)
    elif len(fermions) == 3:
        for pos, slot in enumerate(fermions):
            sequences[slot] = (fermions[pos - 1],)
    return RuleSetScheme(
        scheme=RankingScheme(tuple(sequences)),
        sorted_ids=tuple(ids[i] for i in order),
        fermion_ids=tuple(ids[i] for i in fermions),
        boson_ids=tuple(ids[i] for i in bosons),
    )


@dataclass(frozen=True)
class PhaseTable:
    """Exchange phases of every single and ordered double transposition.

    ``singles[(a, b)]`` is the exchange phase of swapping a and b in the
    original state.  ``doubles[((a, b), (c, d))]`` applies (a, b) first,
    then (c, d) to the already-exchanged state, each step recomputed from
    windings; the stored phase is the net phase relative to the original
    state and ``double_steps`` keeps the two per-step ratios.
    """

    singles: dict[tuple[str, str], Phase]
    doubles: dict[tuple[tuple[str, str], tuple[str, str]], Phase]
    double_steps: dict[tuple[tuple[str, str], tuple[str, str]], tuple[Phase, Phase]]


def phase_table(state: AnnotatedState) -> PhaseTable:
    """Tabulate single and double exchange phases of an annotated state."""
    ids = sorted(state.base.ids)
    pairs = [(a, b) for a, b in itertools.combinations(ids, 2)]
    singles: dict[tuple[str, str], Phase] = {}
    states_after: dict[tuple[str, str], AnnotatedState] = {}
    for a, b in pairs:
        swapped, report = exchange(state, a, b)
        singles[(a, b)] = report.exchange_phase
        states_after[(a, b)] = swapped
    doubles: dict[tuple[tuple[str, str], tuple[str, str]], Phase] = {}
    steps: dict[tuple[tuple[str, str], tuple[str, str]], tuple[Phase, Phase]] = {}
    for first in pairs:
        mid_state = states_after[first]
        for second in pairs:
            _, second_report = exchange(mid_state, *second)
            net = singles[first].compose(second_report.exchange_phase)
            doubles[(first, second)] = net
            steps[(first, second)] = (singles[first], second_report.exchange_phase)
    return PhaseTable(singles=singles, doubles=doubles, double_steps=steps)


def csp_verdict(table: PhaseTable, statistics: dict[str, bool]) -> bool:
    """True when the table matches the CSP for every constrained entry.

    ``statistics[id]`` is True for fermions.  Fermion-fermion
    transpositions must give -1 and boson-boson ones +1, as single
    exchanges and as second exchanges following any same-statistics
    first.  A mixed exchange leaves the emulation domain, so sequences
    containing one are unconstrained (mixed-pair stability is reported
    separately, never demanded).
    """

    def target(pair: tuple[str, str]) -> int | None:
        fa, fb = statistics[pair[0]], statistics[pair[1]]
        if fa and fb:
            return -1
        if not fa and not fb:
            return 1
        return None

    for pair, phase in table.singles.items():
        expected = target(pair)
        if expected is not None and phase.sign() != expected:
            return False
    for (first, second), (_, second_phase) in table.double_steps.items():
        if target(first) is None:
            continue
        expected = target(second)
        if expected is not None and second_phase.sign() != expected:
            return False
    return True


@dataclass(frozen=True)
class AnomalyReport:
    """Exchange of the two outer particles of a three-particle cycle."""

    exchanged_pair: tuple[str, str]
    middle_id: str
    middle_is_fermion: bool
    exchange_phase: Phase
    pair_statistics: str  # "boson-boson", "fermion-fermion" or "mixed"
    anomalous: bool


def boson_anomaly_check(state: SymmetricState) -> AnomalyReport:
    """Exchange the outer pair of a cyclic three-particle annotation.

    On the rank-1 cycle every transposition changes exactly one winding,
    the one belonging to the middle particle of the azimuth order, so the
    exchange phase is (-1)^(2 s_middle) regardless of which pair moves.
    Two bosons around a fermion therefore swap with -1 (and two fermions
    around a boson with +1): ``anomalous`` is set whenever a same-
    statistics outer pair violates its conventional sign.  Rotating the
    canonical frame reorders the azimuths and can move the anomaly away.
    """
    if len(state.members) != 3:
        raise ValidationError("anomaly check needs exactly three particles")
    phi0 = rank0_azimuths(state)
    order = index_sort(phi0)
    ids = state.ids
    scheme = RankingScheme.cyclic(3, order=order)
    annotated = annotate(state, scheme)
    outer = (ids[order[0]], ids[order[2]])
    _, report = exchange(annotated, *outer)
    particles = state.particles
    fa = particles[order[0]].is_fermion
    fb = particles[order[2]].is_fermion
    if fa and fb:
        pair_stat = "fermion-fermion"
        expected = -1
    elif not fa and not fb:
        pair_stat = "boson-boson"
        expected = 1
    else:
        pair_stat = "mixed"
        expected = None
    sign = report.exchange_phase.sign()
    return AnomalyReport(
        exchanged_pair=outer,
        middle_id=ids[order[1]],
        middle_is_fermion=particles[order[1]].is_fermion,
        exchange_phase=report.exchange_phase,
        pair_statistics=pair_stat,
        anomalous=(expected is not None and sign != expected),
    )


@dataclass(frozen=True)
class FourFermionWitness:
    """A concrete CSP violation: four fermions on a rank-1 cycle."""

    ids: tuple[str, str, str, str]
    azimuth_turns: tuple[str, str, str, str]
    initial_phase: Phase
    first_pair: tuple[str, str]
    first_phase: Phase
    second_pair: tuple[str, str]
    second_phase: Phase
    net_phase: Phase
    csp_expected_net: int
    breaks_csp: bool


def four_fermion_breakdown() -> FourFermionWitness:
    """Demonstrate that the cyclic pattern fails for four fermions.

    Four spin-1/2 fermions sit at ascending exact azimuths on a rank-1
    cycle.  The first exchange gives -1 as the CSP demands, but the
    second exchange returns +1 (its winding changes cancel pairwise), so
    the double exchange nets -1 where the CSP requires +1: the double
    exchange is indistinguishable from a single one.
    """
    ids = ("f1", "f2", "f3", "f4")
    turns = (Fraction(0), Fraction(1, 8), Fraction(1, 4), Fraction(3, 8))
    half = HalfInt.parse("1/2")
    members = [
        (
            pid,
            ParticleState(
                Q="f",
                s=half,
                m=half,
                frame=FrameKind.CANONICAL,
                angles=CanonicalAngles(theta=1.0, phi=TurnAngle(turns=t)),
            ),
        )
        for pid, t in zip(ids, turns)
    ]
    base = build_symmetric(members)
    annotated = annotate(base, RankingScheme.cyclic(4))
    initial = annotated.phase()
    first_pair = (ids[0], ids[1])
    after_first, first_report = exchange(annotated, *first_pair)
    second_pair = (ids[1], ids[2])
    _, second_report = exchange(after_first, *second_pair)
    net = first_report.exchange_phase.compose(second_report.exchange_phase)
    return FourFermionWitness(
        ids=ids,
        azimuth_turns=tuple(str(t) for t in turns),
        initial_phase=initial,
        first_pair=first_pair,
        first_phase=first_report.exchange_phase,
        second_pair=second_pair,
        second_phase=second_report.exchange_phase,
        net_phase=net,
        csp_expected_net=1,
        breaks_csp=(net.sign() != 1),
    )


@dataclass(frozen=True)
class ParityAssignment:
    """One row of the impossibility table.

    ``bits[x]`` is the shared parity of the winding differences
    (n1_x - n2_x) and (n2_x - n1_x) for particle x; the three conditions
    are the pairwise antisymmetry requirements (exactly one of the two
    relevant differences odd)."""

    bits: tuple[int, int, int]
    conditions: tuple[bool, bool, bool]
    satisfies_all: bool


@dataclass(frozen=True)
class ImpossibilityCertificate:
    """Exhaustive refutation of simultaneous pairwise antisymmetry.

    A candidate state vector assigns each particle x a winding n^p_x for
    each ordering label p; an exchange of the particles carrying labels
    1 and 2 multiplies the state by
    e^{i 2 pi (m_x (n1_x - n2_x) + m_y (n2_y - n1_y))}.  For fermions
    (2m odd) antisymmetry under that exchange requires exactly one of the
    two differences to be odd.  Since (n1_x - n2_x) and (n2_x - n1_x)
    share parity, only one free bit per particle remains; the three
    pairwise conditions are XOR constraints whose sum is contradictory.
    """

    particle_names: tuple[str, str, str]
    difference_names: tuple[str, ...]
    conditions: tuple[str, str, str]
    rows: tuple[ParityAssignment, ...]
    satisfying_count: int
    relaxations: dict[int, int] = field(default_factory=dict)

    @property
    def impossible(self) -> bool:
        return self.satisfying_count == 0


def impossibility_search() -> ImpossibilityCertificate:
    """Enumerate all parity assignments; none satisfies all three conditions.

    The free space is 2^3 (one parity bit per particle; the six winding
    differences collapse pairwise).  Dropping any single condition leaves
    satisfiable assignments, so the contradiction needs all three pairs.
    """
    names = ("x", "y", "z")
    diffs = tuple(
        f"n{p}_{t} - n{q}_{t}" for t in names for (p, q) in ((1, 2), (2, 1))
    )
    condition_texts = (
        "exactly one of n1_x - n2_x, n2_y - n1_y is odd (exchange x<->y)",
        "exactly one of n1_y - n2_y, n2_z - n1_z is odd (exchange y<->z)",
        "exactly one of n1_z - n2_z, n2_x - n1_x is odd (exchange z<->x)",
    )
    rows = []
    satisfying = 0
    relax_counts = {0: 0, 1: 0, 2: 0}
    for bits in itertools.product((0, 1), repeat=3):
        conds = (
            bits[0] ^ bits[1] == 1,
            bits[1] ^ bits[2] == 1,
            bits[2] ^ bits[0] == 1,
        )
        ok = all(conds)
        rows.append(
            ParityAssignment(bits=bits, conditions=conds, satisfies_all=ok)
        )
        if ok:
            satisfying += 1
        for dropped in range(3):
            if all(c for idx, c in enumerate(conds) if idx != dropped):
                relax_counts[dropped] += 1
    return ImpossibilityCertificate(
        particle_names=names,
        difference_names=diffs,
        conditions=condition_texts,
        rows=tuple(rows),
        satisfying_count=satisfying,
        relaxations=relax_counts,
    )


@dataclass(frozen=True)
class FoundScheme:
    """One CSP-emulating scheme found by the search."""

    sequences: dict[str, tuple[str, ...]]
    fb_sign_stable: bool | None


@dataclass(frozen=True)
class SchemeSearchResult:
    max_rank: int
    candidates_tested: int
    found: tuple[FoundScheme, ...]


def _slot_sequences(n: int, slot: int, max_rank: int) -> list[tuple[int, ...]]:
    """All sequences for one slot: other slots, no consecutive repeats."""
    others = [s for s in range(n) if s != slot]
    out: list[tuple[int, ...]] = [()]
    frontier: list[tuple[int, ...]] = [()]
    for _ in range(max_rank):
        nxt = []
        for seq in frontier:
            for o in others:
                if seq and seq[-1] == o:
                    continue
                nxt.append(seq + (o,))
        out.extend(nxt)
        frontier = nxt
    return out


def _parity_of(
    occ: Sequence[int],
    sequences: Sequence[tuple[int, ...]],
    fermion: Sequence[bool],
    dmat: Sequence[Sequence[int]],
) -> int:
    parity = 0
    for t, seq in enumerate(sequences):
        if not seq:
            continue
        member = occ[t]
        if not fermion[member]:
            continue
        w = 0
        prev = occ[seq[0]]
        for s in seq[1:]:
            nxt = occ[s]
            w ^= dmat[nxt][prev]
            prev = nxt
        w ^= dmat[member][prev]
        parity ^= w
    return parity


def _swap_members(occ: tuple[int, ...], x: int, y: int) -> tuple[int, ...]:
    sx, sy = occ.index(x), occ.index(y)
    out = list(occ)
    out[sx], out[sy] = out[sy], out[sx]
    return tuple(out)


def _relabel_scheme(
    sequences: tuple[tuple[int, ...], ...], perm: Sequence[int]
) -> tuple[tuple[int, ...], ...]:
    out: list[tuple[int, ...]] = [()] * len(sequences)
    for t, seq in enumerate(sequences):
        out[perm[t]] = tuple(perm[s] for s in seq)
    return tuple(out)


def scheme_search(state: SymmetricState, max_rank: int = 1) -> SchemeSearchResult:
    """Search all bounded ranking patterns for CSP-emulating ones.

    Every combination of per-slot sequences up to ``max_rank`` is scored:
    a pattern is kept when all fermion-fermion transpositions give -1 and
    all boson-boson ones +1, both as single exchanges and as second
    exchanges following any same-statistics first (mixed firsts leave the
    emulation domain and are not scored).  Kept patterns are re-verified
    with the exact phase machinery and de-duplicated up to relabeling of
    particles with identical descriptions.  ``fb_sign_stable`` reports
    whether every fermion-boson exchange phase is independent of a prior
    exchange (None when there are no mixed pairs).

    Budget: at most 5 particles, rank 3, and 500000 candidate patterns.
    """
    n = len(state.members)
    if n > MAX_SEARCH_PARTICLES:
        raise BudgetExceeded(f"search supports at most {MAX_SEARCH_PARTICLES} particles")
    if max_rank < 0 or max_rank > MAX_SEARCH_RANK:
        raise BudgetExceeded(f"search supports ranks 0..{MAX_SEARCH_RANK}")
    phi0 = rank0_azimuths(state)
    particles = state.particles
    ids = state.ids
    fermion = [p.is_fermion for p in particles]
    dmat = [
        [d_order(j, i, phi0) if j != i else 0 for i in range(n)] for j in range(n)
    ]
    per_slot = [_slot_sequences(n, t, max_rank) for t in range(n)]
    total = 1
    for options in per_slot:
        total *= len(options)
    if total > MAX_SEARCH_CANDIDATES:
        raise BudgetExceeded(
            f"{total} candidate patterns exceed the {MAX_SEARCH_CANDIDATES} budget"
        )

    identity = tuple(range(n))
    member_pairs = list(itertools.combinations(range(n), 2))
    pair_targets: list[int | None] = []
    for x, y in member_pairs:
        if fermion[x] and fermion[y]:
            pair_targets.append(1)  # odd parity ratio
        elif not fermion[x] and not fermion[y]:
            pair_targets.append(0)
        else:
            pair_targets.append(None)
    swapped_occs = [_swap_members(identity, x, y) for x, y in member_pairs]

    found_sequences: list[tuple[tuple[int, ...], ...]] = []
    tested = 0
    for combo in itertools.product(*per_slot):
        tested += 1
        base_parity = _parity_of(identity, combo, fermion, dmat)
        ok = True
        mid_parities = []
        for occ1, target in zip(swapped_occs, pair_targets):
            p1 = _parity_of(occ1, combo, fermion, dmat)
            mid_parities.append(p1)
            if target is not None and (p1 ^ base_parity) != target:
                ok = False
                break
        if not ok:
            continue
        for occ1, p1, first_target in zip(swapped_occs, mid_parities, pair_targets):
            if first_target is None:
                continue
            for (x, y), target in zip(member_pairs, pair_targets):
                if target is None:
                    continue
                occ2 = _swap_members(occ1, x, y)
                p2 = _parity_of(occ2, combo, fermion, dmat)
                if (p2 ^ p1) != target:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found_sequences.append(combo)

    # De-duplicate up to relabeling of identical particles.
    groups: dict[tuple, list[int]] = {}
    for i, p in enumerate(particles):
        groups.setdefault(p.description_key(), []).append(i)
    nontrivial = [g for g in groups.values() if len(g) > 1]
    canon_map: dict[tuple, tuple] = {}
    for seqs in found_sequences:
        canon = seqs
        if nontrivial:
            candidates = [seqs]
            for assignment in itertools.product(
                *(itertools.permutations(g) for g in nontrivial)
            ):
                perm = list(range(n))
                for group, permuted in zip(nontrivial, assignment):
                    for src, dst in zip(group, permuted):
                        perm[src] = dst
                candidates.append(_relabel_scheme(seqs, perm))
            canon = min(candidates)
        if canon not in canon_map:
            canon_map[canon] = seqs

    stats = {pid: particles[i].is_fermion for i, pid in enumerate(ids)}
    has_mixed = any(t is None for t in pair_targets)
    found: list[FoundScheme] = []
    for canon in sorted(canon_map):
        scheme = RankingScheme(canon)
        annotated = annotate(state, scheme)
        table = phase_table(annotated)
        if not csp_verdict(table, stats):
            raise PermsymError(
                "internal error: parity search and exact phases disagree"
            )
        stable: bool | None = None
        if has_mixed:
            stable = _fb_sign_stable(annotated, table, stats)
        found.append(
            FoundScheme(
                sequences={
                    ids[t]: tuple(ids[s] for s in seq)
                    for t, seq in enumerate(canon)
                },
                fb_sign_stable=stable,
            )
        )
    return SchemeSearchResult(max_rank=max_rank, candidates_tested=tested, found=tuple(found))


def _fb_sign_stable(
    annotated: AnnotatedState, table: PhaseTable, stats: dict[str, bool]
) -> bool:
    """Do mixed-pair exchange phases survive a prior exchange unchanged?"""
    mixed = [
        pair for pair in table.singles if stats[pair[0]] != stats[pair[1]]
    ]
    for (first, second), (_, second_phase) in table.double_steps.items():
        if second in mixed and second_phase.sign() != table.singles[second].sign():
            return False
    return True
