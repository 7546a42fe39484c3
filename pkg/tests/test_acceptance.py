"""Acceptance gate: one test per headline claim, each printing a verdict line.

Every check here is exact (integer or rational equality) except the
geometry residuals, whose tolerances are stated inline.  Runtime bounds
are asserted where a criterion carries one.
"""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction

import pytest

from permsym.cg import swap_symmetry_sign
from permsym.exact import HalfInt, TurnAngle
from permsym.geometry import (
    DegenerateAxis,
    IndeterminatePhi,
    Vec3,
    aggregate_axis,
    canonical_angles,
    canonical_frame,
    check_transverse_sum,
    dependent_phi,
)
from permsym.ranking import Rank0Azimuths, RankingScheme, rank_n_phi, winding_number
from permsym.states import annotate, exchange, odd_s_exclusion, pauli_check
from permsym.symmetrization import (
    boson_anomaly_check,
    four_fermion_breakdown,
    impossibility_search,
    phase_table,
    scheme_search,
)

from support import angle_particle, boson, distinct_turns, fermion, random_spin, state_of


def verdict(capsys, number: int, label: str, passed: bool, elapsed: float | None = None):
    timing = f" ({elapsed * 1000:.1f} ms)" if elapsed is not None else ""
    with capsys.disabled():
        print(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {label}{timing}")
    assert passed, f"criterion {number} failed: {label}"


def test_criterion_1_pair_exchange_phase(capsys):
    """500 random rank-1 pairs: phase is (-1)^(2s) of the lower-azimuth member."""
    rng = random.Random(101)
    scheme = {"i": [], "j": ["i"]}
    start = time.perf_counter()
    ok = True
    for _ in range(500):
        phi_i, phi_j = distinct_turns(rng, 2)
        s_i, m_i = random_spin(rng)
        s_j, m_j = random_spin(rng)
        state = annotate(
            state_of(
                ("i", angle_particle("a", s_i, m_i, phi_i)),
                ("j", angle_particle("b", s_j, m_j, phi_j)),
            ),
            scheme,
        )
        _, report = exchange(state, "i", "j")
        lower = s_j if phi_j < phi_i else s_i
        expected = -1 if lower.twice % 2 else 1
        ok = ok and report.exchange_phase.sign() == expected
    elapsed = time.perf_counter() - start
    verdict(capsys, 1, "500 rank-1 pair exchanges match the lower-azimuth spin sign",
            ok and elapsed < 1.0, elapsed)


def test_criterion_2_pauli(capsys):
    pair = {"a": [], "b": ["a"]}
    fermions = annotate(
        state_of(("a", fermion("e", "1/4")), ("b", fermion("e", "1/4"))), pair
    )
    bosons = annotate(
        state_of(("a", boson("pi", "1/4")), ("b", boson("pi", "1/4"))), pair
    )
    ok = pauli_check(fermions, "a", "b") and not pauli_check(bosons, "a", "b")
    verdict(capsys, 2, "identical fermion pair vanishes, identical boson pair survives", ok)


def test_criterion_3_odd_s_exclusion(capsys):
    ok = True
    for text in ("1/2", "1", "3/2", "2"):
        s = HalfInt.parse(text)
        expected = [k for k in range(s.twice + 1) if k % 2 == 1]
        ok = ok and odd_s_exclusion(s) == expected
        # independent route: ladder-built table sign times the pair exchange sign
        pair_sign = -1 if s.twice % 2 else 1
        oracle = [S for S in range(s.twice + 1)
                  if swap_symmetry_sign(s, S) * pair_sign == -1]
        ok = ok and oracle == expected
    verdict(capsys, 3, "forbidden total spins are exactly the odd S <= 2s", ok)


def test_criterion_4_three_fermion_cycle(capsys):
    rng = random.Random(404)
    ok = True
    for _ in range(100):
        turns = distinct_turns(rng, 3)
        rng.shuffle(turns)  # unsorted inputs included
        members = []
        for i, phi in enumerate(turns):
            twice_s = rng.choice((1, 3))
            m = HalfInt(rng.randrange(-twice_s, twice_s + 1, 2))
            members.append((f"f{i}", angle_particle("q", HalfInt(twice_s), m, phi)))
        table = phase_table(annotate(state_of(*members), RankingScheme.cyclic(3)))
        ok = ok and all(p.sign() == -1 for p in table.singles.values())
        ok = ok and all(p.sign() == 1 for p in table.doubles.values())
    verdict(capsys, 4, "100 random 3-fermion cycles: singles -1, doubles net +1", ok)


def test_criterion_5_boson_anomaly(capsys):
    def trio(shift):
        phis = [(Fraction(0) - shift) % 1, (Fraction(1, 3) - shift) % 1,
                (Fraction(2, 3) - shift) % 1]
        return state_of(
            ("b1", boson("pi", phis[0])),
            ("f", fermion("e", phis[1])),
            ("b2", boson("pi", phis[2])),
        )

    before = boson_anomaly_check(trio(Fraction(0)))
    after = boson_anomaly_check(trio(Fraction(5, 12)))  # frame rotated: new order
    ok = (
        before.middle_is_fermion
        and before.pair_statistics == "boson-boson"
        and before.exchange_phase.sign() == -1
        and before.anomalous
        and not after.middle_is_fermion
        and not after.anomalous
    )
    verdict(capsys, 5, "boson pair around a fermion swaps with -1; rotation flips it", ok)


def test_criterion_6_four_fermion_breakdown(capsys):
    witness = four_fermion_breakdown()
    half = HalfInt.parse("1/2")
    ok = (
        witness.first_phase.sign() == -1
        and witness.second_phase.sign() == 1
        and witness.net_phase.sign() == (-1 if half.twice % 2 else 1)
        and witness.csp_expected_net == 1
        and witness.breaks_csp
    )
    four = state_of(*((f"f{i}", fermion("e", Fraction(i, 8))) for i in range(4)))
    result = scheme_search(four, max_rank=1)
    ok = ok and result.found == () and result.candidates_tested == 256
    verdict(capsys, 6, "4-fermion double exchange nets -1; no rank-1 scheme repairs it", ok)


def test_criterion_7_impossibility(capsys):
    start = time.perf_counter()
    cert = impossibility_search()
    elapsed = time.perf_counter() - start
    ok = (
        len(cert.rows) == 8
        and cert.satisfying_count == 0
        and cert.impossible
        and sorted(cert.relaxations) == [0, 1, 2]
        and all(count > 0 for count in cert.relaxations.values())
        and elapsed < 0.010
    )
    verdict(capsys, 7, "8-row parity table: unsatisfiable, every relaxation is not", ok,
            elapsed)


def test_criterion_8_geometry(capsys):
    rng = random.Random(808)

    def random_momenta(n):
        while True:
            ps = [Vec3(rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1))
                  for _ in range(n)]
            if all(p.norm > 1e-3 for p in ps):
                return ps

    start = time.perf_counter()
    ok = True
    checked = 0
    while checked < 1000:
        momenta = random_momenta(rng.randint(2, 6))
        try:
            # snapping moves azimuths by up to its own 1e-9 tolerance, which
            # would drown a 1e-9 cross-check, so compare the raw angles
            k = aggregate_axis(momenta)
            frame = canonical_frame(k)
            angles = [canonical_angles(p, frame, snap_tol=0.0) for p in momenta]
            recon = [dependent_phi(i, angles, snap_tol=0.0) for i in range(len(angles))]
        except (DegenerateAxis, IndeterminatePhi):
            continue  # a fresh draw replaces the rare degenerate configuration
        ok = ok and check_transverse_sum(momenta, k) < 1e-9
        for angle, phi in zip(angles, recon):
            diff = (phi.radians - angle.phi.radians) % (2 * math.pi)
            ok = ok and min(diff, 2 * math.pi - diff) < 1e-9
        checked += 1
    elapsed = time.perf_counter() - start
    verdict(capsys, 8,
            "1000 random 2-6 particle frames: closure and azimuth residuals < 1e-9",
            ok and elapsed < 5.0, elapsed)


def test_criterion_9_winding_oracle(capsys):
    def all_chains(n, max_len):
        for target in range(n):
            pool = [p for p in range(n) if p != target]
            frontier = [(q,) for q in pool]
            for _ in range(max_len):
                next_frontier = []
                for seq in frontier:
                    yield target, seq
                    next_frontier.extend(seq + (q,) for q in pool if q != seq[-1])
                frontier = next_frontier

    generic = Rank0Azimuths(["1/11", "3/11", "4/11", "7/11", "9/11"])
    tied = Rank0Azimuths(["1/4", "3/4", "1/4", "0", "3/4"])
    ok = True
    count = 0
    for phi0 in (generic, tied):
        for target, seq in all_chains(5, 4):
            ok = ok and winding_number(target, seq, phi0) == rank_n_phi(target, seq, phi0)[1]
            count += 1
    verdict(capsys, 9,
            f"order-bit and angle-difference windings agree on {count} chains", ok)
