"""Report construction and rendering.

Every command produces one JSON-serializable dict with a fixed envelope:
``schema_version``, ``tool_version``, ``command``, ``inputs`` (an echo of
the parsed configuration, absent for configless commands), ``exact`` (all
reported phases carried exactly) and ``results``.  The Markdown renderer
consumes the very same dict, so both formats carry identical numbers.

Phases serialize as tagged dicts: exact ones carry the rational number of
half turns and a display string ("+1", "-1" or "e^{i pi r}"); inexact
ones carry radians plus a tolerance note, and never pretend to be exact.
"""

from __future__ import annotations

from typing import Any, Mapping, Sequence

from . import __version__
from .config import ParsedConfig, serialize_config
from .exact import ANGLE_SNAP_TOL, Phase
from .states import AnnotatedState, ExchangeReport
from .symmetrization import (
    AnomalyReport,
    FourFermionWitness,
    ImpossibilityCertificate,
    PhaseTable,
    RuleSetScheme,
    SchemeSearchResult,
)
from .verify import CheckResult

SCHEMA_VERSION = 1


def phase_json(phase: Phase) -> dict[str, Any]:
    if phase.is_exact:
        out: dict[str, Any] = {
            "kind": "exact",
            "half_turns": str(phase.half_turns),
            "display": phase.display(),
        }
        if phase.is_real_unit:
            out["sign"] = phase.sign()
        return out
    return {
        "kind": "approximate",
        "radians": phase.inexact_radians,
        "display": phase.display(),
        "tolerance_note": f"approximate; compared at {ANGLE_SNAP_TOL:g} rad",
    }


def _check_json(check: CheckResult) -> dict[str, Any]:
    return {
        "name": check.name,
        "passed": check.passed,
        "residual": check.residual,
        "tolerance": check.tolerance,
        "note": check.note,
    }


def _envelope(command: str, cfg: ParsedConfig | None, exact: bool) -> dict[str, Any]:
    out: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": command,
        "exact": exact,
    }
    if cfg is not None:
        out["inputs"] = serialize_config(cfg)
    return out


def _scheme_json(scheme_ids: Mapping[str, Sequence[str]]) -> dict[str, list[str]]:
    return {pid: list(seq) for pid, seq in sorted(scheme_ids.items())}


def _annotated_scheme_ids(state: AnnotatedState) -> dict[str, tuple[str, ...]]:
    ids = state.base.ids
    return {
        ids[slot]: tuple(ids[s] for s in seq)
        for slot, seq in enumerate(state.scheme.sequences)
        if seq
    }


def verify_report(cfg: ParsedConfig, checks: Sequence[CheckResult]) -> dict[str, Any]:
    exact = all(
        p.angles is None or p.angles.phi.is_exact for _, p in cfg.members
    )
    report = _envelope("verify", cfg, exact)
    report["results"] = {
        "mode": cfg.mode,
        "particle_count": len(cfg.members),
        "ids": sorted(cfg.ids),
        "tolerance": cfg.tolerance,
        "checks": [_check_json(c) for c in checks],
        "passed": all(c.passed for c in checks),
    }
    return report


def exchange_report(
    cfg: ParsedConfig,
    before: AnnotatedState,
    after: AnnotatedState,
    result: ExchangeReport,
) -> dict[str, Any]:
    phases = (before.phase(), after.phase(), result.exchange_phase)
    report = _envelope("exchange", cfg, all(p.is_exact for p in phases))
    report["results"] = {
        "pair": list(result.pair),
        "scheme": _scheme_json(_annotated_scheme_ids(before)),
        "phase_before": phase_json(phases[0]),
        "phase_after": phase_json(phases[1]),
        "exchange_phase": phase_json(result.exchange_phase),
        "winding_deltas": dict(sorted(result.winding_deltas.items())),
        "third_party_affected": sorted(result.third_party_affected),
        "vanishes": result.vanishes,
    }
    return report


def _statistics_label(is_f_a: bool, is_f_b: bool) -> str:
    if is_f_a and is_f_b:
        return "fermion-fermion"
    if not is_f_a and not is_f_b:
        return "boson-boson"
    return "mixed"


def _csp_expected(label: str) -> int | None:
    return {"fermion-fermion": -1, "boson-boson": 1}.get(label)


def csp_report(
    cfg: ParsedConfig,
    table: PhaseTable,
    consistent: bool,
    statistics: Mapping[str, bool],
    scheme_ids: Mapping[str, Sequence[str]],
    scheme_source: str,
    ruleset: RuleSetScheme | None = None,
    anomaly: AnomalyReport | None = None,
) -> dict[str, Any]:
    singles = []
    for pair in sorted(table.singles):
        label = _statistics_label(statistics[pair[0]], statistics[pair[1]])
        expected = _csp_expected(label)
        phase = table.singles[pair]
        singles.append(
            {
                "pair": list(pair),
                "statistics": label,
                "phase": phase_json(phase),
                "csp_expected_sign": expected,
                "matches_csp": None if expected is None else phase.sign() == expected,
            }
        )
    doubles = []
    for key in sorted(table.doubles):
        first, second = key
        step1, step2 = table.double_steps[key]
        label = _statistics_label(statistics[second[0]], statistics[second[1]])
        expected = _csp_expected(label)
        if _csp_expected(_statistics_label(statistics[first[0]], statistics[first[1]])) is None:
            expected = None  # a mixed first exchange leaves the emulation domain
        doubles.append(
            {
                "first_pair": list(first),
                "second_pair": list(second),
                "first_phase": phase_json(step1),
                "second_phase": phase_json(step2),
                "net_phase": phase_json(table.doubles[key]),
                "second_csp_expected_sign": expected,
                "second_matches_csp": None
                if expected is None
                else step2.sign() == expected,
            }
        )
    all_phases = list(table.singles.values()) + [
        p for pair in table.double_steps.values() for p in pair
    ]
    report = _envelope("csp", cfg, all(p.is_exact for p in all_phases))
    results: dict[str, Any] = {
        "scheme_source": scheme_source,
        "scheme": _scheme_json(scheme_ids),
        "singles": singles,
        "doubles": doubles,
        "csp_consistent": consistent,
    }
    if ruleset is not None:
        results["azimuth_order"] = list(ruleset.sorted_ids)
        results["fermions"] = sorted(ruleset.fermion_ids)
        results["bosons"] = sorted(ruleset.boson_ids)
    if anomaly is not None:
        results["outer_pair_anomaly"] = {
            "exchanged_pair": list(anomaly.exchanged_pair),
            "middle_id": anomaly.middle_id,
            "middle_is_fermion": anomaly.middle_is_fermion,
            "exchange_phase": phase_json(anomaly.exchange_phase),
            "pair_statistics": anomaly.pair_statistics,
            "anomalous": anomaly.anomalous,
        }
    report["results"] = results
    return report


def impossibility_report(cert: ImpossibilityCertificate) -> dict[str, Any]:
    report = _envelope("impossibility", None, exact=True)
    report["results"] = {
        "particle_names": list(cert.particle_names),
        "difference_names": list(cert.difference_names),
        "conditions": list(cert.conditions),
        "rows": [
            {
                "bits": list(row.bits),
                "conditions": list(row.conditions),
                "satisfies_all": row.satisfies_all,
            }
            for row in cert.rows
        ],
        "satisfying_count": cert.satisfying_count,
        "impossible": cert.impossible,
        "relaxations": [
            {"dropped_condition": idx, "satisfying_count": count}
            for idx, count in sorted(cert.relaxations.items())
        ],
    }
    return report


def search_report(cfg: ParsedConfig, result: SchemeSearchResult) -> dict[str, Any]:
    report = _envelope("search", cfg, exact=True)
    report["results"] = {
        "max_rank": result.max_rank,
        "candidates_tested": result.candidates_tested,
        "found_count": len(result.found),
        "found": [
            {
                "scheme": _scheme_json(fs.sequences),
                "fb_sign_stable": fs.fb_sign_stable,
            }
            for fs in result.found
        ],
    }
    return report


def breakdown_report(witness: FourFermionWitness) -> dict[str, Any]:
    report = _envelope("breakdown", None, exact=True)
    report["results"] = {
        "ids": list(witness.ids),
        "azimuth_turns": list(witness.azimuth_turns),
        "initial_phase": phase_json(witness.initial_phase),
        "first_pair": list(witness.first_pair),
        "first_phase": phase_json(witness.first_phase),
        "second_pair": list(witness.second_pair),
        "second_phase": phase_json(witness.second_phase),
        "net_phase": phase_json(witness.net_phase),
        "csp_expected_net_sign": witness.csp_expected_net,
        "breaks_csp": witness.breaks_csp,
    }
    return report


def _md_phase(cell: Mapping[str, Any]) -> str:
    return str(cell["display"])


def _md_table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> list[str]:
    out = ["| " + " | ".join(headers) + " |"]
    out.append("|" + "|".join([" --- "] * len(headers)) + "|")
    for row in rows:
        out.append("| " + " | ".join(str(c) for c in row) + " |")
    return out


def _md_header(report: Mapping[str, Any]) -> list[str]:
    lines = [
        f"# {report['command']} report",
        "",
        f"- tool version: {report['tool_version']}",
        f"- schema version: {report['schema_version']}",
        f"- exact: {report['exact']}",
    ]
    inputs = report.get("inputs")
    if inputs:
        lines.append("")
        lines.append("## Input")
        lines.append("")
        rows = []
        for entry in inputs["particles"]:
            if "p" in entry:
                kin = "p = ({:.9g}, {:.9g}, {:.9g})".format(*entry["p"])
            else:
                kin = f"theta = {entry['theta']:.9g}, phi = {entry['phi_turns']} turns"
            rows.append([entry["id"], entry["Q"], entry["s"], entry["m"], kin])
        lines.extend(_md_table(["id", "Q", "s", "m", "kinematics"], rows))
    return lines


def _md_verify(results: Mapping[str, Any]) -> list[str]:
    lines = [
        "",
        "## Checks",
        "",
        f"- mode: {results['mode']}",
        f"- particles: {results['particle_count']}",
        f"- tolerance: {results['tolerance']:g}",
        "",
    ]
    rows = []
    for c in results["checks"]:
        residual = "" if c["residual"] is None else f"{c['residual']:.3g}"
        tol = "" if c["tolerance"] is None else f"{c['tolerance']:g}"
        rows.append(
            [c["name"], "pass" if c["passed"] else "FAIL", residual, tol, c["note"]]
        )
    lines.extend(_md_table(["check", "status", "residual", "tolerance", "note"], rows))
    lines.append("")
    lines.append(f"**Overall: {'pass' if results['passed'] else 'FAIL'}**")
    return lines


def _md_exchange(results: Mapping[str, Any]) -> list[str]:
    a, b = results["pair"]
    lines = ["", f"## Exchange {a} <-> {b}", ""]
    scheme = results["scheme"]
    if scheme:
        lines.append("Ranked slots: " + ", ".join(
            f"{pid} <- ({', '.join(seq)})" for pid, seq in scheme.items()
        ))
    else:
        lines.append("All slots rank 0.")
    lines.extend(
        [
            "",
            f"- phase before: {_md_phase(results['phase_before'])}",
            f"- phase after: {_md_phase(results['phase_after'])}",
            f"- exchange phase: {_md_phase(results['exchange_phase'])}",
            f"- vanishes: {results['vanishes']}",
        ]
    )
    deltas = results["winding_deltas"]
    if deltas:
        lines.append(
            "- winding deltas: "
            + ", ".join(f"{pid}: {dn:+d}" for pid, dn in deltas.items())
        )
    third = results["third_party_affected"]
    if third:
        lines.append("- third parties affected: " + ", ".join(third))
    return lines


def _md_csp(results: Mapping[str, Any]) -> list[str]:
    lines = ["", "## Pairwise exchange phases", ""]
    lines.append(f"- scheme source: {results['scheme_source']}")
    scheme = results["scheme"]
    if scheme:
        lines.append("- ranked slots: " + ", ".join(
            f"{pid} <- ({', '.join(seq)})" for pid, seq in scheme.items()
        ))
    if "azimuth_order" in results:
        lines.append("- azimuth order: " + ", ".join(results["azimuth_order"]))
    lines.append("")
    rows = [
        [
            " ".join(s["pair"]),
            s["statistics"],
            _md_phase(s["phase"]),
            "" if s["csp_expected_sign"] is None else f"{s['csp_expected_sign']:+d}",
            "" if s["matches_csp"] is None else ("yes" if s["matches_csp"] else "NO"),
        ]
        for s in results["singles"]
    ]
    lines.extend(_md_table(["pair", "statistics", "phase", "CSP", "matches"], rows))
    lines.append("")
    lines.append("## Double exchanges")
    lines.append("")
    rows = [
        [
            " ".join(d["first_pair"]),
            " ".join(d["second_pair"]),
            _md_phase(d["first_phase"]),
            _md_phase(d["second_phase"]),
            _md_phase(d["net_phase"]),
            ""
            if d["second_matches_csp"] is None
            else ("yes" if d["second_matches_csp"] else "NO"),
        ]
        for d in results["doubles"]
    ]
    lines.extend(
        _md_table(
            ["first", "second", "phase 1", "phase 2", "net", "second matches"], rows
        )
    )
    anomaly = results.get("outer_pair_anomaly")
    if anomaly:
        lines.extend(
            [
                "",
                "## Outer-pair exchange on the cycle",
                "",
                f"- exchanged pair: {' '.join(anomaly['exchanged_pair'])}"
                f" ({anomaly['pair_statistics']})",
                f"- middle particle: {anomaly['middle_id']}"
                f" ({'fermion' if anomaly['middle_is_fermion'] else 'boson'})",
                f"- exchange phase: {_md_phase(anomaly['exchange_phase'])}",
                f"- anomalous: {anomaly['anomalous']}",
            ]
        )
    lines.append("")
    lines.append(
        f"**CSP consistent: {'yes' if results['csp_consistent'] else 'NO'}**"
    )
    return lines


def _md_impossibility(results: Mapping[str, Any]) -> list[str]:
    lines = ["", "## Parity assignments", ""]
    for i, text in enumerate(results["conditions"], start=1):
        lines.append(f"- condition {i}: {text}")
    lines.append("")
    names = results["particle_names"]
    rows = [
        [
            *row["bits"],
            *("yes" if c else "no" for c in row["conditions"]),
            "yes" if row["satisfies_all"] else "no",
        ]
        for row in results["rows"]
    ]
    lines.extend(
        _md_table(
            [f"a_{n}" for n in names] + ["cond 1", "cond 2", "cond 3", "all"], rows
        )
    )
    lines.extend(
        [
            "",
            f"- satisfying assignments: {results['satisfying_count']} of {len(results['rows'])}",
            f"- **impossible: {results['impossible']}**",
        ]
    )
    for relax in results["relaxations"]:
        lines.append(
            f"- dropping condition {relax['dropped_condition'] + 1} leaves"
            f" {relax['satisfying_count']} satisfying assignment(s)"
        )
    return lines


def _md_search(results: Mapping[str, Any]) -> list[str]:
    lines = [
        "",
        "## Scheme search",
        "",
        f"- max rank: {results['max_rank']}",
        f"- candidates tested: {results['candidates_tested']}",
        f"- schemes found: {results['found_count']}",
    ]
    for i, fs in enumerate(results["found"], start=1):
        parts = [
            f"{pid} <- ({', '.join(seq)})" if seq else f"{pid} <- ()"
            for pid, seq in fs["scheme"].items()
        ]
        stable = fs["fb_sign_stable"]
        suffix = "" if stable is None else f"; mixed-pair signs stable: {stable}"
        lines.append(f"- scheme {i}: " + "; ".join(parts) + suffix)
    return lines


def _md_breakdown(results: Mapping[str, Any]) -> list[str]:
    rows = [
        [pid, turns]
        for pid, turns in zip(results["ids"], results["azimuth_turns"])
    ]
    lines = ["", "## Double exchange on a four-particle cycle", ""]
    lines.extend(_md_table(["id", "azimuth (turns)"], rows))
    lines.extend(
        [
            "",
            f"- initial phase: {_md_phase(results['initial_phase'])}",
            f"- first exchange {' '.join(results['first_pair'])}:"
            f" {_md_phase(results['first_phase'])}",
            f"- second exchange {' '.join(results['second_pair'])}:"
            f" {_md_phase(results['second_phase'])}",
            f"- net phase: {_md_phase(results['net_phase'])}",
            f"- CSP expects net: {results['csp_expected_net_sign']:+d}",
            f"- **breaks CSP: {results['breaks_csp']}**",
        ]
    )
    return lines


_RENDERERS = {
    "verify": _md_verify,
    "exchange": _md_exchange,
    "csp": _md_csp,
    "impossibility": _md_impossibility,
    "search": _md_search,
    "breakdown": _md_breakdown,
}


def render_markdown(report: Mapping[str, Any]) -> str:
    """Render any command report as Markdown with the same numbers."""
    command = report["command"]
    lines = _md_header(report)
    lines.extend(_RENDERERS[command](report["results"]))
    return "\n".join(lines) + "\n"
