"""Command layer: one function per user-facing operation.

Each command takes plain JSON-shaped data, runs the domain machinery and
returns the report dict.  Both the HTTP service and direct library users
go through these functions, so every front end reports identically.
"""

from __future__ import annotations

from typing import Any, Mapping

from .config import parse_config
from .reports import (
    breakdown_report,
    csp_report,
    exchange_report,
    impossibility_report,
    search_report,
    verify_report,
)
from .states import annotate, exchange
from .symmetrization import (
    boson_anomaly_check,
    csp_verdict,
    four_fermion_breakdown,
    impossibility_search,
    phase_table,
    ruleset_scheme,
    scheme_search,
)
from .verify import verification_suite


def cmd_verify(data: Mapping[str, Any], tolerance: float | None = None) -> dict[str, Any]:
    cfg = parse_config(data, tolerance)
    return verify_report(cfg, verification_suite(cfg))


def cmd_exchange(
    data: Mapping[str, Any], pair: tuple[str, str], tolerance: float | None = None
) -> dict[str, Any]:
    cfg = parse_config(data, tolerance)
    before = cfg.annotated_state()
    after, result = exchange(before, pair[0], pair[1])
    return exchange_report(cfg, before, after, result)


def cmd_csp(data: Mapping[str, Any], tolerance: float | None = None) -> dict[str, Any]:
    """Tabulate all single and double exchange phases against the CSP.

    Uses the scheme declared in the config when present, otherwise the
    fixed rule set.  For three particles the outer-pair exchange on the
    azimuth-ordered cycle is reported too, anomaly flag included.
    """
    cfg = parse_config(data, tolerance)
    base = cfg.base_state()
    statistics = {pid: particle.is_fermion for pid, particle in cfg.members}
    if cfg.scheme_mapping is not None:
        annotated = annotate(base, cfg.scheme_mapping)
        scheme_ids: Mapping[str, tuple[str, ...]] = cfg.scheme_mapping
        source = "config"
        ruleset = None
    else:
        ruleset = ruleset_scheme(base)
        annotated = annotate(base, ruleset.scheme)
        ids = base.ids
        scheme_ids = {
            ids[slot]: tuple(ids[s] for s in seq)
            for slot, seq in enumerate(ruleset.scheme.sequences)
            if seq
        }
        source = "ruleset"
    table = phase_table(annotated)
    consistent = csp_verdict(table, statistics)
    anomaly = boson_anomaly_check(base) if len(base.members) == 3 else None
    return csp_report(
        cfg, table, consistent, statistics, scheme_ids, source, ruleset, anomaly
    )


def cmd_impossibility() -> dict[str, Any]:
    return impossibility_report(impossibility_search())


def cmd_search(
    data: Mapping[str, Any], max_rank: int = 1, tolerance: float | None = None
) -> dict[str, Any]:
    cfg = parse_config(data, tolerance)
    return search_report(cfg, scheme_search(cfg.base_state(), max_rank))


def cmd_breakdown() -> dict[str, Any]:
    return breakdown_report(four_fermion_breakdown())
