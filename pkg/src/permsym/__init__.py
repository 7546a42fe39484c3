"""Exact exchange phases for ranked multi-particle state vectors.

The library builds permutation-symmetric state vectors from unordered
particle descriptions, derives order-dependent vectors by ranking the
azimuthal angles, and computes the exact phase every pairwise exchange
picks up.  All angles, spins and phases stay rational; the only floats
are the input momenta.
"""

__version__ = "0.1.0"

from .errors import (
    BudgetExceeded,
    GeometryError,
    PermsymError,
    ValidationError,
)
from .exact import HalfInt, Phase, TurnAngle
from .geometry import Frame, Vec3
from .ranking import Rank0Azimuths, RankingScheme, winding_number
from .states import (
    AnnotatedState,
    ExchangeReport,
    FrameKind,
    ParticleState,
    SymmetricState,
    annotate,
    build_symmetric,
    exchange,
    odd_s_exclusion,
    pauli_check,
)
from .symmetrization import (
    boson_anomaly_check,
    four_fermion_breakdown,
    impossibility_search,
    phase_table,
    ruleset_scheme,
    scheme_search,
)
from .config import parse_config, serialize_config

__all__ = [
    "__version__",
    "AnnotatedState",
    "BudgetExceeded",
    "ExchangeReport",
    "Frame",
    "FrameKind",
    "GeometryError",
    "HalfInt",
    "ParticleState",
    "PermsymError",
    "Phase",
    "Rank0Azimuths",
    "RankingScheme",
    "SymmetricState",
    "TurnAngle",
    "ValidationError",
    "Vec3",
    "annotate",
    "boson_anomaly_check",
    "build_symmetric",
    "exchange",
    "four_fermion_breakdown",
    "impossibility_search",
    "odd_s_exclusion",
    "parse_config",
    "pauli_check",
    "phase_table",
    "ruleset_scheme",
    "scheme_search",
    "serialize_config",
    "winding_number",
]
