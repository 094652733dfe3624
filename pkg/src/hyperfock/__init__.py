"""Photon-added hypergeometric states and their nonclassicality quantifiers."""

from .entanglement import (
    TwoModeState,
    beamsplitter_with_vacuum,
    concurrence_potential,
    purity_closed_form_pahs,
    reduced_purity,
)
from .errors import (
    IndexOutOfRange,
    InvalidParams,
    NegativeCoefficient,
    QuadratureNotConverged,
    TruncationTooSmall,
    ZeroState,
)
from .fockspace import (
    FockState,
    add_photons,
    mean_photon_number,
    normalize,
    overlap,
    photon_number_distribution,
)
from .measures import (
    ALL_MEASURES,
    MU_UNDEFINED,
    MeasureReport,
    anticlassicality,
    measure_report,
    sps_quality_mu,
)
from .states import (
    HypergeometricParams,
    binomial,
    coherent_tail_mass,
    coherent_truncated,
    fock,
    hypergeometric,
    log_binomial_real,
    min_valid_L,
    pahs,
    pahs_norm_constant,
    pinned_L,
)
from .wigner import (
    QuadratureSpec,
    WignerGrid,
    WlnResult,
    wigner_grid,
    wigner_log_negativity,
    wigner_log_negativity_detailed,
    wigner_oracle_point,
    wigner_point,
)

__all__ = [
    "ALL_MEASURES",
    "FockState",
    "HypergeometricParams",
    "IndexOutOfRange",
    "InvalidParams",
    "MU_UNDEFINED",
    "MeasureReport",
    "NegativeCoefficient",
    "QuadratureNotConverged",
    "QuadratureSpec",
    "TruncationTooSmall",
    "TwoModeState",
    "WignerGrid",
    "WlnResult",
    "ZeroState",
    "add_photons",
    "anticlassicality",
    "beamsplitter_with_vacuum",
    "binomial",
    "coherent_tail_mass",
    "coherent_truncated",
    "concurrence_potential",
    "fock",
    "hypergeometric",
    "log_binomial_real",
    "mean_photon_number",
    "measure_report",
    "min_valid_L",
    "normalize",
    "overlap",
    "pahs",
    "pahs_norm_constant",
    "photon_number_distribution",
    "pinned_L",
    "purity_closed_form_pahs",
    "reduced_purity",
    "sps_quality_mu",
    "wigner_grid",
    "wigner_log_negativity",
    "wigner_log_negativity_detailed",
    "wigner_oracle_point",
    "wigner_point",
]

__version__ = "0.1.0"
