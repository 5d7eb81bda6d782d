from src.lfactor.checks import (
    complex_real_duplication_report,
    duplication_normalization,
    multiplicativity_report,
    normalization_roundtrip_report,
    permutation_report,
    q_degeneration_report,
)
from src.lfactor.local_factors import (
    disk_correlator,
    l_factor,
    l_factor_breakdown,
    q_l_factor,
    theorem21_specialization,
)
from src.lfactor.models import (
    ComplexPlace,
    EpsilonNormalization,
    LFactorSpec,
    NonArchPlace,
    RealPlace,
    is_prime,
)

__all__ = [
    "ComplexPlace",
    "EpsilonNormalization",
    "LFactorSpec",
    "NonArchPlace",
    "RealPlace",
    "complex_real_duplication_report",
    "disk_correlator",
    "duplication_normalization",
    "is_prime",
    "l_factor",
    "l_factor_breakdown",
    "multiplicativity_report",
    "normalization_roundtrip_report",
    "permutation_report",
    "q_degeneration_report",
    "q_l_factor",
    "theorem21_specialization",
]
