from src.volumes.equivariant import (
    character_closed_form,
    character_tail_bound,
    character_trace,
    classical_limit_check,
    equivariant_volume,
    equivariant_volume_gaussian,
    equivariant_volume_mc,
    loop_partition,
    mode_check,
    mode_cutoff_for_tol,
    mode_partition_3d,
    mode_partition_3d_product,
    odd_augmented_volume,
    q_classical_limit_check,
)
from src.volumes.gaussian import (
    HermitianForm,
    TruncationControl,
    degenerate_pair_integral,
    gaussian_integral,
    gaussian_integral_mc,
)
from src.volumes.grassmann import GrassmannElement, berezin_det, monomial_product_sign

__all__ = [
    "GrassmannElement",
    "HermitianForm",
    "TruncationControl",
    "berezin_det",
    "character_closed_form",
    "character_tail_bound",
    "character_trace",
    "classical_limit_check",
    "degenerate_pair_integral",
    "equivariant_volume",
    "equivariant_volume_gaussian",
    "equivariant_volume_mc",
    "gaussian_integral",
    "gaussian_integral_mc",
    "loop_partition",
    "mode_check",
    "mode_cutoff_for_tol",
    "mode_partition_3d",
    "mode_partition_3d_product",
    "monomial_product_sign",
    "odd_augmented_volume",
    "q_classical_limit_check",
]
