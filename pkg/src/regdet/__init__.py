from src.regdet.consistency import (
    disk_algebra_report,
    disk_algebra_sample,
    halfline_hurwitz_report,
    halfline_hurwitz_sample,
    halfline_scaling_report,
    regdet_consistency_report,
    regdet_consistency_sample,
)
from src.regdet.determinant import (
    disk_det_ratio,
    disk_log_det,
    disk_ratio_closed_form,
    disk_ratio_normalized,
    disk_zero_mode_log_det,
    halfline_log_det_hurwitz,
    regdet,
    regdet_fullline_numeric,
)
from src.regdet.spectrum import RegDetResult, SpectrumDescriptor, SpectrumKind

__all__ = [
    "RegDetResult",
    "SpectrumDescriptor",
    "SpectrumKind",
    "disk_algebra_report",
    "disk_algebra_sample",
    "disk_det_ratio",
    "disk_log_det",
    "disk_ratio_closed_form",
    "disk_ratio_normalized",
    "disk_zero_mode_log_det",
    "halfline_hurwitz_report",
    "halfline_hurwitz_sample",
    "halfline_log_det_hurwitz",
    "halfline_scaling_report",
    "regdet",
    "regdet_consistency_report",
    "regdet_consistency_sample",
    "regdet_fullline_numeric",
]
