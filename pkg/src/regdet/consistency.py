from __future__ import annotations

import cmath
import math
from typing import Any, Dict, List

import numpy as np

from src.regdet.determinant import (
    disk_det_ratio,
    disk_ratio_closed_form,
    disk_ratio_normalized,
    halfline_log_det_hurwitz,
    regdet,
    regdet_fullline_numeric,
)
from src.regdet.spectrum import SpectrumDescriptor
from src.utils.errors import ArchLabError
from src.utils.seeding import substream
from src.validation.models import VerificationReport

CONSISTENCY_TOL = 1e-8
HURWITZ_TOL = 1e-9
DISK_ALGEBRA_TOL = 1e-12


def sample_fullline(rng: np.random.Generator) -> Dict[str, complex]:
    """rho in the open upper half plane, lambda with Re(lambda/rho) in (0.05, 0.95)."""
    theta = rng.uniform(0.1, math.pi - 0.1)
    radius = rng.uniform(0.5, 2.0)
    rho = radius * cmath.exp(1j * theta)
    z = complex(rng.uniform(0.05, 0.95), rng.uniform(-1.0, 1.0))
    return {"rho": rho, "lambda": rho * z}


def sample_halfline(rng: np.random.Generator) -> Dict[str, complex]:
    """arg rho in (-pi/2, pi/2) and Re(lambda/rho) in (0.05, 3), so the rho^{-s} split stays principal."""
    theta = rng.uniform(-0.45 * math.pi, 0.45 * math.pi)
    radius = rng.uniform(0.5, 2.0)
    rho = radius * cmath.exp(1j * theta)
    z = complex(rng.uniform(0.05, 3.0), rng.uniform(-2.0, 2.0))
    return {"rho": rho, "lambda": rho * z}


def sample_disk(rng: np.random.Generator) -> Dict[str, float]:
    return {
        "mu": float(rng.uniform(0.1, 5.0)),
        "hbar": float(rng.uniform(0.2, 3.0)),
        "lambda": float(rng.uniform(0.1, 5.0)),
    }


def fullline_report(rho: complex, lam: complex, tol: float = CONSISTENCY_TOL) -> VerificationReport:
    params: Dict[str, Any] = {"rho": rho, "lambda": lam}
    name = "regdet.fullline.closed_vs_numeric"
    try:
        closed = regdet(SpectrumDescriptor.full_line(rho, lam)).det
        numeric = regdet_fullline_numeric(rho, lam)
    except ArchLabError as e:
        return VerificationReport.from_error(name, e, tol, params)
    return VerificationReport.compare(name, numeric, closed, tol, params=params)


def disk_report(mu: float, hbar: float, lam: float, tol: float = CONSISTENCY_TOL) -> VerificationReport:
    params: Dict[str, Any] = {"mu": mu, "hbar": hbar, "lambda": lam}
    name = "regdet.disk_ratio.assembled_vs_closed"
    try:
        assembled = disk_det_ratio(mu, hbar, lam)
        closed = disk_ratio_closed_form(mu, hbar, lam)
    except ArchLabError as e:
        return VerificationReport.from_error(name, e, tol, params)
    return VerificationReport.compare(name, assembled, closed, tol, params=params)


def regdet_consistency_sample(seed: int, index: int, tol: float = CONSISTENCY_TOL) -> List[VerificationReport]:
    rng = substream(seed, "regdet.consistency", index)
    line = sample_fullline(rng)
    disk = sample_disk(rng)
    return [
        fullline_report(line["rho"], line["lambda"], tol),
        disk_report(disk["mu"], disk["hbar"], disk["lambda"], tol),
    ]


def regdet_consistency_report(samples: int, seed: int, tol: float = CONSISTENCY_TOL) -> List[VerificationReport]:
    """Two reports per sample: full-line closed vs numeric, and disk ratio vs its closed form."""
    reports: List[VerificationReport] = []
    for index in range(max(0, int(samples))):
        reports.extend(regdet_consistency_sample(seed, index, tol))
    return reports


def halfline_hurwitz_sample(seed: int, index: int, tol: float = HURWITZ_TOL) -> VerificationReport:
    sample = sample_halfline(substream(seed, "regdet.halfline", index))
    rho, lam = sample["rho"], sample["lambda"]
    params: Dict[str, Any] = {"rho": rho, "lambda": lam}
    name = "regdet.halfline.hurwitz_vs_closed"
    try:
        assembled = cmath.exp(halfline_log_det_hurwitz(rho, lam))
        closed = regdet(SpectrumDescriptor.half_line(rho, lam)).det
    except ArchLabError as e:
        return VerificationReport.from_error(name, e, tol, params)
    return VerificationReport.compare(name, assembled, closed, tol, params=params)


def halfline_hurwitz_report(samples: int, seed: int, tol: float = HURWITZ_TOL) -> List[VerificationReport]:
    return [halfline_hurwitz_sample(seed, index, tol) for index in range(max(0, int(samples)))]


def disk_algebra_sample(seed: int, index: int, tol: float = DISK_ALGEBRA_TOL) -> VerificationReport:
    disk = sample_disk(substream(seed, "regdet.disk_algebra", index))
    name = "regdet.disk_ratio.normalized_is_one"
    try:
        value = disk_ratio_normalized(disk["mu"], disk["hbar"], disk["lambda"])
    except ArchLabError as e:
        return VerificationReport.from_error(name, e, tol, disk)
    return VerificationReport.compare(name, value, 1.0, tol, params=disk)


def disk_algebra_report(samples: int, seed: int, tol: float = DISK_ALGEBRA_TOL) -> List[VerificationReport]:
    return [disk_algebra_sample(seed, index, tol) for index in range(max(0, int(samples)))]


def halfline_scaling_report(rho: complex, lam: complex, c: float, tol: float = HURWITZ_TOL) -> VerificationReport:
    """det(c D) = c^{zeta(0)} det D with zeta(0) = 1/2 - lambda/rho, for real c > 0."""
    params: Dict[str, Any] = {"rho": rho, "lambda": lam, "c": c}
    name = "regdet.halfline.scaling"
    try:
        scaled = regdet(SpectrumDescriptor.half_line(c * rho, c * lam)).det
        base = regdet(SpectrumDescriptor.half_line(rho, lam)).det
        expected = base * cmath.exp((0.5 - lam / rho) * math.log(c))
    except ArchLabError as e:
        return VerificationReport.from_error(name, e, tol, params)
    return VerificationReport.compare(name, scaled, expected, tol, params=params)
