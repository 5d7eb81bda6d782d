"""Zeta-regularized determinants of operators given by arithmetic-progression spectra.

ln det = -d/ds Z(s)|_{s=0} with Z(s) = sum_n d_n^{-s}, every power taken on the principal branch.
"""

from __future__ import annotations

import cmath
import math

from src.regdet.spectrum import RegDetResult, SpectrumDescriptor, SpectrumKind
from src.specfun.complex_value import LOG_TWO_PI, ComplexLike, as_complex, complex_log, complex_power
from src.specfun.gamma import log_gamma
from src.specfun.hurwitz import hurwitz_zeta, hurwitz_zeta_ds0
from src.utils.errors import DomainError, PoleError, SpectrumError, ensure_finite
from src.utils.logger import logger

PRINCIPAL_NOTE = "principal branch, -pi < arg <= pi"


def regdet(spec: SpectrumDescriptor) -> RegDetResult:
    """Closed-form regularized determinant of a spectrum descriptor."""
    spec.validate()
    if spec.kind is SpectrumKind.CONSTANT:
        # zeta(0) = 1/2 for a constant spectrum; the determinant is rho^{1/2}
        return RegDetResult.from_log(0.5 * complex_log(spec.rho), PRINCIPAL_NOTE)

    z = spec.ratio
    if spec.kind is SpectrumKind.HALF_LINE:
        log_det = (0.5 - z) * complex_log(spec.rho) + 0.5 * LOG_TWO_PI - log_gamma(z)
        ensure_finite(log_det, "half-line log det")
        return RegDetResult.from_log(log_det, f"{PRINCIPAL_NOTE}; log Gamma modulo 2 pi i")

    det = 1.0 - cmath.exp(2j * math.pi * z)
    ensure_finite(det, "full-line det")
    return RegDetResult(
        log_det=complex_log(det),
        det=det,
        branch_note="1 - exp(2 pi i lambda/rho), Im rho > 0",
    )


def halfline_log_det_hurwitz(rho: ComplexLike, lam: ComplexLike) -> complex:
    """-d/ds zeta_rho(s, lambda) at s = 0 assembled from the Hurwitz kernels.

    zeta_rho(s, lambda) = rho^{-s} zeta(s, lambda/rho), so the log determinant is
    zeta(0, z) ln rho - zeta'(0, z).
    """
    rho = as_complex(rho, "rho")
    lam = as_complex(lam, "lambda")
    if rho == 0:
        raise SpectrumError("rho must be non-zero")
    z = lam / rho
    if z.real <= 0:
        raise DomainError(f"Hurwitz assembly needs Re(lambda/rho) > 0, got {z}")
    return hurwitz_zeta(0, z) * complex_log(rho) - hurwitz_zeta_ds0(z)


def _halfline_product(log_rho: complex, a: complex) -> complex:
    """Regularized prod_{n>=0} rho (n + a) for Re a > 0, with log rho supplied by the caller."""
    return cmath.exp(hurwitz_zeta(0, a) * log_rho - hurwitz_zeta_ds0(a))


def regdet_fullline_numeric(
    rho: ComplexLike,
    lam: ComplexLike,
    *,
    principal_reflection: bool = False,
) -> complex:
    """Full-line determinant by splitting the spectrum into two Hurwitz half-lines.

    The n >= 0 half is rho^{-s} zeta(s, z) and the n <= -1 half is (-rho)^{-s} zeta(s, 1 - z),
    i.e. zeta_rho + zeta_{-rho} - lambda^{-s} without counting n = 0 twice. Either half is first
    moved into Re a > 0 by peeling off finitely many modes, which enter as plain factors.

    ln(-rho) is taken as ln(rho) + i pi. The principal log of -rho (ln rho - i pi for Im rho > 0)
    is available through principal_reflection and gives 1 - exp(-2 pi i z) instead.
    """
    spec = SpectrumDescriptor.full_line(rho, lam)
    spec.validate()
    rho, lam = spec.rho, spec.lam
    z = spec.ratio

    up = 0 if z.real > 0 else math.floor(-z.real) + 1
    down = max(1, math.floor(z.real) + 1)
    a_up = z + up
    a_down = down - z

    log_rho = complex_log(rho)
    log_minus_rho = complex_log(-rho) if principal_reflection else log_rho + 1j * math.pi

    finite = 1.0 + 0j
    for n in range(-down + 1, up):
        finite *= rho * n + lam

    value = _halfline_product(log_rho, a_up) * _halfline_product(log_minus_rho, a_down) * finite
    logger.debug(
        f"full-line numeric: z={z}, peeled {up} upper and {down - 1} lower modes, "
        f"principal_reflection={principal_reflection}"
    )
    return ensure_finite(value, f"regdet_fullline_numeric({rho}, {lam})")


def _check_disk_params(mu: float, hbar: float, lam: float) -> float:
    mu, hbar, lam = float(mu), float(hbar), float(lam)
    if not (math.isfinite(mu) and math.isfinite(hbar) and math.isfinite(lam)):
        raise DomainError("mu, hbar and lambda must be finite")
    if mu <= 0 or hbar <= 0:
        raise DomainError(f"mu and hbar must be positive, got mu={mu}, hbar={hbar}")
    z = lam / hbar
    if z <= 0 and z == round(z):
        raise PoleError(f"lambda/hbar = {z} is a Gamma pole")
    return z


def disk_log_det(mu: float, hbar: float, lam: float) -> complex:
    """ln det D for D with spectrum (mu/2)(hbar n + lambda), n >= 0."""
    _check_disk_params(mu, hbar, lam)
    spec = SpectrumDescriptor.half_line(0.5 * mu * hbar, 0.5 * mu * lam)
    return regdet(spec).log_det


def disk_zero_mode_log_det(mu: float) -> complex:
    """ln det D0 for D0 acting as multiplication by 2 pi mu/2."""
    if float(mu) <= 0:
        raise DomainError(f"mu must be positive, got {mu}")
    return regdet(SpectrumDescriptor.constant(math.pi * float(mu))).log_det


def disk_det_ratio(mu: float, hbar: float, lam: float) -> complex:
    """det D0 / det D."""
    log_ratio = disk_zero_mode_log_det(mu) - disk_log_det(mu, hbar, lam)
    return ensure_finite(cmath.exp(log_ratio), "disk determinant ratio")


def disk_ratio_closed_form(mu: float, hbar: float, lam: float) -> complex:
    """hbar^{-1/2} (2/(mu hbar))^{-lambda/hbar} Gamma(lambda/hbar)."""
    z = _check_disk_params(mu, hbar, lam)
    log_value = -0.5 * math.log(hbar) - z * math.log(2.0 / (mu * hbar)) + log_gamma(z)
    return ensure_finite(cmath.exp(log_value), "disk closed form")


def disk_ratio_normalized(mu: float, hbar: float, lam: float) -> complex:
    """disk_det_ratio divided by its closed form, assembled factor by factor; equals 1."""
    z = _check_disk_params(mu, hbar, lam)
    value = disk_det_ratio(mu, hbar, lam)
    value *= cmath.exp(-log_gamma(z))
    value *= complex_power(2.0 / (mu * hbar), z)
    value *= math.sqrt(hbar)
    return value
