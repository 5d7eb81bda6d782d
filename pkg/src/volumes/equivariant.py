from __future__ import annotations

import math
import sys
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import nbinom

from src.regdet.determinant import regdet
from src.regdet.spectrum import SpectrumDescriptor
from src.specfun.qgamma import log_jackson_q_gamma, pochhammer_tail_bound
from src.utils.errors import DimensionError, DomainError, ensure_finite
from src.utils.logger import logger
from src.validation.models import VerificationReport
from src.volumes.gaussian import HermitianForm, TruncationControl, gaussian_integral, gaussian_integral_mc
from src.volumes.grassmann import MAX_BEREZIN_DIM, GrassmannElement

# One (z, eta) pair integrated against dz dzbar deta detabar, in units of dx dy times the
# top Grassmann coefficient.
PAIR_MEASURE = 2j

MODE_CHECK_TOL = 1e-12
LOG_FLOAT_MAX = math.log(sys.float_info.max)
# rounding left in a q-classical ratio whose leading terms vanish (x = 1 or x = 2)
Q_LIMIT_FLOOR = 1e-12


def _positive_list(values: Sequence[float], what: str) -> List[float]:
    items = [float(v) for v in values]
    if not items:
        raise DomainError(f"{what} must be non-empty")
    if any(not math.isfinite(v) or v <= 0 for v in items):
        raise DomainError(f"{what} must be positive reals, got {items}")
    return items


def _positive(value: float, what: str) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0:
        raise DomainError(f"{what} must be a positive real, got {value}")
    return value


def equivariant_volume(lambdas: Sequence[float]) -> float:
    """(2 pi)^N / prod lambda_j for C^N with the standard circle actions."""
    lams = _positive_list(lambdas, "lambdas")
    log_value = len(lams) * math.log(2.0 * math.pi) - sum(math.log(lam) for lam in lams)
    return ensure_finite(math.exp(log_value), "equivariant volume")


def equivariant_volume_gaussian(lambdas: Sequence[float]) -> complex:
    """The same volume as the Gaussian integral with A = diag(lambda)."""
    return gaussian_integral(HermitianForm.diagonal(_positive_list(lambdas, "lambdas")))


def equivariant_volume_mc(lambdas: Sequence[float], ctl: TruncationControl) -> Tuple[complex, float]:
    return gaussian_integral_mc(HermitianForm.diagonal(_positive_list(lambdas, "lambdas")), ctl)


def odd_augmented_volume(lambdas: Sequence[float], mu: float) -> complex:
    """Volume with the symplectic form written through odd variables, scaled by mu.

    Bosonic part: Gaussian with A = diag(mu lambda). Odd part: top coefficient of
    exp((i mu / 2) sum_j eta_j etabar_j), which is (-i mu / 2)^N. The product is mu-independent.
    """
    lams = _positive_list(lambdas, "lambdas")
    mu = _positive(mu, "mu")
    n = len(lams)
    if n > MAX_BEREZIN_DIM:
        raise DimensionError(f"odd variables limited to {MAX_BEREZIN_DIM} pairs, got {n}")

    bosonic = gaussian_integral(HermitianForm.diagonal([mu * lam for lam in lams]))
    odd = GrassmannElement.scalar(n, 0)
    for j in range(n):
        odd = odd + GrassmannElement.eta(n, j) * GrassmannElement.etabar(n, j) * (0.5j * mu)
    fermionic = odd.exp().top_coefficient()
    return ensure_finite(PAIR_MEASURE ** n * bosonic * fermionic, "odd-augmented volume")


def character_closed_form(beta: float, lambdas: Sequence[float]) -> float:
    beta = _positive(beta, "beta")
    lams = _positive_list(lambdas, "lambdas")
    value = 1.0
    for lam in lams:
        value /= -math.expm1(-beta * lam)
    return ensure_finite(value, "character closed form")


def character_trace(beta: float, lambdas: Sequence[float], degree_cutoff: int) -> float:
    """Sum of exp(-beta sum_j lambda_j n_j) over monomials with sum_j n_j <= D."""
    beta = _positive(beta, "beta")
    lams = _positive_list(lambdas, "lambdas")
    if int(degree_cutoff) != degree_cutoff or degree_cutoff < 0:
        raise DomainError(f"degree cutoff must be a non-negative integer, got {degree_cutoff}")
    d = int(degree_cutoff)

    # coefficient m of the running polynomial collects monomials of total degree m
    series = np.zeros(d + 1)
    series[0] = 1.0
    degrees = np.arange(d + 1)
    for lam in lams:
        geometric = np.exp(-beta * lam * degrees)
        series = np.convolve(series, geometric)[: d + 1]
    return float(np.sum(series))


def character_tail_bound(beta: float, lambdas: Sequence[float], degree_cutoff: int) -> float:
    """sum_{m > D} C(m + N - 1, N - 1) x^m with x = exp(-beta lambda_min).

    The sum is the negative-binomial survival function at D with N successes and
    success probability p = 1 - x, scaled by p^-N.
    """
    beta = _positive(beta, "beta")
    lams = _positive_list(lambdas, "lambdas")
    if int(degree_cutoff) != degree_cutoff or degree_cutoff < 0:
        raise DomainError(f"degree cutoff must be a non-negative integer, got {degree_cutoff}")
    n = len(lams)
    p = -math.expm1(-beta * min(lams))
    if p <= 0:
        return math.inf
    log_tail = float(nbinom.logsf(int(degree_cutoff), n, p)) - n * math.log(p)
    if log_tail > LOG_FLOAT_MAX:
        return math.inf
    return math.exp(log_tail)


def _decreasing(betas: Sequence[float]) -> List[float]:
    grid = _positive_list(betas, "betas")
    if any(later >= earlier for earlier, later in zip(grid, grid[1:])):
        raise DomainError(f"betas must be strictly decreasing, got {grid}")
    return grid


def classical_limit_check(lambdas: Sequence[float], betas: Sequence[float]) -> List[VerificationReport]:
    """r(beta) = (2 pi beta)^N Z(beta) / volume, required within beta * sum(lambda) of 1."""
    lams = _positive_list(lambdas, "lambdas")
    grid = _decreasing(betas)

    reports: List[VerificationReport] = []
    total = sum(lams)
    for beta in grid:
        ratio = 1.0
        for lam in lams:
            ratio *= beta * lam / -math.expm1(-beta * lam)
        reports.append(
            VerificationReport.compare(
                "volumes.classical_limit",
                ratio,
                1.0,
                beta * total,
                metric="absolute",
                params={"beta": beta, "lambdas": lams},
            )
        )
    return reports


def q_classical_limit_check(hbar: float, lambdas: Sequence[float], betas: Sequence[float]) -> List[VerificationReport]:
    """(1-q)^(1-x) (q;q)_inf Gamma_q(q^x) -> Gamma(x) with x = lambda/hbar, q = exp(-beta hbar).

    Each report compares the product of these ratios over the lambdas with 1. To second
    order in eps = beta hbar the log of one ratio is
    -eps (x-1)(x-2)/4 + eps^2 (x-1)(x-2)(2x+3)/144, and the next term is of order eps^4.
    """
    hbar = _positive(hbar, "hbar")
    lams = _positive_list(lambdas, "lambdas")
    grid = _decreasing(betas)
    xs = [lam / hbar for lam in lams]

    reports: List[VerificationReport] = []
    for beta in grid:
        eps = beta * hbar
        log_ratio = sum(log_jackson_q_gamma(x, eps) - math.lgamma(x) for x in xs)
        leading = eps * sum(abs((x - 1.0) * (x - 2.0)) / 4.0 * (1.0 + eps * (2.0 * x + 3.0) / 36.0) for x in xs)
        reports.append(
            VerificationReport.compare(
                "volumes.q_classical_limit",
                math.exp(log_ratio),
                1.0,
                2.0 * math.expm1(leading) + Q_LIMIT_FLOOR,
                metric="absolute",
                params={"beta": beta, "hbar": hbar, "lambdas": lams},
            )
        )
    return reports


def mode_cutoff_for_tol(q: float, t: float, tol: float) -> int:
    """Largest mode index N such that modes 0..N leave a q-Pochhammer tail below tol."""
    if not (0 <= q < 1):
        raise DomainError(f"q must lie in [0, 1), got {q}")
    factors = 0
    while pochhammer_tail_bound(t, q, factors) > tol:
        factors += 1
    return factors - 1


def mode_partition_3d(
    beta: float,
    hbar: float,
    lam: float,
    mode_cutoff: Optional[int] = None,
    tol: float = 1e-12,
) -> complex:
    """prod_{n=0..N} 1 / (1 - exp(-beta (hbar n + lambda)))."""
    beta = _positive(beta, "beta")
    hbar = _positive(hbar, "hbar")
    lam = _positive(lam, "lambda")
    if mode_cutoff is None:
        mode_cutoff = mode_cutoff_for_tol(math.exp(-beta * hbar), math.exp(-beta * lam), tol)
        logger.debug(f"mode_partition_3d: cutoff N={mode_cutoff} for tol={tol:g}")
    elif int(mode_cutoff) != mode_cutoff or mode_cutoff < 0:
        raise DomainError(f"mode cutoff must be a non-negative integer, got {mode_cutoff}")
    value = 1.0
    for n in range(int(mode_cutoff) + 1):
        value /= -math.expm1(-beta * (hbar * n + lam))
    return complex(ensure_finite(value, "3d mode partition function"))


def mode_partition_3d_product(beta: float, hbar: float, lambdas: Sequence[float], tol: float = 1e-12) -> complex:
    lams = _positive_list(lambdas, "lambdas")
    value = 1.0 + 0j
    for lam in lams:
        value *= mode_partition_3d(beta, hbar, lam, tol=tol / len(lams))
    return value


def loop_mode_spectrum(beta: float, energy: float) -> SpectrumDescriptor:
    """d/dtau - beta E / 2 pi on periodic loops: spectrum i n - beta E / 2 pi, n in Z."""
    return SpectrumDescriptor.full_line(1j, -beta * energy / (2.0 * math.pi))


def mode_check(beta: float, hbar: float, lam: float, n: int, tol: float = MODE_CHECK_TOL) -> VerificationReport:
    """Z_n = 1 / (1 - exp(-beta (hbar n + lambda))) against 1 / det of the loop operator."""
    beta = _positive(beta, "beta")
    energy = _positive(hbar, "hbar") * n + _positive(lam, "lambda")
    direct = 1.0 / -math.expm1(-beta * energy)
    via_regdet = 1.0 / regdet(loop_mode_spectrum(beta, energy)).det
    return VerificationReport.compare(
        "volumes.mode_factor.regdet",
        direct,
        via_regdet,
        tol,
        params={"beta": beta, "hbar": hbar, "lambda": lam, "n": n},
    )


def loop_partition(beta: float, lambdas: Sequence[float]) -> complex:
    """prod_j 1 / det(d/dtau - beta lambda_j / 2 pi), the loop-space oscillator partition function."""
    beta = _positive(beta, "beta")
    value = 1.0 + 0j
    for lam in _positive_list(lambdas, "lambdas"):
        value /= regdet(loop_mode_spectrum(beta, lam)).det
    return ensure_finite(value, "loop partition function")
