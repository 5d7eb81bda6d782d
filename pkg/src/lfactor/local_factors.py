from __future__ import annotations

import cmath
import math
from typing import List, Optional, Sequence

from src.lfactor.models import (
    ComplexPlace,
    EpsilonNormalization,
    LFactorSpec,
    NonArchPlace,
    RealPlace,
)
from src.specfun.complex_value import ComplexLike, as_complex
from src.specfun.gamma import log_gamma
from src.specfun.qgamma import QDeformParams, q_gamma_value
from src.utils.errors import DomainError, ZeroDivisorError, ensure_finite
from src.utils.logger import logger
from src.validation.models import VerificationReport

LOG_PI = math.log(math.pi)
LOG_TWO_PI = math.log(2.0 * math.pi)
THEOREM21_TOL = 1e-12
# |1 - alpha p^{-s}| at or below this counts as a vanishing Euler factor
_EULER_ZERO_EPS = 1e-15


def _log_factor(place, s: complex, alpha: complex) -> complex:
    x = s - alpha
    if isinstance(place, RealPlace):
        shift = 0.0 if place.frobenius == 1 else 1.0
        return -0.5 * x * LOG_PI + log_gamma(0.5 * (x + shift))
    if isinstance(place, ComplexPlace):
        return -x * LOG_TWO_PI + log_gamma(x)
    raise DomainError(f"no Gamma-type factor at place {place!r}")


def _euler_factor(p: int, s: complex, alpha: complex) -> complex:
    denominator = 1.0 - alpha * cmath.exp(-s * math.log(p))
    if abs(denominator) <= _EULER_ZERO_EPS:
        raise ZeroDivisorError(f"Euler factor 1 - {alpha} * {p}^(-{s}) vanishes")
    return 1.0 / denominator


def l_factor_breakdown(spec: LFactorSpec) -> List[complex]:
    """Per-eigenvalue factors; their product is the unnormalized L-factor."""
    if isinstance(spec.place, NonArchPlace):
        return [_euler_factor(spec.place.p, spec.s, alpha) for alpha in spec.eigenvalues]
    return [cmath.exp(_log_factor(spec.place, spec.s, alpha)) for alpha in spec.eigenvalues]


def l_factor(spec: LFactorSpec, norm: Optional[EpsilonNormalization] = None) -> complex:
    norm = norm or EpsilonNormalization()
    if isinstance(spec.place, NonArchPlace):
        value = 1.0 + 0j
        for factor in l_factor_breakdown(spec):
            value *= factor
    else:
        # sum logs first so large dims do not overflow factor by factor
        value = cmath.exp(sum(_log_factor(spec.place, spec.s, alpha) for alpha in spec.eigenvalues))
    return ensure_finite(norm.apply(value, spec.s), f"L-factor at {spec.place!r}")


def _check_disk(mu: float, hbar: float) -> None:
    if not (float(mu) > 0 and float(hbar) > 0):
        raise DomainError(f"mu and hbar must be positive, got mu={mu}, hbar={hbar}")


def disk_correlator(mu: float, hbar: float, lambdas: Sequence[ComplexLike]) -> complex:
    """hbar^{-N/2} prod_j (2/(mu hbar))^{-lambda_j/hbar} Gamma(lambda_j/hbar)."""
    _check_disk(mu, hbar)
    lams = [as_complex(lam, "lambda") for lam in lambdas]
    if not lams:
        raise DomainError("disk correlator needs at least one eigenvalue")
    log_scale = math.log(2.0 / (mu * hbar))
    log_value = -0.5 * len(lams) * math.log(hbar)
    for lam in lams:
        z = lam / hbar
        log_value += -z * log_scale + log_gamma(z)
    return ensure_finite(cmath.exp(log_value), "disk correlator")


def theorem21_specialization(
    s: ComplexLike,
    alphas: Sequence[ComplexLike],
    tol: float = THEOREM21_TOL,
) -> VerificationReport:
    """Disk correlator at mu = 2/pi, hbar = 1 against the real-place L-factor with Fr = +1."""
    s = as_complex(s, "s")
    alphas = [as_complex(alpha, "alpha") for alpha in alphas]
    lhs = disk_correlator(2.0 / math.pi, 1.0, [(s - alpha) / 2.0 for alpha in alphas])
    rhs = l_factor(LFactorSpec(RealPlace(1), s, alphas))
    return VerificationReport.compare(
        "lfactor.theorem21.disk_vs_real_place",
        lhs,
        rhs,
        tol,
        params={"s": s, "alphas": alphas},
    )


def q_l_factor(params: QDeformParams, tol: float = 1e-15) -> complex:
    """prod_j Gamma_q(t_j), each factor truncated at tol / dim."""
    per_factor = tol / len(params.t)
    value = 1.0 + 0j
    for t in params.t:
        value *= q_gamma_value(t, params.q, per_factor)
    logger.debug(f"q_l_factor: {len(params.t)} factors, per-factor tol {per_factor:g}")
    return ensure_finite(value, "q-deformed L-factor")
