from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.specfun.complex_value import ComplexLike, as_complex
from src.utils.errors import DivergenceError, DomainError, PoleError, ensure_finite
from src.utils.logger import logger

# Exact-zero test for a factor 1 - t q^k, relative to the factor's operands.
_POLE_EPS = 1e-14
_MAX_FACTORS = 10_000_000
_JACKSON_CHUNK = 1_000_000


@dataclass(slots=True)
class QDeformParams:
    q: complex
    t: Tuple[complex, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        self.q = as_complex(self.q, "q")
        if isinstance(self.t, (complex, float, int)):
            self.t = (self.t,)
        self.t = tuple(as_complex(value, "t") for value in self.t)
        if abs(self.q) >= 1:
            raise DivergenceError(f"q-deformation needs |q| < 1, got |q| = {abs(self.q):.6g}")
        if not self.t:
            raise DomainError("at least one t value is required")

    @classmethod
    def from_physical(cls, beta: float, hbar: float, lambdas: Sequence[float]) -> "QDeformParams":
        """q = exp(-beta hbar), t_j = exp(-beta lambda_j)."""
        beta = float(beta)
        hbar = float(hbar)
        lams = [float(lam) for lam in lambdas]
        if beta <= 0 or hbar <= 0:
            raise DomainError(f"beta and hbar must be positive, got beta={beta}, hbar={hbar}")
        if not lams or any(lam <= 0 for lam in lams):
            raise DomainError(f"lambdas must be a non-empty list of positive reals, got {lams}")
        return cls(q=math.exp(-beta * hbar), t=tuple(math.exp(-beta * lam) for lam in lams))

    def single(self) -> complex:
        if len(self.t) != 1:
            raise DomainError(f"expected a single t value, got {len(self.t)}")
        return self.t[0]

    def to_dict(self) -> Dict[str, Any]:
        return {"q": self.q, "t": list(self.t)}


def pochhammer_tail_bound(t: complex, q: complex, terms: int) -> float:
    """Bound on |sum_{k >= terms} log(1 - t q^k)| via |log(1-x)| <= |x|/(1-|x|)."""
    x = abs(t) * abs(q) ** terms
    if x >= 1 or abs(q) >= 1:
        return math.inf
    return x / ((1.0 - abs(q)) * (1.0 - x))


def pochhammer_factors(t: complex, q: complex, n: Optional[int], tol: float) -> List[complex]:
    """The factors 1 - t q^k that make up (t; q)_n, truncated for n = None by the tail bound."""
    if n is not None:
        if int(n) != n or n < 0:
            raise DomainError(f"n must be a non-negative integer or infinity, got {n}")
        return [1.0 - t * q ** k for k in range(int(n))]
    if abs(q) >= 1:
        raise DivergenceError(f"infinite q-Pochhammer product needs |q| < 1, got |q| = {abs(q):.6g}")
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")

    factors: List[complex] = []
    power = 1.0 + 0j
    while pochhammer_tail_bound(t, q, len(factors)) > tol:
        if len(factors) >= _MAX_FACTORS:
            raise DivergenceError(f"q-Pochhammer did not reach tol={tol:g} within {_MAX_FACTORS} factors")
        factors.append(1.0 - t * power)
        power *= q
    logger.debug(f"q_pochhammer(t={t}, q={q}): truncated after {len(factors)} factors for tol={tol:g}")
    return factors


def q_pochhammer(t: ComplexLike, q: ComplexLike, n: Optional[int] = None, tol: float = 1e-15) -> complex:
    """(t; q)_n = prod_{k<n} (1 - t q^k); n = None means the infinite product."""
    t = as_complex(t, "t")
    q = as_complex(q, "q")
    product = 1.0 + 0j
    for factor in pochhammer_factors(t, q, n, tol):
        product *= factor
    return ensure_finite(product, f"q_pochhammer({t}, {q})")


def q_gamma_value(t: ComplexLike, q: ComplexLike, tol: float = 1e-15) -> complex:
    """Gamma_q(t) = prod_{k>=0} 1 / (1 - t q^k)."""
    t = as_complex(t, "t")
    q = as_complex(q, "q")
    product = 1.0 + 0j
    power = 1.0 + 0j
    for k, factor in enumerate(pochhammer_factors(t, q, None, tol)):
        if abs(factor) <= _POLE_EPS * max(1.0, abs(t * power)):
            raise PoleError(f"Gamma_q pole: t q^{k} = 1 for t={t}, q={q}")
        product *= factor
        power *= q
    return ensure_finite(1.0 / product, f"q_gamma({t}, {q})")


def q_gamma(params: QDeformParams, tol: float = 1e-15) -> complex:
    return q_gamma_value(params.single(), params.q, tol)


def log_jackson_q_gamma(x: float, eps: float, tol: float = 1e-16) -> float:
    """log of (1-q)^(1-x) (q;q)_inf / (q^x;q)_inf for real x > 0 and q = exp(-eps).

    This is (1-q)^(1-x) (q;q)_inf Gamma_q(q^x) in the convention above, and it tends to
    log Gamma(x) as eps -> 0. The two infinite products underflow long before that limit,
    so the factors are summed in pairs as log(1 - q^(k+1)) - log(1 - q^(k+x)).
    """
    x = float(x)
    eps = float(eps)
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"x must be a positive real, got {x}")
    if not math.isfinite(eps) or eps <= 0:
        raise DomainError(f"eps must be a positive real, got {eps}")

    one_minus_q = -math.expm1(-eps)
    total = (1.0 - x) * math.log(one_minus_q)
    gap = abs(math.expm1(-eps) - math.expm1(-eps * x))  # |q - q^x|
    if gap == 0:
        return total

    # past K pairs with q^K <= 1/2 the remainder is at most 2 q^K |q - q^x| / (1 - q)
    log_ratio = max(math.log(2.0 * gap / (one_minus_q * tol)), math.log(2.0))
    pairs = math.ceil(log_ratio / eps)
    if pairs > _MAX_FACTORS:
        raise DivergenceError(f"Jackson q-Gamma needs {pairs} factor pairs at eps={eps:g}")

    for start in range(0, pairs, _JACKSON_CHUNK):
        k = np.arange(start, min(start + _JACKSON_CHUNK, pairs), dtype=float)
        total += float(np.sum(np.log(-np.expm1(-eps * (k + 1.0))) - np.log(-np.expm1(-eps * (k + x)))))
    logger.debug(f"log_jackson_q_gamma(x={x}, eps={eps:g}): {pairs} factor pairs")
    return total
