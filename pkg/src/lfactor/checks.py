from __future__ import annotations

import math
from typing import Any, Dict, Sequence

from src.lfactor.local_factors import l_factor
from src.lfactor.models import (
    ComplexPlace,
    EpsilonNormalization,
    LFactorSpec,
    NonArchPlace,
    Place,
    RealPlace,
)
from src.specfun.complex_value import ComplexLike, as_complex
from src.specfun.qgamma import q_pochhammer
from src.validation.models import VerificationReport

IDENTITY_TOL = 1e-12


def permutation_report(
    place: Place,
    s: ComplexLike,
    alphas: Sequence[ComplexLike],
    order: Sequence[int],
    tol: float = IDENTITY_TOL,
) -> VerificationReport:
    alphas = [as_complex(alpha) for alpha in alphas]
    permuted = [alphas[i] for i in order]
    lhs = l_factor(LFactorSpec(place, s, permuted))
    rhs = l_factor(LFactorSpec(place, s, alphas))
    return VerificationReport.compare(
        "lfactor.permutation_invariance",
        lhs,
        rhs,
        tol,
        params={**place.to_dict(), "s": complex(s), "alphas": alphas, "order": list(order)},
    )


def multiplicativity_report(
    place: Place,
    s: ComplexLike,
    first: Sequence[ComplexLike],
    second: Sequence[ComplexLike],
    tol: float = IDENTITY_TOL,
) -> VerificationReport:
    """L(V + W) = L(V) L(W) for the concatenated eigenvalue list."""
    joined = list(first) + list(second)
    lhs = l_factor(LFactorSpec(place, s, joined))
    rhs = l_factor(LFactorSpec(place, s, list(first))) * l_factor(LFactorSpec(place, s, list(second)))
    return VerificationReport.compare(
        "lfactor.multiplicativity",
        lhs,
        rhs,
        tol,
        params={**place.to_dict(), "s": complex(s), "first": list(first), "second": list(second)},
    )


def duplication_normalization(dim: int) -> EpsilonNormalization:
    return EpsilonNormalization(A=(2.0 * math.sqrt(math.pi)) ** (-dim), B=1.0)


def complex_real_duplication_report(
    s: ComplexLike,
    alphas: Sequence[ComplexLike],
    tol: float = IDENTITY_TOL,
) -> VerificationReport:
    """Complex-place factor = (real Fr=+1) * (real Fr=-1), up to A B^s with A = (2 sqrt(pi))^{-dim}."""
    alphas = [as_complex(alpha) for alpha in alphas]
    even = l_factor(LFactorSpec(RealPlace(1), s, alphas))
    odd = l_factor(LFactorSpec(RealPlace(-1), s, alphas))
    lhs = l_factor(LFactorSpec(ComplexPlace(), s, alphas))
    rhs = duplication_normalization(len(alphas)).apply(even * odd, complex(s))
    return VerificationReport.compare(
        "lfactor.complex_place.duplication",
        lhs,
        rhs,
        tol,
        params={"s": complex(s), "alphas": alphas},
    )


def normalization_roundtrip_report(
    spec: LFactorSpec,
    norm: EpsilonNormalization,
    tol: float = IDENTITY_TOL,
) -> VerificationReport:
    """Applying (A, B) then (1/A, 1/B) leaves the L-factor unchanged."""
    base = l_factor(spec)
    there = norm.apply(base, spec.s)
    back = norm.inverse().apply(there, spec.s)
    composed = norm.compose(norm.inverse())
    params: Dict[str, Any] = {**spec.to_dict(), **norm.to_dict()}
    return VerificationReport.compare(
        "lfactor.normalization.roundtrip",
        back,
        base,
        tol,
        params=params,
        note=None if composed.is_identity else f"composed normalization {composed.to_dict()}",
    )


def q_degeneration_report(t: ComplexLike, q: ComplexLike, p: int = 2, tol: float = IDENTITY_TOL) -> VerificationReport:
    """Gamma_q(t) cut to its k = 0 factor is (1 - t)^{-1}, the Euler factor at alpha = t, p^{-s} = 1."""
    t = as_complex(t, "t")
    truncated = 1.0 / q_pochhammer(t, q, n=1)
    euler = l_factor(LFactorSpec(NonArchPlace(p), 0, [t]))
    return VerificationReport.compare(
        "lfactor.q_gamma.nonarch_degeneration",
        truncated,
        euler,
        tol,
        params={"t": t, "q": complex(q), "p": p},
    )

