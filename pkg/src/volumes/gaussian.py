"""Finite-dimensional complex Gaussian integrals.

    I(A) = int_{C^N} exp(-1/2 zbar^T A z) prod_j dx_j dy_j = 1 / det(A / 2 pi)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from src.utils.errors import DimensionError, DomainError, SingularMatrixError, ensure_finite
from src.utils.logger import logger
from src.utils.seeding import stream_id

HERMITIAN_ATOL = 1e-12
_SINGULAR_RTOL = 1e-14
_MC_BATCH = 100_000


@dataclass(slots=True)
class HermitianForm:
    """Quadratic form zbar^T A z.

    strict forms are Hermitian with eigenvalues Re > 0. Non-strict forms accept any square
    matrix whose eigenvalues have Re >= 0, evaluated by analytic continuation.
    """

    entries: np.ndarray
    strict: bool = True

    def __post_init__(self) -> None:
        a = np.atleast_2d(np.asarray(self.entries, dtype=complex))
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise DimensionError(f"quadratic form needs a non-empty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise DomainError("quadratic form has non-finite entries")
        if self.strict and not np.allclose(a, a.conj().T, rtol=0.0, atol=HERMITIAN_ATOL):
            raise DomainError("strict quadratic form must be Hermitian (A = A^dagger within 1e-12)")
        self.entries = a

    @classmethod
    def diagonal(cls, values: Sequence[complex], strict: bool = True) -> "HermitianForm":
        return cls(np.diag(np.asarray(values, dtype=complex)), strict=strict)

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvals(self.entries)


@dataclass(slots=True)
class TruncationControl:
    mode_cutoff: int = 64
    degree_cutoff: int = 40
    mc_samples: int = 100_000
    seed: int = 0
    tol: float = 1e-10

    def __post_init__(self) -> None:
        for name in ("mode_cutoff", "degree_cutoff", "mc_samples"):
            value = getattr(self, name)
            if int(value) != value or value <= 0:
                raise DomainError(f"{name} must be a positive integer, got {value}")
            setattr(self, name, int(value))
        if int(self.seed) != self.seed or self.seed < 0:
            raise DomainError(f"seed must be a non-negative integer, got {self.seed}")
        self.seed = int(self.seed)
        if not (self.tol > 0):
            raise DomainError(f"tol must be positive, got {self.tol}")


def _checked_eigenvalues(form: HermitianForm, strict_positive: bool) -> np.ndarray:
    eig = form.eigenvalues()
    scale = max(1.0, float(np.max(np.abs(eig))))
    if np.any(np.abs(eig) <= _SINGULAR_RTOL * scale):
        raise SingularMatrixError(f"quadratic form is singular: eigenvalues {eig}")
    if strict_positive and np.any(eig.real <= 0):
        raise DomainError(f"Gaussian integral needs Re(eigenvalues) > 0, got {eig}")
    if np.any(eig.real < -HERMITIAN_ATOL * scale):
        raise DomainError(f"Gaussian integral needs Re(eigenvalues) >= 0, got {eig}")
    return eig


def gaussian_integral(form: HermitianForm) -> complex:
    eig = _checked_eigenvalues(form, strict_positive=form.strict)
    value = complex(np.prod(2.0 * math.pi / eig))
    return ensure_finite(value, "Gaussian integral")


def gaussian_integral_mc(form: HermitianForm, ctl: TruncationControl) -> Tuple[complex, float]:
    """Importance-sampled Gaussian integral with its standard error.

    Proposal density (pi s2)^-N exp(-|z|^2 / s2) with s2 = 2 / lambda_min of the Hermitian part,
    which keeps every weight bounded by (pi s2)^N.
    """
    _checked_eigenvalues(form, strict_positive=True)
    a = form.entries
    hermitian_part = 0.5 * (a + a.conj().T)
    lam_min = float(np.min(np.linalg.eigvalsh(hermitian_part)))
    if lam_min <= 0:
        raise DomainError("Monte Carlo oracle needs a positive-definite Hermitian part")

    n_dim = form.dim
    s2 = 2.0 / lam_min
    log_norm = n_dim * math.log(math.pi * s2)
    rng = np.random.default_rng([ctl.seed, stream_id("volumes.gaussian_mc")])

    total = 0j
    total_sq = 0.0
    remaining = ctl.mc_samples
    while remaining > 0:
        batch = min(_MC_BATCH, remaining)
        z = rng.normal(scale=math.sqrt(s2 / 2.0), size=(batch, n_dim)) + 1j * rng.normal(
            scale=math.sqrt(s2 / 2.0), size=(batch, n_dim)
        )
        quad = np.einsum("bi,ij,bj->b", z.conj(), a, z)
        norm2 = np.sum(np.abs(z) ** 2, axis=1)
        weights = np.exp(log_norm + norm2 / s2 - 0.5 * quad)
        total += complex(np.sum(weights))
        total_sq += float(np.sum(np.abs(weights) ** 2))
        remaining -= batch

    n = ctl.mc_samples
    mean = total / n
    variance = max(0.0, (total_sq - n * abs(mean) ** 2) / max(1, n - 1))
    stderr = math.sqrt(variance / n)
    logger.debug(f"gaussian_integral_mc: N={n_dim}, samples={n}, estimate={mean}, stderr={stderr:.3e}")
    return mean, stderr


def degenerate_pair_integral(lam: float) -> complex:
    """int exp(-i lam/2 (zbar w + z wbar)) over C^2 = (2 pi / lam)^2 for real lam != 0.

    The form i lam sigma_x has purely imaginary eigenvalues +-i lam; the value is its
    analytic continuation. A linear source term only shifts the integration variables.
    """
    lam = float(lam)
    if lam == 0 or not math.isfinite(lam):
        raise SingularMatrixError(f"paired form needs a non-zero real lambda, got {lam}")
    form = HermitianForm(1j * lam * np.array([[0.0, 1.0], [1.0, 0.0]]), strict=False)
    return gaussian_integral(form)
