"""Typed failures raised by the numerical kernels and the CLI.

Each class carries the process exit code the CLI reports for it.
"""

from __future__ import annotations

import cmath
import math
from typing import Union


class ArchLabError(ValueError):
    exit_code: int = 3


class PoleError(ArchLabError):
    """Evaluation hit a pole (Gamma at a non-positive integer, q-Gamma at t q^k = 1)."""


class PoleAtOneError(PoleError):
    """Hurwitz zeta at s = 1."""


class DomainError(ArchLabError):
    pass


class DivergenceError(ArchLabError):
    pass


class SpectrumError(ArchLabError):
    """A spectrum descriptor violates its admissibility conditions."""


class ZeroDivisorError(ArchLabError):
    """An Euler factor 1 - alpha p^{-s} vanishes."""


class SingularMatrixError(ArchLabError):
    pass


class DimensionError(ArchLabError):
    pass


class ParseError(ArchLabError):
    exit_code = 2


class NonNormalMatrixError(ArchLabError):
    exit_code = 2


def ensure_finite(value: Union[complex, float], what: str) -> Union[complex, float]:
    if isinstance(value, complex):
        ok = cmath.isfinite(value)
    else:
        ok = math.isfinite(value)
    if not ok:
        raise DomainError(f"{what} is not finite: {value}")
    return value
