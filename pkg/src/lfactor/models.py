from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Union

from src.specfun.complex_value import as_complex
from src.utils.errors import DomainError


def is_prime(p: int) -> bool:
    """Trial division; place parameters are small."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


@dataclass(frozen=True, slots=True)
class RealPlace:
    frobenius: int = 1

    def __post_init__(self) -> None:
        if self.frobenius not in (1, -1):
            raise DomainError(f"Frobenius sign must be +1 or -1, got {self.frobenius}")

    def to_dict(self) -> Dict[str, Any]:
        return {"place": "real", "frobenius": self.frobenius}


@dataclass(frozen=True, slots=True)
class ComplexPlace:
    def to_dict(self) -> Dict[str, Any]:
        return {"place": "complex"}


@dataclass(frozen=True, slots=True)
class NonArchPlace:
    p: int

    def __post_init__(self) -> None:
        if int(self.p) != self.p or not is_prime(int(self.p)):
            raise DomainError(f"non-Archimedean place needs a prime p, got {self.p}")

    def to_dict(self) -> Dict[str, Any]:
        return {"place": "nonarch", "p": int(self.p)}


Place = Union[RealPlace, ComplexPlace, NonArchPlace]


@dataclass(slots=True)
class LFactorSpec:
    place: Place
    s: complex
    eigenvalues: List[complex] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not isinstance(self.place, (RealPlace, ComplexPlace, NonArchPlace)):
            raise DomainError(f"unknown place: {self.place!r}")
        self.s = as_complex(self.s, "s")
        self.eigenvalues = [as_complex(alpha, "eigenvalue") for alpha in self.eigenvalues]
        if not self.eigenvalues:
            raise DomainError("an L-factor needs at least one eigenvalue")

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def with_eigenvalues(self, eigenvalues: List[complex]) -> "LFactorSpec":
        return LFactorSpec(place=self.place, s=self.s, eigenvalues=list(eigenvalues))

    def to_dict(self) -> Dict[str, Any]:
        payload = self.place.to_dict()
        payload.update({"s": self.s, "eigenvalues": list(self.eigenvalues), "dim": self.dim})
        return payload


@dataclass(frozen=True, slots=True)
class EpsilonNormalization:
    """Multiplies an L-factor by A * B^s."""

    A: complex = 1 + 0j
    B: float = 1.0

    def __post_init__(self) -> None:
        a = as_complex(self.A, "A")
        b = float(self.B)
        if a == 0:
            raise DomainError("normalization constant A must be non-zero")
        if not (math.isfinite(b) and b > 0):
            raise DomainError(f"normalization base B must be a positive real, got {self.B}")
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)

    @property
    def is_identity(self) -> bool:
        return self.A == 1 and self.B == 1

    def factor(self, s: complex) -> complex:
        return self.A * cmath.exp(complex(s) * math.log(self.B))

    def apply(self, value: complex, s: complex) -> complex:
        return complex(value) * self.factor(s)

    def inverse(self) -> "EpsilonNormalization":
        return EpsilonNormalization(A=1.0 / self.A, B=1.0 / self.B)

    def compose(self, other: "EpsilonNormalization") -> "EpsilonNormalization":
        return EpsilonNormalization(A=self.A * other.A, B=self.B * other.B)

    def to_dict(self) -> Dict[str, Any]:
        return {"A": self.A, "B": self.B}
