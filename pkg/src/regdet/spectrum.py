from __future__ import annotations

import cmath
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict

from src.specfun.complex_value import as_complex, is_nonpositive_integer
from src.utils.errors import SpectrumError

# Closeness to an integer below which lambda/rho counts as hitting a zero mode.
ZERO_MODE_ATOL = 1e-12


class SpectrumKind(str, Enum):
    HALF_LINE = "halfline"  # rho n + lambda, n >= 0
    FULL_LINE = "fullline"  # rho n + lambda, n in Z
    CONSTANT = "constant"  # rho, rho, rho, ...


@dataclass(slots=True)
class SpectrumDescriptor:
    kind: SpectrumKind
    rho: complex
    lam: complex = 0j

    def __post_init__(self) -> None:
        try:
            self.kind = SpectrumKind(self.kind)
        except ValueError as e:
            raise SpectrumError(f"unknown spectrum kind: {self.kind!r}") from e
        try:
            self.rho = as_complex(self.rho, "rho")
            self.lam = as_complex(self.lam, "lambda")
        except ValueError as e:
            raise SpectrumError(str(e)) from e
        if self.rho == 0:
            raise SpectrumError("rho must be non-zero")

    @classmethod
    def half_line(cls, rho: complex, lam: complex) -> "SpectrumDescriptor":
        return cls(SpectrumKind.HALF_LINE, rho, lam)

    @classmethod
    def full_line(cls, rho: complex, lam: complex) -> "SpectrumDescriptor":
        return cls(SpectrumKind.FULL_LINE, rho, lam)

    @classmethod
    def constant(cls, rho: complex) -> "SpectrumDescriptor":
        return cls(SpectrumKind.CONSTANT, rho)

    @property
    def ratio(self) -> complex:
        return self.lam / self.rho

    def validate(self) -> None:
        z = self.ratio
        if self.kind is SpectrumKind.HALF_LINE:
            if is_nonpositive_integer(z, atol=ZERO_MODE_ATOL):
                raise SpectrumError(
                    f"half-line spectrum has a zero mode or Gamma pole: lambda/rho = {z}"
                )
        elif self.kind is SpectrumKind.FULL_LINE:
            if self.rho.imag <= 0:
                raise SpectrumError(f"full-line spectrum needs Im rho > 0, got rho = {self.rho}")
            if abs(z.imag) <= ZERO_MODE_ATOL and abs(z.real - round(z.real)) <= ZERO_MODE_ATOL:
                raise SpectrumError(f"full-line spectrum has a zero mode: lambda/rho = {z}")

    def eigenvalue(self, n: int) -> complex:
        if self.kind is SpectrumKind.CONSTANT:
            return self.rho
        if self.kind is SpectrumKind.HALF_LINE and n < 0:
            raise SpectrumError("half-line spectrum is indexed by n >= 0")
        return self.rho * n + self.lam

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"kind": self.kind.value, "rho": self.rho}
        if self.kind is not SpectrumKind.CONSTANT:
            payload["lambda"] = self.lam
        return payload


@dataclass(slots=True)
class RegDetResult:
    log_det: complex
    det: complex
    branch_note: str = ""

    @classmethod
    def from_log(cls, log_det: complex, branch_note: str = "") -> "RegDetResult":
        return cls(log_det=complex(log_det), det=cmath.exp(log_det), branch_note=branch_note)

    def to_dict(self) -> Dict[str, Any]:
        return {"log_det": self.log_det, "det": self.det, "branch_note": self.branch_note}
