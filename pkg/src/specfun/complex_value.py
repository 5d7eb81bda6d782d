"""Principal-branch conventions shared by every kernel.

arg is taken in (-pi, pi]; powers are x**y = exp(y * log x).
"""

from __future__ import annotations

import cmath
import math
from typing import SupportsComplex, Union

from src.utils.errors import DomainError

ComplexLike = Union[complex, float, int, SupportsComplex]

TWO_PI = 2.0 * math.pi
LOG_TWO_PI = math.log(TWO_PI)


def as_complex(value: ComplexLike, what: str = "value") -> complex:
    z = complex(value)
    if not cmath.isfinite(z):
        raise DomainError(f"{what} must be finite, got {z}")
    return z


def complex_log(x: ComplexLike) -> complex:
    z = complex(x)
    if z == 0:
        raise DomainError("logarithm of zero")
    # cmath.phase returns -pi for (-r, -0.0); fold it onto +pi
    if z.imag == 0 and z.real < 0:
        return complex(math.log(-z.real), math.pi)
    return cmath.log(z)


def complex_power(x: ComplexLike, y: ComplexLike) -> complex:
    z = complex(x)
    w = complex(y)
    if z == 0:
        if w.real > 0:
            return 0j
        raise DomainError(f"0 ** {w} is undefined")
    return cmath.exp(w * complex_log(z))


def distance_mod_2pi_i(a: complex, b: complex) -> float:
    """|a - b| after removing the nearest multiple of 2 pi i from the difference."""
    d = complex(a) - complex(b)
    k = round(d.imag / TWO_PI)
    return abs(complex(d.real, d.imag - k * TWO_PI))


def is_nonpositive_integer(z: complex, atol: float = 0.0) -> bool:
    z = complex(z)
    if abs(z.imag) > atol or z.real > atol:
        return False
    return abs(z.real - round(z.real)) <= atol
