from __future__ import annotations

import cmath
import math
from typing import Optional

from src.specfun.complex_value import (
    LOG_TWO_PI,
    ComplexLike,
    as_complex,
    complex_log,
    is_nonpositive_integer,
)
from src.specfun.hurwitz import even_bernoulli
from src.utils.config_loader import ConfigLoader
from src.utils.errors import PoleError, ensure_finite

LOG_PI = math.log(math.pi)
_STIRLING_ORDER = 10


def _stirling(z: complex) -> complex:
    """Asymptotic series for log Gamma, accurate once Re z is large."""
    total = (z - 0.5) * complex_log(z) - z + 0.5 * LOG_TWO_PI
    z_inv2 = 1.0 / (z * z)
    term = 1.0 / z
    for k, b2k in enumerate(even_bernoulli(_STIRLING_ORDER), start=1):
        total += b2k / (2 * k * (2 * k - 1)) * term
        term *= z_inv2
    return total


def log_sin_pi(z: ComplexLike) -> complex:
    """log sin(pi z) modulo 2 pi i, without overflow for large |Im z|."""
    z = complex(z)
    n = round(z.real)
    w = z - n
    if abs(w.imag) < 10.0:
        value = complex_log(cmath.sin(math.pi * w))
    elif w.imag > 0:
        # sin(pi w) = e^{-i pi w} (e^{2 pi i w} - 1) / (2i)
        value = -1j * math.pi * w + complex_log(cmath.exp(2j * math.pi * w) - 1.0) - complex_log(2j)
    else:
        value = 1j * math.pi * w + complex_log(1.0 - cmath.exp(-2j * math.pi * w)) - complex_log(2j)
    # sin(pi (w + n)) = (-1)^n sin(pi w)
    return value + 1j * math.pi * (n % 2)


def log_gamma(z: ComplexLike, *, shift: Optional[float] = None) -> complex:
    """Principal-branch log Gamma.

    On Re z >= 1/2 this is the continuous branch real on the positive axis (shifted Stirling
    series). Left of that the reflection identity is used, so the result is correct modulo 2 pi i.
    """
    z = as_complex(z, "z")
    if is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at z = {z}")
    if shift is None:
        shift = float(ConfigLoader.get_specfun_config().get("stirling_shift", 10))

    if z.real < 0.5:
        value = LOG_PI - log_sin_pi(z) - log_gamma(1.0 - z, shift=shift)
        return ensure_finite(value, f"log_gamma({z})")

    steps = max(0, math.ceil(shift - z.real))
    correction = sum(complex_log(z + k) for k in range(steps))
    value = _stirling(z + steps) - correction
    if z.imag == 0:
        value = complex(value.real, 0.0)
    return ensure_finite(value, f"log_gamma({z})")


def gamma(z: ComplexLike) -> complex:
    return cmath.exp(log_gamma(z))
