"""Hurwitz zeta by Euler–Maclaurin summation.

    zeta(s, a) = sum_{n<M} (n+a)^-s + x^(1-s)/(s-1) + x^-s/2
                 + sum_{k=1..K} B_2k/(2k)! (s)_{2k-1} x^(-s-2k+1),   x = M + a

with (s)_m the rising factorial. The s-derivative at s = 0 is taken term by term,
which leaves a closed form with no step size to tune.

For Re s < 0 the head sum grows like M^(-Re s) while the value does not, so double
precision cancels. That half-plane is summed by mpmath at a working precision raised
by the number of digits the head sum carries.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Optional, Tuple

import mpmath
from scipy.special import bernoulli

from src.specfun.complex_value import ComplexLike, as_complex, complex_log, complex_power
from src.utils.config_loader import ConfigLoader
from src.utils.errors import DomainError, PoleAtOneError, ensure_finite
from src.utils.logger import logger


@lru_cache(maxsize=8)
def even_bernoulli(order: int) -> Tuple[float, ...]:
    """(B_2, B_4, ..., B_2K) for K = order."""
    numbers = bernoulli(2 * order)
    return tuple(float(numbers[2 * k]) for k in range(1, order + 1))


def _tuning(min_cutoff: Optional[int], order: Optional[int]) -> Tuple[int, int]:
    cfg = ConfigLoader.get_specfun_config()
    cutoff = int(min_cutoff if min_cutoff is not None else cfg.get("hurwitz_min_cutoff", 15))
    k = int(order if order is not None else cfg.get("bernoulli_order", 10))
    if cutoff < 1 or k < 1:
        raise DomainError("Euler-Maclaurin cutoff and Bernoulli order must be positive")
    return cutoff, k


def _check_a(a: complex) -> None:
    if a.real <= 0:
        raise DomainError(f"Hurwitz zeta needs Re a > 0, got a = {a}")


def hurwitz_zeta(
    s: ComplexLike,
    a: ComplexLike,
    *,
    min_cutoff: Optional[int] = None,
    bernoulli_order: Optional[int] = None,
) -> complex:
    s = as_complex(s, "s")
    a = as_complex(a, "a")
    if s == 1:
        raise PoleAtOneError("Hurwitz zeta has a pole at s = 1")
    _check_a(a)
    cutoff, order = _tuning(min_cutoff, bernoulli_order)
    if s.real < 0:
        return _hurwitz_zeta_left(s, a)

    m = max(math.ceil(abs(a)), math.ceil(abs(s)), cutoff)
    head = sum(complex_power(n + a, -s) for n in range(m))

    x = m + a
    x_pow = complex_power(x, -s)
    tail = x * x_pow / (s - 1) + 0.5 * x_pow

    rising = s  # (s)_1
    x_inv2 = 1.0 / (x * x)
    x_term = x_pow / x  # x^(-s-1)
    for k, b2k in enumerate(even_bernoulli(order), start=1):
        tail += b2k / math.factorial(2 * k) * rising * x_term
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        x_term *= x_inv2

    logger.debug(f"hurwitz_zeta(s={s}, a={a}): cutoff M={m}, order K={order}")
    return ensure_finite(head + tail, f"hurwitz_zeta({s}, {a})")


def _mp_number(value: complex):
    return mpmath.mpf(value.real) if value.imag == 0 else mpmath.mpc(value.real, value.imag)


def _hurwitz_zeta_left(s: complex, a: complex) -> complex:
    # the head sum carries about -Re s * log10(M + |a|) digits that cancel
    digits = 20 + math.ceil(-s.real * math.log10(abs(a) + abs(s) + 16.0))
    with mpmath.workdps(digits):
        value = complex(mpmath.zeta(_mp_number(s), _mp_number(a)))
    logger.debug(f"hurwitz_zeta(s={s}, a={a}): left half-plane at {digits} digits")
    return ensure_finite(value, f"hurwitz_zeta({s}, {a})")


def hurwitz_zeta_ds0(
    a: ComplexLike,
    *,
    min_cutoff: Optional[int] = None,
    bernoulli_order: Optional[int] = None,
) -> complex:
    """d/ds zeta(s, a) at s = 0, equal to log Gamma(a) - log(2 pi)/2."""
    a = as_complex(a, "a")
    _check_a(a)
    cutoff, order = _tuning(min_cutoff, bernoulli_order)

    m = max(math.ceil(abs(a)), cutoff)
    head = -sum(complex_log(n + a) for n in range(m))

    x = m + a
    log_x = complex_log(x)
    tail = x * log_x - x - 0.5 * log_x
    x_inv2 = 1.0 / (x * x)
    x_term = 1.0 / x
    for k, b2k in enumerate(even_bernoulli(order), start=1):
        tail += b2k / (2 * k * (2 * k - 1)) * x_term
        x_term *= x_inv2

    return ensure_finite(head + tail, f"hurwitz_zeta_ds0({a})")


def hurwitz_zeta0(a: ComplexLike) -> complex:
    """zeta(0, a) = 1/2 - a, the value the continuation takes at s = 0."""
    return hurwitz_zeta(0, a)
