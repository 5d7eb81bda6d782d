import cmath
import math

import mpmath
import pytest
from scipy import special

from src.specfun import complex_log, complex_power, distance_mod_2pi_i, gamma, log_gamma, log_sin_pi
from src.utils.errors import DomainError, PoleError


def test_reference_values():
    assert log_gamma(1) == pytest.approx(0, abs=1e-13)
    assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), abs=1e-13)
    assert log_gamma(5) == pytest.approx(math.log(24), abs=1e-13)
    assert gamma(0.5).real == pytest.approx(math.sqrt(math.pi), rel=1e-13)


def test_real_argument_gives_real_log():
    value = log_gamma(3.3)
    assert value.imag == 0.0
    assert value.real == pytest.approx(math.lgamma(3.3), rel=1e-13)


@pytest.mark.parametrize("z", [0.5 + 0.5j, 3 - 7j, 12 + 0.1j, 1.2 + 30j, 0.7 - 0.01j])
def test_matches_scipy_on_right_half_plane(z):
    assert abs(log_gamma(z) - complex(special.loggamma(complex(z)))) < 1e-12 * max(1.0, abs(z))


@pytest.mark.parametrize("z", [-2.5 + 0.3j, -7.3 - 4j, 0.2 + 12j, -0.5, -3.5])
def test_matches_scipy_modulo_two_pi_i_on_left(z):
    assert distance_mod_2pi_i(log_gamma(z), complex(special.loggamma(complex(z)))) < 1e-11


@pytest.mark.parametrize("z", [0, -1, -3, -10.0])
def test_poles(z):
    with pytest.raises(PoleError):
        log_gamma(z)


def test_recursion_and_reflection():
    for z in (0.3 + 0.4j, -1.7 + 2j, 4.2 - 0.5j):
        assert distance_mod_2pi_i(log_gamma(z + 1), log_gamma(z) + complex_log(z)) < 1e-11
        reflected = log_gamma(z) + log_gamma(1 - z)
        assert distance_mod_2pi_i(reflected, complex_log(math.pi / cmath.sin(math.pi * z))) < 1e-11


def test_log_sin_pi_survives_large_imaginary_parts():
    for z in (0.3 + 50j, -2.7 - 80j, 5.1 + 9.99j):
        expected = complex(mpmath.log(mpmath.sin(mpmath.pi * mpmath.mpc(z.real, z.imag))))
        assert distance_mod_2pi_i(log_sin_pi(z), expected) < 1e-10


def test_complex_log_branch():
    assert complex_log(-1) == pytest.approx(complex(0, math.pi))
    # negative zero imaginary part still lands on +pi
    assert complex_log(complex(-2.0, -0.0)).imag == pytest.approx(math.pi)
    with pytest.raises(DomainError):
        complex_log(0)


def test_complex_power():
    assert complex_power(4, 0.5) == pytest.approx(2.0)
    assert complex_power(-1, 0.5) == pytest.approx(1j)
    assert complex_power(0, 2) == 0
    with pytest.raises(DomainError):
        complex_power(0, -1)
