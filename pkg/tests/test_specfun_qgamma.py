import math

import mpmath
import pytest

from src.specfun import (
    QDeformParams,
    log_jackson_q_gamma,
    pochhammer_tail_bound,
    q_gamma,
    q_gamma_value,
    q_pochhammer,
)
from src.utils.errors import DivergenceError, DomainError, PoleError

GAMMA_HALF_HALF = 3.4627466194550636


def test_pochhammer_reference_values():
    assert q_pochhammer(0, 0.5) == 1
    assert q_pochhammer(0.5, 0.5, n=1) == pytest.approx(0.5)
    assert q_pochhammer(0.5, 0.5) == pytest.approx(0.2887880950866024, rel=1e-14)
    assert q_pochhammer(0.3, 0.6, n=0) == 1


def test_finite_pochhammer_is_the_explicit_product():
    t, q = 0.4 + 0.2j, 0.7
    expected = (1 - t) * (1 - t * q) * (1 - t * q * q)
    assert q_pochhammer(t, q, n=3) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("t, q", [(0.5, 0.5), (-0.8, 0.9), (0.3 + 0.4j, 0.6), (0.9j, -0.5)])
def test_infinite_pochhammer_matches_mpmath(t, q):
    expected = complex(mpmath.qp(t, q))
    assert abs(q_pochhammer(t, q) - expected) <= 1e-13 * abs(expected)


def test_q_gamma_reference_values():
    assert q_gamma(QDeformParams(0.5, (0.5,))) == pytest.approx(GAMMA_HALF_HALF, rel=1e-13)
    assert q_gamma(QDeformParams(0.3, (0,))) == 1


@pytest.mark.parametrize("t, q", [(2, 0.5), (1, 0.3), (4, 0.5)])
def test_q_gamma_poles(t, q):
    with pytest.raises(PoleError):
        q_gamma_value(t, q)


def test_q_outside_unit_disk_diverges():
    with pytest.raises(DivergenceError):
        QDeformParams(1.0, (0.5,))
    with pytest.raises(DivergenceError):
        q_pochhammer(0.5, 1.2)


def test_params_validation():
    with pytest.raises(DomainError):
        QDeformParams(0.5, ())
    with pytest.raises(DomainError):
        QDeformParams(0.5, (0.1, 0.2)).single()
    assert QDeformParams(0.5, 0.25).t == (0.25 + 0j,)


def test_from_physical():
    params = QDeformParams.from_physical(math.log(2), 1.0, [1.0, 2.0])
    assert params.q == pytest.approx(0.5)
    assert params.t[0] == pytest.approx(0.5)
    assert params.t[1] == pytest.approx(0.25)
    with pytest.raises(DomainError):
        QDeformParams.from_physical(-1.0, 1.0, [1.0])
    with pytest.raises(DomainError):
        QDeformParams.from_physical(1.0, 1.0, [])


def test_truncation_is_honest_when_tolerance_halves():
    t, q = 0.7, 0.95
    for tol in (1e-6, 1e-9, 1e-12):
        coarse = q_gamma_value(t, q, tol)
        fine = q_gamma_value(t, q, tol / 2)
        assert abs(coarse - fine) <= tol * abs(fine)


def test_tail_bound_shrinks_geometrically():
    bounds = [pochhammer_tail_bound(0.5, 0.5, n) for n in range(1, 6)]
    for earlier, later in zip(bounds, bounds[1:]):
        assert later < earlier
    assert pochhammer_tail_bound(3.0, 0.5, 0) == math.inf


@pytest.mark.parametrize("eps", [0.5, 0.01])
def test_jackson_q_gamma_at_three_is_one_plus_q(eps):
    assert log_jackson_q_gamma(3.0, eps) == pytest.approx(math.log1p(math.exp(-eps)), abs=1e-12)
    assert log_jackson_q_gamma(1.0, eps) == 0.0


@pytest.mark.parametrize("x", [0.5, 2.5, 4.2])
def test_jackson_q_gamma_matches_mpmath(x):
    q = math.exp(-0.2)
    with mpmath.workdps(30):
        expected = float(mpmath.log(mpmath.qgamma(x, q)))
    assert log_jackson_q_gamma(x, 0.2) == pytest.approx(expected, abs=1e-12)


def test_jackson_q_gamma_survives_where_the_products_underflow():
    # (q; q)_inf is about exp(-pi^2 / (6 eps)), far below the smallest double here
    eps = 1e-4
    expected = math.lgamma(0.5) - eps * 0.1875
    assert log_jackson_q_gamma(0.5, eps) == pytest.approx(expected, abs=1e-7)


def test_jackson_q_gamma_rejects_bad_arguments():
    with pytest.raises(DomainError):
        log_jackson_q_gamma(0.0, 0.1)
    with pytest.raises(DomainError):
        log_jackson_q_gamma(1.5, 0.0)
    with pytest.raises(DivergenceError):
        log_jackson_q_gamma(1.5, 1e-9)
