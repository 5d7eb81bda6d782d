import math

import pytest

from src.regdet import SpectrumDescriptor, regdet
from src.specfun import q_gamma_value
from src.volumes import (
    TruncationControl,
    character_closed_form,
    character_tail_bound,
    character_trace,
    classical_limit_check,
    equivariant_volume,
    equivariant_volume_gaussian,
    equivariant_volume_mc,
    loop_partition,
    mode_check,
    mode_cutoff_for_tol,
    mode_partition_3d,
    mode_partition_3d_product,
    odd_augmented_volume,
    q_classical_limit_check,
)
from src.volumes.equivariant import loop_mode_spectrum
from src.utils.errors import DimensionError, DomainError


def test_volume_reference_values():
    assert equivariant_volume([2 * math.pi]) == pytest.approx(1.0)
    assert equivariant_volume([1, 1]) == pytest.approx(39.47841760435743, rel=1e-14)
    assert equivariant_volume_gaussian([0.5, 3.0]) == pytest.approx(equivariant_volume([0.5, 3.0]), rel=1e-14)


def test_volume_rejects_bad_weights():
    with pytest.raises(DomainError):
        equivariant_volume([])
    with pytest.raises(DomainError):
        equivariant_volume([1.0, -2.0])


def test_volume_through_monte_carlo():
    estimate, stderr = equivariant_volume_mc([1.0], TruncationControl(mc_samples=20_000, seed=5))
    # A = lambda id puts the proposal on the integrand, so stderr is rounding noise only
    assert abs(estimate - 2 * math.pi) <= 4 * stderr + 1e-12


@pytest.mark.parametrize("mu", [0.5, 1.0, 3.0])
def test_odd_augmented_volume_is_mu_independent(mu):
    lams = [0.7, 1.9, 4.0]
    assert odd_augmented_volume(lams, mu) == pytest.approx(equivariant_volume(lams), rel=1e-12)


def test_odd_augmented_volume_limits():
    with pytest.raises(DomainError):
        odd_augmented_volume([1.0], 0.0)
    with pytest.raises(DimensionError):
        odd_augmented_volume([1.0] * 9, 1.0)


def test_character_reference_values():
    assert character_trace(1.0, [1.0, 2.0], 0) == 1.0
    closed = character_closed_form(1.0, [1.0])
    assert closed == pytest.approx(1.5819767068693265, rel=1e-14)
    assert closed - character_trace(1.0, [1.0], 40) <= character_tail_bound(1.0, [1.0], 40) + 1e-15


def test_character_acceptance_point():
    closed = character_closed_form(1.0, [1.0, 2.0])
    truncated = character_trace(1.0, [1.0, 2.0], 60)
    assert closed - truncated <= character_tail_bound(1.0, [1.0, 2.0], 60) + 1e-14
    assert abs(closed - truncated) < 1e-10


def test_character_trace_is_monotone_and_bounded():
    beta, lams = 0.4, [0.5, 1.5, 2.0]
    closed = character_closed_form(beta, lams)
    values = [character_trace(beta, lams, d) for d in range(0, 30, 3)]
    assert values == sorted(values)
    assert values[-1] <= closed


def test_character_tail_bound_is_a_bound_for_several_variables():
    beta, lams = 0.5, [1.0, 1.5, 2.5]
    closed = character_closed_form(beta, lams)
    for d in (5, 10, 20):
        assert closed - character_trace(beta, lams, d) <= character_tail_bound(beta, lams, d)


def test_character_tail_bound_matches_the_binomial_series():
    beta, lams, d = 0.5, [1.0, 1.5, 2.5], 10
    x = math.exp(-beta * min(lams))
    series = sum(math.comb(m + 2, 2) * x**m for m in range(d + 1, 600))
    assert character_tail_bound(beta, lams, d) == pytest.approx(series, rel=1e-10)


def test_character_tail_bound_is_exact_for_equal_weights_at_small_beta():
    beta, lams, d = 1e-5, [1.0, 1.0, 1.0], 10
    bound = character_tail_bound(beta, lams, d)
    assert math.isfinite(bound)
    closed = character_closed_form(beta, lams)
    assert bound == pytest.approx(closed - character_trace(beta, lams, d), rel=1e-9)


def test_character_tail_bound_returns_promptly_near_beta_zero():
    bound = character_tail_bound(1e-17, [1.0], 5)
    assert bound == pytest.approx(1e17, rel=1e-6)
    # beta * lambda underflows, so exp(-beta lambda) is exactly one
    assert character_tail_bound(1e-320, [1e-10], 5) == math.inf


def test_character_tail_bound_rejects_bad_cutoff():
    with pytest.raises(DomainError):
        character_tail_bound(1.0, [1.0], -1)


def test_character_rejects_bad_cutoff():
    with pytest.raises(DomainError):
        character_trace(1.0, [1.0], -1)
    with pytest.raises(DomainError):
        character_trace(0.0, [1.0], 3)


def test_classical_limit():
    reports = classical_limit_check([1.0], [1e-2, 1e-3, 1e-4])
    assert all(report.passed for report in reports)
    errors = [report.abs_error for report in reports]
    assert errors[0] > errors[1] > errors[2]
    assert reports[1].lhs.real == pytest.approx(1.0005, abs=1e-6)
    (report,) = classical_limit_check([2 * math.pi], [1e-4])
    assert abs(report.lhs - 1) < 1e-3


def test_classical_limit_requires_decreasing_betas():
    with pytest.raises(DomainError):
        classical_limit_check([1.0], [1e-3, 1e-2])


def test_q_classical_limit_errors_shrink_at_the_leading_rate():
    betas = [1e-1, 1e-2, 1e-3]
    reports = q_classical_limit_check(1.0, [0.5, 3.5], betas)
    assert all(report.passed for report in reports)
    errors = [report.abs_error for report in reports]
    assert errors[0] > errors[1] > errors[2]
    # (x-1)(x-2)/4 summed over x = 0.5 and x = 3.5
    assert errors[-1] / betas[-1] == pytest.approx(1.125, rel=1e-2)
    assert reports[-1].lhs.real < 1.0


def test_q_classical_limit_is_exact_at_x_one_and_two():
    reports = q_classical_limit_check(0.5, [0.5, 1.0], [0.2, 0.02])
    assert all(report.passed for report in reports)
    assert all(report.abs_error < 1e-12 for report in reports)


def test_q_classical_limit_requires_decreasing_betas():
    with pytest.raises(DomainError):
        q_classical_limit_check(1.0, [1.0], [1e-3, 1e-2])
    with pytest.raises(DomainError):
        q_classical_limit_check(0.0, [1.0], [1e-2])


def test_mode_partition_matches_q_gamma():
    value = mode_partition_3d(math.log(2), 1.0, 1.0, tol=1e-12)
    assert value == pytest.approx(3.4627466195, abs=1e-9)
    beta, hbar, lam = 0.7, 0.4, 1.3
    expected = q_gamma_value(math.exp(-beta * lam), math.exp(-beta * hbar))
    assert mode_partition_3d(beta, hbar, lam, tol=1e-14) == pytest.approx(expected, rel=1e-12)


def test_mode_partition_product_factorizes():
    beta, hbar, lams = 1.0, 1.0, [1.0, 2.0]
    q = math.exp(-1)
    expected = q_gamma_value(math.exp(-1), q) * q_gamma_value(math.exp(-2), q)
    assert mode_partition_3d_product(beta, hbar, lams, tol=1e-14) == pytest.approx(expected, rel=1e-12)


def test_mode_partition_explicit_cutoff():
    value = mode_partition_3d(1.0, 1.0, 1.0, mode_cutoff=0)
    assert value == pytest.approx(1 / (1 - math.exp(-1)))
    with pytest.raises(DomainError):
        mode_partition_3d(1.0, 1.0, 1.0, mode_cutoff=-1)


def test_mode_cutoff_for_tol():
    n = mode_cutoff_for_tol(0.5, 0.5, 1e-12)
    assert n >= 0
    assert n == mode_cutoff_for_tol(0.5, 0.5, 1e-12)
    assert mode_cutoff_for_tol(0.5, 0.5, 1e-6) <= n


def test_mode_check_against_loop_determinant():
    report = mode_check(1.0, 1.0, 1.0, 0)
    assert report.passed, report.to_dict()
    assert report.lhs == pytest.approx(1 / (1 - math.exp(-1)), rel=1e-13)
    assert all(mode_check(0.8, 0.6, 1.7, n).passed for n in range(6))


def test_loop_spectrum_determinant():
    det = regdet(loop_mode_spectrum(2.0, 1.5)).det
    assert det == pytest.approx(1 - math.exp(-3.0), rel=1e-13)
    assert loop_mode_spectrum(2.0, 1.5) == SpectrumDescriptor.full_line(1j, -3.0 / (2 * math.pi))


def test_loop_partition_equals_character():
    beta, lams = 0.9, [0.4, 1.1, 2.5]
    assert loop_partition(beta, lams) == pytest.approx(character_closed_form(beta, lams), rel=1e-12)
