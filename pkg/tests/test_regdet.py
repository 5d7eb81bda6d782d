import cmath
import math

import pytest

from src.regdet import (
    RegDetResult,
    SpectrumDescriptor,
    SpectrumKind,
    disk_algebra_report,
    disk_det_ratio,
    disk_ratio_closed_form,
    disk_ratio_normalized,
    halfline_hurwitz_report,
    halfline_log_det_hurwitz,
    halfline_scaling_report,
    regdet,
    regdet_consistency_report,
    regdet_fullline_numeric,
)
from src.utils.errors import DomainError, PoleError, SpectrumError

ONE_MINUS_E_PI = 1.0 - math.exp(math.pi)


def test_halfline_reference_value():
    result = regdet(SpectrumDescriptor.half_line(1, 1))
    assert result.det == pytest.approx(math.sqrt(2 * math.pi), rel=1e-13)
    assert "principal" in result.branch_note


def test_constant_reference_value():
    assert regdet(SpectrumDescriptor.constant(1)).det == pytest.approx(1.0)
    assert regdet(SpectrumDescriptor.constant(4)).det == pytest.approx(2.0)


def test_fullline_reference_values():
    assert regdet(SpectrumDescriptor.full_line(1j, 0.5)).det == pytest.approx(ONE_MINUS_E_PI, rel=1e-13)
    assert regdet(SpectrumDescriptor.full_line(2j, 1)).det == pytest.approx(ONE_MINUS_E_PI, rel=1e-13)
    assert regdet(SpectrumDescriptor.full_line(1j, 0.5j)).det == pytest.approx(2.0, rel=1e-13)


@pytest.mark.parametrize("rho, lam", [(1j, 0.5), (2j, 1), (1j, 0.5j), (1 + 1j, 0.3 - 2j), (-0.5 + 2j, 3 + 1j)])
def test_fullline_numeric_matches_closed_form(rho, lam):
    closed = regdet(SpectrumDescriptor.full_line(rho, lam)).det
    assert abs(regdet_fullline_numeric(rho, lam) - closed) <= 1e-8 * abs(closed)


def test_fullline_spot_value_to_acceptance_precision():
    assert abs(regdet_fullline_numeric(1j, 0.5) - (-22.1406926328)) < 1e-7


def test_principal_reflection_gives_the_other_exponential():
    rho, lam = 1j, 0.5j
    z = lam / rho
    value = regdet_fullline_numeric(rho, lam, principal_reflection=True)
    assert value == pytest.approx(1 - cmath.exp(-2j * math.pi * z), abs=1e-9)
    rho, lam = 1 + 2j, 0.4 + 0.1j
    z = lam / rho
    ratio = regdet_fullline_numeric(rho, lam, principal_reflection=True) / regdet_fullline_numeric(rho, lam)
    assert ratio == pytest.approx(-cmath.exp(-2j * math.pi * z), rel=1e-8)


def test_fullline_shift_invariance():
    rho = 1.5j
    base = regdet(SpectrumDescriptor.full_line(rho, 0.3 + 0.2j)).det
    shifted = regdet(SpectrumDescriptor.full_line(rho, 0.3 + 0.2j + 2 * rho)).det
    assert shifted == pytest.approx(base, rel=1e-12)
    assert regdet_fullline_numeric(rho, 0.3 + 0.2j + 2 * rho) == pytest.approx(base, rel=1e-8)


def test_inadmissible_spectra():
    with pytest.raises(SpectrumError):
        regdet(SpectrumDescriptor.half_line(1, 0))
    with pytest.raises(SpectrumError):
        regdet(SpectrumDescriptor.half_line(2, -4))
    with pytest.raises(SpectrumError):
        regdet(SpectrumDescriptor.full_line(1, 0.5))
    with pytest.raises(SpectrumError):
        regdet(SpectrumDescriptor.full_line(1j, 2j))
    with pytest.raises(SpectrumError):
        SpectrumDescriptor.constant(0)
    with pytest.raises(SpectrumError):
        SpectrumDescriptor("ring", 1, 1)


def test_descriptor_helpers():
    spec = SpectrumDescriptor.half_line(2, 1)
    assert spec.kind is SpectrumKind.HALF_LINE
    assert spec.ratio == 0.5
    assert spec.eigenvalue(3) == 7
    with pytest.raises(SpectrumError):
        spec.eigenvalue(-1)
    assert SpectrumDescriptor.constant(3).eigenvalue(10) == 3
    assert SpectrumDescriptor("fullline", 1j, 0.5).kind is SpectrumKind.FULL_LINE
    assert spec.to_dict() == {"kind": "halfline", "rho": 2, "lambda": 1}


def test_result_from_log():
    result = RegDetResult.from_log(math.log(3), "note")
    assert result.det == pytest.approx(3)
    assert result.to_dict()["branch_note"] == "note"


@pytest.mark.parametrize("rho, lam", [(1, 1), (2 - 1j, 0.7 + 0.3j), (0.5j + 0.5, 2 + 1j)])
def test_hurwitz_assembly_matches_closed_form(rho, lam):
    closed = regdet(SpectrumDescriptor.half_line(rho, lam)).det
    assert abs(cmath.exp(halfline_log_det_hurwitz(rho, lam)) - closed) <= 1e-9 * abs(closed)


def test_hurwitz_assembly_needs_positive_ratio():
    with pytest.raises(DomainError):
        halfline_log_det_hurwitz(1, -0.5)


def test_disk_reference_values():
    assert disk_det_ratio(2 / math.pi, 1, 0.5) == pytest.approx(1.0, abs=1e-12)
    assert disk_det_ratio(2, 1, 1) == pytest.approx(1.0, abs=1e-12)
    assert disk_det_ratio(2 / math.pi, 1, 1) == pytest.approx(1 / math.pi, rel=1e-12)


@pytest.mark.parametrize("mu, hbar, lam", [(0.3, 1.7, 2.2), (4.0, 0.5, 0.25), (1.0, 2.0, 7.5)])
def test_disk_ratio_matches_closed_form(mu, hbar, lam):
    assert disk_det_ratio(mu, hbar, lam) == pytest.approx(disk_ratio_closed_form(mu, hbar, lam), rel=1e-12)
    assert disk_ratio_normalized(mu, hbar, lam) == pytest.approx(1.0, abs=1e-12)


def test_disk_domain():
    with pytest.raises(DomainError):
        disk_det_ratio(0, 1, 1)
    with pytest.raises(PoleError):
        disk_ratio_closed_form(1, 1, -2)


def test_consistency_report_shapes():
    assert regdet_consistency_report(0, seed=3) == []
    reports = regdet_consistency_report(1, seed=0)
    assert len(reports) == 2
    assert all(report.passed for report in reports)


def test_consistency_report_acceptance_run():
    reports = regdet_consistency_report(100, seed=7)
    assert len(reports) == 200
    failed = [report.to_dict() for report in reports if not report.passed]
    assert failed == []


def test_halfline_hurwitz_and_disk_algebra_runs():
    assert all(report.passed for report in halfline_hurwitz_report(100, seed=5))
    assert all(report.passed for report in disk_algebra_report(100, seed=5))


def test_consistency_is_deterministic():
    first = [report.to_dict() for report in regdet_consistency_report(5, seed=11)]
    second = [report.to_dict() for report in regdet_consistency_report(5, seed=11)]
    assert first == second


def test_scaling_report():
    report = halfline_scaling_report(1 + 0.5j, 0.8 - 0.2j, 3.0, tol=1e-12)
    assert report.passed, report.to_dict()
