"""Seeded verification suites.

Every sample draws from its own generator keyed by (seed, suite, index), so a suite's output
does not depend on how samples are scheduled across worker threads.
"""

from __future__ import annotations

import cmath
import math
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional

import numpy as np
from scipy.special import loggamma

from src.lfactor.checks import (
    complex_real_duplication_report,
    multiplicativity_report,
    normalization_roundtrip_report,
    permutation_report,
    q_degeneration_report,
)
from src.lfactor.local_factors import q_l_factor, theorem21_specialization
from src.lfactor.models import ComplexPlace, EpsilonNormalization, LFactorSpec, NonArchPlace, RealPlace
from src.regdet.consistency import (
    disk_algebra_sample,
    halfline_hurwitz_sample,
    halfline_scaling_report,
    regdet_consistency_sample,
    sample_halfline,
)
from src.specfun.complex_value import LOG_TWO_PI, complex_log
from src.specfun.gamma import log_gamma
from src.specfun.hurwitz import hurwitz_zeta, hurwitz_zeta_ds0
from src.specfun.qgamma import QDeformParams, q_gamma, q_gamma_value, q_pochhammer
from src.utils.config_loader import ConfigLoader
from src.utils.errors import ArchLabError
from src.utils.logger import logger
from src.utils.seeding import substream
from src.validation.models import SuiteResult, VerificationReport
from src.volumes.equivariant import (
    character_closed_form,
    character_tail_bound,
    character_trace,
    classical_limit_check,
    equivariant_volume,
    loop_partition,
    mode_check,
    mode_partition_3d,
    mode_partition_3d_product,
    odd_augmented_volume,
)
from src.volumes.gaussian import (
    HermitianForm,
    TruncationControl,
    degenerate_pair_integral,
    gaussian_integral,
    gaussian_integral_mc,
)
from src.volumes.grassmann import berezin_det

SUITES = ("specfun", "regdet", "theorem21", "qgamma", "lfactor", "volumes")
DIRECT_SUM_TERMS = 10**6
MC_SIGMAS = 4.0
SampleFn = Callable[[int, int, float], List[VerificationReport]]


def threshold(tol: float, floor: float = 0.0) -> float:
    """Run tolerance, never tighter than what the identity can deliver in double precision."""
    return max(float(tol), floor)


def _guarded(identity: str, tol: float, build: Callable[[], List[VerificationReport]]) -> List[VerificationReport]:
    try:
        return build()
    except ArchLabError as e:
        return [VerificationReport.from_error(identity, e, tol)]


# ---------------------------------------------------------------- specfun


def _specfun_sample(seed: int, index: int, tol: float) -> List[VerificationReport]:
    rng = substream(seed, "specfun", index)
    reports: List[VerificationReport] = []

    a = float(rng.uniform(0.0, 10.0)) or 0.5
    reports.append(
        VerificationReport.compare("specfun.hurwitz.zeta0", hurwitz_zeta(0, a), 0.5 - a, threshold(tol), metric="absolute", params={"a": a})
    )

    a = float(rng.uniform(0.1, 20.0))
    lhs = cmath.exp(hurwitz_zeta_ds0(a))
    rhs = cmath.exp(log_gamma(a) - 0.5 * LOG_TWO_PI)
    reports.append(VerificationReport.compare("specfun.hurwitz.ds0_vs_gamma", lhs, rhs, threshold(tol, 1e-9), params={"a": a}))

    z = complex(rng.uniform(-5.0, 5.0), rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 5.0))
    reflection = log_gamma(z) + log_gamma(1.0 - z)
    expected = complex_log(math.pi / cmath.sin(math.pi * z))
    reports.append(
        VerificationReport.compare("specfun.gamma.reflection", reflection, expected, threshold(tol, 1e-11), metric="mod_2pi_i", params={"z": z})
    )
    recursion = log_gamma(z + 1.0)
    expected = log_gamma(z) + complex_log(z)
    reports.append(
        VerificationReport.compare("specfun.gamma.recursion", recursion, expected, threshold(tol, 1e-11), metric="mod_2pi_i", params={"z": z})
    )

    reports.append(
        VerificationReport.compare(
            "specfun.gamma.scipy_loggamma",
            log_gamma(z),
            complex(loggamma(z)),
            threshold(tol, 1e-11),
            metric="mod_2pi_i",
            params={"z": z},
        )
    )

    s = complex(rng.uniform(1.5, 4.0), rng.uniform(-5.0, 5.0))
    a = float(rng.uniform(0.1, 5.0))
    log_n = np.log(np.arange(DIRECT_SUM_TERMS, dtype=float) + a)
    partial = complex(np.sum(np.exp(-s * log_n)))
    # rounding in the partial sum scales with sum |terms|
    magnitude = float(np.sum(np.exp(-s.real * log_n)))
    tail_bound = (DIRECT_SUM_TERMS - 1 + a) ** (1.0 - s.real) / (s.real - 1.0)
    reports.append(
        VerificationReport.compare(
            "specfun.hurwitz.direct_sum",
            hurwitz_zeta(s, a),
            partial,
            tail_bound + 1e-12 * magnitude,
            metric="absolute",
            params={"s": s, "a": a, "terms": DIRECT_SUM_TERMS},
        )
    )
    return reports


# ---------------------------------------------------------------- regdet


def _regdet_sample(seed: int, index: int, tol: float) -> List[VerificationReport]:
    reports = regdet_consistency_sample(seed, index, threshold(tol, 1e-8))
    reports.append(halfline_hurwitz_sample(seed, index, threshold(tol, 1e-9)))
    reports.append(disk_algebra_sample(seed, index, threshold(tol, 1e-12)))
    rng = substream(seed, "regdet.scaling", index)
    sample = sample_halfline(rng)
    c = float(rng.uniform(0.2, 5.0))
    reports.append(halfline_scaling_report(sample["rho"], sample["lambda"], c, threshold(tol, 1e-12)))
    return reports


# ---------------------------------------------------------------- theorem21


def _theorem21_sample(seed: int, index: int, tol: float) -> List[VerificationReport]:
    rng = substream(seed, "theorem21", index)
    dim = int(rng.integers(1, 4))
    s = float(rng.uniform(0.0, 10.0))
    halves = rng.uniform(0.1, 5.0, size=dim)
    alphas = [complex(s - 2.0 * w) for w in halves]
    return [theorem21_specialization(s, alphas, threshold(tol, 1e-12))]


# ---------------------------------------------------------------- qgamma


def _qgamma_sample(seed: int, index: int, tol: float) -> List[VerificationReport]:
    rng = substream(seed, "qgamma", index)
    q = float(rng.uniform(0.05, 0.9))
    t = complex(rng.uniform(-0.9, 0.9), rng.uniform(-0.3, 0.3))
    params: Dict[str, object] = {"q": q, "t": t}
    reports: List[VerificationReport] = []

    gamma_q = q_gamma(QDeformParams(q, (t,)), 1e-15)
    product = q_pochhammer(t, q, None, 1e-15) * gamma_q
    reports.append(VerificationReport.compare("qgamma.pochhammer_times_gamma", product, 1.0, threshold(tol, 1e-12), params=params))

    old_tol = threshold(tol, 1e-13)
    coarse = q_gamma_value(t, q, old_tol)
    fine = q_gamma_value(t, q, old_tol / 2.0)
    reports.append(
        VerificationReport.compare("qgamma.truncation_honesty", coarse, fine, old_tol, params={**params, "tol": old_tol})
    )

    beta = float(rng.uniform(0.2, 3.0))
    hbar = float(rng.uniform(0.2, 2.0))
    lams = [float(v) for v in rng.uniform(0.1, 3.0, size=2)]
    physical = QDeformParams.from_physical(beta, hbar, lams)
    reports.append(
        VerificationReport.compare(
            "qgamma.mode_product_vs_q_gamma",
            mode_partition_3d(beta, hbar, lams[0], tol=1e-13),
            q_gamma_value(physical.t[0], physical.q, 1e-15),
            threshold(tol, 1e-12),
            params={"beta": beta, "hbar": hbar, "lambda": lams[0]},
        )
    )
    reports.append(
        VerificationReport.compare(
            "qgamma.q_l_factor_factorization",
            mode_partition_3d_product(beta, hbar, lams, tol=1e-13),
            q_l_factor(physical, 1e-15),
            threshold(tol, 1e-12),
            params={"beta": beta, "hbar": hbar, "lambdas": lams},
        )
    )
    return reports


# ---------------------------------------------------------------- lfactor


def _lfactor_sample(seed: int, index: int, tol: float) -> List[VerificationReport]:
    rng = substream(seed, "lfactor", index)
    dim = int(rng.integers(2, 5))
    s = complex(rng.uniform(2.0, 8.0), rng.uniform(-2.0, 2.0))
    # Re(s - alpha) in [0.5, 4] keeps every Gamma argument off its poles
    alphas = [s - complex(rng.uniform(0.5, 4.0), rng.uniform(-2.0, 2.0)) for _ in range(dim)]
    order = [int(i) for i in rng.permutation(dim)]
    split = int(rng.integers(1, dim))
    exact = threshold(tol, 1e-12)

    reports = [
        permutation_report(RealPlace(1), s, alphas, order, exact),
        permutation_report(ComplexPlace(), s, alphas, order, exact),
        multiplicativity_report(RealPlace(-1), s, alphas[:split], alphas[split:], exact),
        complex_real_duplication_report(s, alphas, exact),
    ]

    euler_alphas = [complex(v) for v in rng.uniform(-0.9, 0.9, size=dim)]
    reports.append(
        multiplicativity_report(NonArchPlace(int(rng.choice([2, 3, 5, 7]))), s, euler_alphas[:split], euler_alphas[split:], exact)
    )
    norm = EpsilonNormalization(A=complex(rng.uniform(0.2, 3.0), rng.uniform(-1.0, 1.0)), B=float(rng.uniform(0.2, 5.0)))
    reports.append(normalization_roundtrip_report(LFactorSpec(RealPlace(1), s, alphas), norm, exact))
    t = complex(rng.uniform(-0.9, 0.9), rng.uniform(-0.3, 0.3))
    reports.append(q_degeneration_report(t, float(rng.uniform(0.05, 0.9)), tol=exact))
    return reports


# ---------------------------------------------------------------- volumes


def _hadamard_bound(matrix: np.ndarray) -> float:
    return float(max(1.0, np.prod(np.linalg.norm(matrix, axis=1))))


def _random_positive_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return raw @ raw.conj().T / dim + 0.5 * np.eye(dim)


def _volumes_sample(seed: int, index: int, tol: float, mc_cases: int, mc_samples: int) -> List[VerificationReport]:
    rng = substream(seed, "volumes", index)
    exact = threshold(tol, 1e-12)
    reports: List[VerificationReport] = []

    dim = int(rng.integers(1, 6))
    matrix = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    bound = _hadamard_bound(matrix)
    reports.append(
        VerificationReport.compare(
            "volumes.berezin_vs_lu",
            berezin_det(matrix) / bound,
            complex(np.linalg.det(matrix)) / bound,
            exact,
            metric="absolute",
            params={"dim": dim},
        )
    )
    left = np.eye(dim)[rng.permutation(dim)]
    right = np.eye(dim)[rng.permutation(dim)]
    signs = float(np.linalg.det(left) * np.linalg.det(right))
    reports.append(
        VerificationReport.compare(
            "volumes.berezin_permutation_signs",
            berezin_det(left @ matrix @ right) / bound,
            signs * berezin_det(matrix) / bound,
            exact,
            metric="absolute",
            params={"dim": dim},
        )
    )

    form_dim = int(rng.integers(1, 5))
    hermitian = _random_positive_hermitian(rng, form_dim)
    form = HermitianForm(hermitian)
    normalized = gaussian_integral(form) * complex(np.linalg.det(hermitian / (2.0 * math.pi)))
    reports.append(VerificationReport.compare("volumes.gaussian_times_det", normalized, 1.0, exact, params={"dim": form_dim}))

    if index < mc_cases:
        exact_value = gaussian_integral(form)
        estimate, stderr = gaussian_integral_mc(form, TruncationControl(mc_samples=mc_samples, seed=seed * 1_000_003 + index))
        reports.append(
            VerificationReport.compare(
                "volumes.gaussian_mc",
                estimate,
                exact_value,
                MC_SIGMAS * stderr + 1e-12 * abs(exact_value),
                metric="absolute",
                params={"dim": form_dim, "samples": mc_samples, "stderr": stderr},
            )
        )

    lam = float(rng.uniform(0.1, 5.0))
    reports.append(
        VerificationReport.compare("volumes.degenerate_pair", degenerate_pair_integral(lam), (2.0 * math.pi / lam) ** 2, exact, params={"lambda": lam})
    )

    lams = [float(v) for v in rng.uniform(0.2, 4.0, size=int(rng.integers(1, 4)))]
    volume = equivariant_volume(lams)
    for mu in (0.5, 1.0, 3.0):
        reports.append(
            VerificationReport.compare(
                "volumes.odd_augmented_mu_independence", odd_augmented_volume(lams, mu), volume, exact, params={"lambdas": lams, "mu": mu}
            )
        )

    beta = float(rng.uniform(0.3, 3.0))
    degree = int(rng.integers(5, 40))
    closed = character_closed_form(beta, lams)
    truncated = character_trace(beta, lams, degree)
    reports.append(
        VerificationReport.compare(
            "volumes.character_tail_bound",
            truncated,
            closed,
            character_tail_bound(beta, lams, degree) + 1e-12 * closed,
            metric="absolute",
            params={"beta": beta, "lambdas": lams, "degree": degree},
        )
    )
    traces = [character_trace(beta, lams, d) for d in range(0, degree + 1, max(1, degree // 8))]
    drops = sum(1 for prev, nxt in zip(traces, traces[1:]) if nxt < prev) + sum(1 for v in traces if v > closed * (1 + 1e-12))
    reports.append(
        VerificationReport.compare("volumes.character_monotone", drops, 0, 0.5, metric="absolute", params={"beta": beta, "lambdas": lams})
    )
    reports.extend(classical_limit_check(lams, [1e-2, 1e-3, 1e-4]))

    hbar = float(rng.uniform(0.2, 2.0))
    mode = int(rng.integers(0, 6))
    reports.append(mode_check(beta, hbar, lams[0], mode, exact))
    reports.append(
        VerificationReport.compare("volumes.loop_partition_vs_character", loop_partition(beta, lams), closed, threshold(tol, 1e-11), params={"beta": beta, "lambdas": lams})
    )
    return reports


def _sample_fn(suite: str, mc_cases: int, mc_samples: int) -> SampleFn:
    if suite == "specfun":
        return _specfun_sample
    if suite == "regdet":
        return _regdet_sample
    if suite == "theorem21":
        return _theorem21_sample
    if suite == "qgamma":
        return _qgamma_sample
    if suite == "lfactor":
        return _lfactor_sample
    if suite == "volumes":
        return lambda seed, index, tol: _volumes_sample(seed, index, tol, mc_cases, mc_samples)
    raise ValueError(f"unknown suite: {suite}")


def run_suite(
    suite: str,
    samples: int,
    seed: int,
    tol: float,
    workers: Optional[int] = None,
    mc_cases: Optional[int] = None,
    mc_samples: Optional[int] = None,
) -> SuiteResult:
    verify_cfg = ConfigLoader.get_verify_config()
    workers = int(workers or verify_cfg.get("workers", 4))
    mc_cases = int(mc_cases if mc_cases is not None else verify_cfg.get("mc_cases", 20))
    mc_samples = int(mc_samples or verify_cfg.get("mc_samples", 1_000_000))
    build = _sample_fn(suite, mc_cases, mc_samples)

    def one(index: int) -> List[VerificationReport]:
        return _guarded(f"{suite}.sample", tol, lambda: build(seed, index, tol))

    started = time.perf_counter()
    logger.info(f"Running suite {suite}: samples={samples}, seed={seed}, tol={tol:g}, workers={workers}")
    reports: List[VerificationReport] = []
    if samples > 0:
        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            for chunk in pool.map(one, range(samples)):
                reports.extend(chunk)
    result = SuiteResult(suite=suite, reports=reports, wall_time=time.perf_counter() - started)

    for report in result.reports:
        if not report.passed:
            logger.warning(f"[{suite}] {report.identity} failed: abs={report.abs_error:.3e} rel={report.rel_error:.3e} tol={report.tol:.1e} {report.note or ''}")
    logger.info(result.summary_text())
    return result


def cmd_verify(
    suite: str,
    samples: int,
    seed: int,
    tol: float,
    workers: Optional[int] = None,
    mc_cases: Optional[int] = None,
    mc_samples: Optional[int] = None,
) -> List[SuiteResult]:
    """Runs one suite, or every suite for 'all', in a fixed order."""
    names = SUITES if suite == "all" else (suite,)
    return [run_suite(name, samples, seed, tol, workers, mc_cases, mc_samples) for name in names]
