import argparse
import cmath
import logging
import os
import sys
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from src import __version__
from src.lfactor import (
    ComplexPlace,
    EpsilonNormalization,
    LFactorSpec,
    NonArchPlace,
    RealPlace,
    l_factor,
    l_factor_breakdown,
    q_l_factor,
)
from src.regdet import (
    SpectrumDescriptor,
    SpectrumKind,
    disk_det_ratio,
    disk_log_det,
    disk_ratio_closed_form,
    disk_zero_mode_log_det,
    halfline_log_det_hurwitz,
    regdet,
    regdet_fullline_numeric,
)
from src.specfun import QDeformParams, q_gamma_value, q_pochhammer
from src.utils.config_loader import ConfigLoader
from src.utils.errors import ArchLabError, ParseError
from src.utils.logger import attach_file_handler, logger
from src.utils.matrix_file import normal_eigenvalues, parse_complex, parse_complex_list, read_matrix_file
from src.utils.output_writer import emit, render_csv, render_json, render_plain
from src.utils.run_config import RunConfig
from src.validation.convergence import TARGETS, convergence_table
from src.validation.suites import SUITES, cmd_verify
from src.volumes import (
    HermitianForm,
    TruncationControl,
    berezin_det,
    character_closed_form,
    character_tail_bound,
    character_trace,
    classical_limit_check,
    equivariant_volume,
    equivariant_volume_gaussian,
    gaussian_integral,
    gaussian_integral_mc,
    loop_partition,
    mode_partition_3d,
    odd_augmented_volume,
    q_classical_limit_check,
)

EXIT_CODES = """exit codes:
  0    success
  1    verification failure (verify) or unexpected error
  2    usage or parse error (bad flags, malformed numbers or matrix files, non-normal matrix)
  3    domain error (pole, divergence, inadmissible spectrum, singular or oversized matrix)
  130  interrupted

complex values are written re+imi; pass values starting with '-' as --flag=-1+2i."""

VOLUME_KINDS = ("equivariant", "gaussian", "gaussian-mc", "berezin", "character", "classical", "q-classical", "mode3d", "loop")


@dataclass
class CommandOutput:
    params: Dict[str, Any]
    results: List[Dict[str, Any]]
    # flat rows for csv/plain when results are nested
    rows: Optional[List[Dict[str, Any]]] = None
    summary: Optional[str] = None
    exit_code: int = 0


def _require(args: argparse.Namespace, *names: str) -> None:
    flags = {"lam": "--lambda"}
    missing = [flags.get(name, f"--{name.replace('_', '-')}") for name in names if getattr(args, name, None) is None]
    if missing:
        raise ParseError(f"{args.command} needs {', '.join(missing)}")


# ------------------------------------------------------------------ lfactor


def _place(args: argparse.Namespace):
    if args.place == "real":
        return RealPlace(args.frob)
    if args.place == "complex":
        return ComplexPlace()
    _require(args, "p")
    return NonArchPlace(args.p)


def cmd_lfactor(args: argparse.Namespace, run: RunConfig) -> CommandOutput:
    place = _place(args)
    s = parse_complex(args.s)
    if args.matrix:
        eigenvalues = normal_eigenvalues(read_matrix_file(args.matrix))
        logger.info(f"Read {len(eigenvalues)} eigenvalues from {args.matrix}")
    elif args.alphas:
        eigenvalues = parse_complex_list(args.alphas)
    else:
        raise ParseError("lfactor needs --alphas or --matrix")
    norm = EpsilonNormalization(A=parse_complex(args.A), B=float(args.B))
    spec = LFactorSpec(place, s, eigenvalues)

    result: Dict[str, Any] = {**spec.to_dict(), "value": l_factor(spec, norm)}
    if args.breakdown:
        result["breakdown"] = l_factor_breakdown(spec)
    if not norm.is_identity:
        result.update(norm.to_dict())
    params = {"place": args.place, "s": s, "frob": args.frob, "p": args.p, "matrix": args.matrix, "A": norm.A, "B": norm.B}
    return CommandOutput(params=params, results=[result])


# ------------------------------------------------------------------ regdet


def cmd_regdet(args: argparse.Namespace, run: RunConfig) -> CommandOutput:
    if args.disk:
        _require(args, "mu", "hbar", "lam")
        mu, hbar, lam = float(args.mu), float(args.hbar), float(args.lam)
        result = {
            "mu": mu,
            "hbar": hbar,
            "lambda": lam,
            "log_det_D": disk_log_det(mu, hbar, lam),
            "log_det_D0": disk_zero_mode_log_det(mu),
            "ratio": disk_det_ratio(mu, hbar, lam),
            "closed_form": disk_ratio_closed_form(mu, hbar, lam),
        }
        return CommandOutput(params={"disk": True, "mu": mu, "hbar": hbar, "lambda": lam}, results=[result])

    _require(args, "kind", "rho")
    kind = SpectrumKind(args.kind)
    rho = parse_complex(args.rho)
    if kind is SpectrumKind.CONSTANT:
        spec = SpectrumDescriptor.constant(rho)
    else:
        _require(args, "lam")
        spec = SpectrumDescriptor(kind, rho, parse_complex(args.lam))

    det = regdet(spec)
    result = {**spec.to_dict(), **det.to_dict()}
    if args.numeric:
        if kind is SpectrumKind.FULL_LINE:
            numeric = regdet_fullline_numeric(spec.rho, spec.lam, principal_reflection=args.principal_reflection)
        elif kind is SpectrumKind.HALF_LINE:
            numeric = cmath.exp(halfline_log_det_hurwitz(spec.rho, spec.lam))
        else:
            raise ParseError("--numeric applies to halfline and fullline spectra")
        result["numeric"] = complex(numeric)
        result["numeric_abs_diff"] = abs(complex(numeric) - det.det)
    params = {"kind": kind.value, "rho": spec.rho, "lambda": spec.lam, "numeric": args.numeric}
    return CommandOutput(params=params, results=[result])


# ------------------------------------------------------------------ qgamma


def cmd_qgamma(args: argparse.Namespace, run: RunConfig) -> CommandOutput:
    if args.beta is not None:
        _require(args, "hbar", "lambdas")
        qparams = QDeformParams.from_physical(args.beta, args.hbar, args.lambdas)
    else:
        _require(args, "q", "t")
        qparams = QDeformParams(parse_complex(args.q), tuple(parse_complex_list(args.t)))

    results: List[Dict[str, Any]] = []
    for t in qparams.t:
        row: Dict[str, Any] = {"q": qparams.q, "t": t, "q_gamma": q_gamma_value(t, qparams.q, run.tol)}
        if args.n is not None:
            row["n"] = args.n
            row["q_pochhammer"] = q_pochhammer(t, qparams.q, args.n)
        results.append(row)
    summary = None
    if len(qparams.t) > 1:
        product = q_l_factor(qparams, run.tol)
        results.append({"q": qparams.q, "q_l_factor": product})
        summary = f"q_l_factor over {len(qparams.t)} values"
    params = {**qparams.to_dict(), "beta": args.beta, "hbar": args.hbar, "lambdas": args.lambdas, "n": args.n}
    return CommandOutput(params=params, results=results, summary=summary)


# ------------------------------------------------------------------ volume


def _form(args: argparse.Namespace) -> HermitianForm:
    if args.matrix:
        return HermitianForm(read_matrix_file(args.matrix))
    _require(args, "lambdas")
    return HermitianForm.diagonal(args.lambdas)


def cmd_volume(args: argparse.Namespace, run: RunConfig) -> CommandOutput:
    kind = args.kind
    results: List[Dict[str, Any]] = []

    if kind == "equivariant":
        _require(args, "lambdas")
        row: Dict[str, Any] = {
            "lambdas": args.lambdas,
            "volume": equivariant_volume(args.lambdas),
            "gaussian": equivariant_volume_gaussian(args.lambdas),
        }
        if args.mu is not None:
            row["mu"] = args.mu
            row["odd_augmented"] = odd_augmented_volume(args.lambdas, args.mu)
        results.append(row)
    elif kind == "gaussian":
        form = _form(args)
        results.append({"dim": form.dim, "value": gaussian_integral(form)})
    elif kind == "gaussian-mc":
        form = _form(args)
        ctl = TruncationControl(mc_samples=args.mc_samples, seed=run.seed, tol=run.tol)
        estimate, stderr = gaussian_integral_mc(form, ctl)
        exact = gaussian_integral(form)
        results.append(
            {"dim": form.dim, "samples": ctl.mc_samples, "estimate": estimate, "stderr": stderr, "exact": exact, "abs_diff": abs(estimate - exact)}
        )
    elif kind == "berezin":
        _require(args, "matrix")
        matrix = read_matrix_file(args.matrix)
        value = berezin_det(matrix)
        lu = complex(np.linalg.det(matrix))
        results.append({"dim": int(matrix.shape[0]), "berezin": value, "lu": lu, "abs_diff": abs(value - lu)})
    elif kind == "character":
        _require(args, "beta", "lambdas", "degree")
        truncated = character_trace(args.beta, args.lambdas, args.degree)
        closed = character_closed_form(args.beta, args.lambdas)
        results.append(
            {
                "beta": args.beta,
                "lambdas": args.lambdas,
                "degree": args.degree,
                "truncated": truncated,
                "closed_form": closed,
                "error": closed - truncated,
                "tail_bound": character_tail_bound(args.beta, args.lambdas, args.degree),
            }
        )
    elif kind == "classical":
        _require(args, "lambdas", "betas")
        for report in classical_limit_check(args.lambdas, args.betas):
            results.append({"beta": report.params["beta"], "ratio": report.lhs, "error": report.abs_error, "bound": report.tol, "passed": report.passed})
    elif kind == "q-classical":
        _require(args, "hbar", "lambdas", "betas")
        for report in q_classical_limit_check(args.hbar, args.lambdas, args.betas):
            results.append({"beta": report.params["beta"], "ratio": report.lhs, "error": report.abs_error, "bound": report.tol, "passed": report.passed})
    elif kind == "mode3d":
        _require(args, "beta", "hbar", "lambdas")
        product = 1.0 + 0j
        for lam in args.lambdas:
            value = mode_partition_3d(args.beta, args.hbar, lam, mode_cutoff=args.mode_cutoff, tol=run.tol)
            product *= value
            results.append({"lambda": lam, "mode_cutoff": args.mode_cutoff, "value": value})
        reference = q_l_factor(QDeformParams.from_physical(args.beta, args.hbar, args.lambdas), min(run.tol, 1e-15))
        results.append({"product": product, "q_l_factor": reference, "rel_diff": abs(product - reference) / abs(reference)})
    elif kind == "loop":
        _require(args, "beta", "lambdas")
        value = loop_partition(args.beta, args.lambdas)
        closed = character_closed_form(args.beta, args.lambdas)
        results.append({"beta": args.beta, "lambdas": args.lambdas, "loop_partition": value, "character": closed, "abs_diff": abs(value - closed)})

    params = {
        "kind": kind,
        "lambdas": args.lambdas,
        "matrix": args.matrix,
        "beta": args.beta,
        "betas": args.betas,
        "hbar": args.hbar,
        "degree": args.degree,
        "mode_cutoff": args.mode_cutoff,
        "mu": args.mu,
    }
    return CommandOutput(params=params, results=results)


# ------------------------------------------------------------------ verify


def cmd_verify_command(args: argparse.Namespace, run: RunConfig) -> CommandOutput:
    suites = cmd_verify(
        args.suite,
        args.samples,
        run.seed,
        run.tol,
        workers=args.workers,
        mc_cases=args.mc_cases,
        mc_samples=args.mc_samples,
    )
    rows: List[Dict[str, Any]] = []
    for suite in suites:
        for report in suite.reports:
            rows.append({"suite": suite.suite, **report.to_dict()})
    failed = sum(suite.fail_count for suite in suites)
    summary = "\n".join(suite.summary_text() for suite in suites)
    for suite in suites:
        logger.info(f"verify {suite.suite}: wall time {suite.wall_time:.3f}s")
    params = {"suite": args.suite, "samples": args.samples}
    return CommandOutput(
        params=params,
        results=[suite.to_dict() for suite in suites],
        rows=rows,
        summary=summary,
        exit_code=1 if failed else 0,
    )


# ------------------------------------------------------------------ convergence


def cmd_convergence(args: argparse.Namespace, run: RunConfig) -> CommandOutput:
    params: Dict[str, Any] = {}
    if args.q is not None:
        params["q"] = parse_complex(args.q)
    if args.t is not None:
        params["t"] = parse_complex(args.t)
    for name in ("beta", "hbar", "lambdas"):
        if getattr(args, name) is not None:
            params[name] = getattr(args, name)
    if args.lam is not None:
        params["lambda"] = args.lam
    table = convergence_table(args.target, params, args.grid or [])
    results = table.to_dicts()
    summary = f"target={table.target} rows={len(results)} monotone={str(table.monotone).lower()}"
    return CommandOutput(params={"target": args.target, **params, "grid": args.grid}, results=results, summary=summary)


HANDLERS: Dict[str, Callable[[argparse.Namespace, RunConfig], CommandOutput]] = {
    "lfactor": cmd_lfactor,
    "regdet": cmd_regdet,
    "qgamma": cmd_qgamma,
    "volume": cmd_volume,
    "verify": cmd_verify_command,
    "convergence": cmd_convergence,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=None, help='Base seed for every random stream (config defaults.seed)')
    common.add_argument('--tol', type=float, default=None, help='Tolerance (config defaults.tol)')
    common.add_argument('--format', dest='output_format', default=None, choices=['json', 'csv', 'plain'], help='Output format')
    common.add_argument('--out', type=str, default=None, help='Write output to PATH instead of stdout')

    parser = argparse.ArgumentParser(
        prog="archlab",
        description="ArchLab: regularized determinants, local L-factors and equivariant volumes",
        epilog=EXIT_CODES,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('lfactor', parents=[common], help='Local L-factor at a real, complex or finite place', epilog=EXIT_CODES, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument('--place', required=True, choices=['real', 'complex', 'nonarch'])
    p.add_argument('--frob', type=int, default=1, choices=[1, -1], help='Frobenius sign at the real place')
    p.add_argument('--p', type=int, default=None, help='Prime for --place nonarch')
    p.add_argument('--s', required=True, help='Complex argument s')
    p.add_argument('--alphas', nargs='+', default=None, help='Eigenvalues alpha_j')
    p.add_argument('--matrix', default=None, help='Normal matrix file whose eigenvalues are used')
    p.add_argument('--A', default='1', help='Normalization constant A')
    p.add_argument('--B', type=float, default=1.0, help='Normalization base B > 0')
    p.add_argument('--breakdown', action='store_true', help='Also print per-eigenvalue factors')

    p = sub.add_parser('regdet', parents=[common], help='Zeta-regularized determinant of a spectrum', epilog=EXIT_CODES, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument('--kind', choices=[k.value for k in SpectrumKind], default=None)
    p.add_argument('--rho', default=None)
    p.add_argument('--lambda', dest='lam', default=None)
    p.add_argument('--numeric', action='store_true', help='Cross-check against the Hurwitz assembly')
    p.add_argument('--principal-reflection', action='store_true', help='Full-line numeric check with the principal log of -rho')
    p.add_argument('--disk', action='store_true', help='Disk determinant ratio for (mu, hbar, lambda)')
    p.add_argument('--mu', type=float, default=None)
    p.add_argument('--hbar', type=float, default=None)

    p = sub.add_parser('qgamma', parents=[common], help='q-Gamma values and the q-deformed L-factor', epilog=EXIT_CODES, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument('--q', default=None)
    p.add_argument('--t', nargs='+', default=None)
    p.add_argument('--beta', type=float, default=None)
    p.add_argument('--hbar', type=float, default=None)
    p.add_argument('--lambdas', type=float, nargs='+', default=None)
    p.add_argument('--n', type=int, default=None, help='Also print the finite product (t; q)_n')

    p = sub.add_parser('volume', parents=[common], help='Gaussian, Berezin and equivariant volume computations', epilog=EXIT_CODES, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument('--kind', required=True, choices=VOLUME_KINDS)
    p.add_argument('--lambdas', type=float, nargs='+', default=None)
    p.add_argument('--matrix', default=None)
    p.add_argument('--beta', type=float, default=None)
    p.add_argument('--betas', type=float, nargs='+', default=None)
    p.add_argument('--hbar', type=float, default=None)
    p.add_argument('--degree', type=int, default=None)
    p.add_argument('--mode-cutoff', type=int, default=None)
    p.add_argument('--mu', type=float, default=None, help='Scale of the odd-variable symplectic form')
    p.add_argument('--mc-samples', type=int, default=100_000)

    p = sub.add_parser('verify', parents=[common], help='Run seeded identity suites', epilog=EXIT_CODES, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument('--suite', default='all', choices=list(SUITES) + ['all'])
    p.add_argument('--samples', type=int, default=100)
    p.add_argument('--workers', type=int, default=None)
    p.add_argument('--mc-samples', type=int, default=None)
    p.add_argument('--mc-cases', type=int, default=None)

    p = sub.add_parser('convergence', parents=[common], help='Truncation convergence tables', epilog=EXIT_CODES, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument('--target', required=True, choices=list(TARGETS))
    p.add_argument('--grid', type=float, nargs='+', default=None, help='Cutoffs, or betas for classical_limit and q_classical_limit')
    p.add_argument('--q', default=None)
    p.add_argument('--t', default=None)
    p.add_argument('--beta', type=float, default=None)
    p.add_argument('--hbar', type=float, default=None)
    p.add_argument('--lambda', dest='lam', type=float, default=None)
    p.add_argument('--lambdas', type=float, nargs='+', default=None)
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    defaults = ConfigLoader.get_defaults()
    return RunConfig.build(
        {
            "command": args.command,
            "seed": args.seed if args.seed is not None else defaults.get("seed", 0),
            "tol": args.tol if args.tol is not None else defaults.get("tol", 1e-10),
            "output_format": args.output_format or defaults.get("output_format", "json"),
            "out": args.out,
        }
    )


def _apply_system_config() -> None:
    system_config = ConfigLoader.get_system_config()
    if not os.getenv("ARCHLAB_LOG_LEVEL") and system_config.get("log_level"):
        level = getattr(logging, str(system_config["log_level"]).upper(), logging.INFO)
        logger.setLevel(level)
        for handler in logger.handlers:
            if not isinstance(handler, logging.FileHandler):
                handler.setLevel(level)
    if system_config.get("log_file"):
        attach_file_handler(logger, system_config["log_file"])


def render(command: str, run: RunConfig, output: CommandOutput) -> str:
    if run.output_format == "json":
        return render_json(command, output.params, output.results, run.meta(__version__))
    rows = output.rows if output.rows is not None else output.results
    if run.output_format == "csv":
        return render_csv(rows)
    return render_plain(rows, output.summary)


def entry_point(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    _apply_system_config()
    run = _run_config(args)

    started = time.perf_counter()
    output = HANDLERS[args.command](args, run)
    logger.debug(f"{args.command} finished in {time.perf_counter() - started:.3f}s")

    emit(render(args.command, run, output), run.out)
    return output.exit_code


def _force_process_exit(exit_code: int = 0):
    """Flush stdout, stderr and the logging handlers, then end the process with os._exit(exit_code)."""
    try:
        sys.stdout.flush()
        sys.stderr.flush()
    finally:
        logging.shutdown()
        os._exit(int(exit_code))

if __name__ == "__main__":
    code = 0
    try:
        maybe_code = entry_point()
        if isinstance(maybe_code, int):
            code = maybe_code
    except SystemExit as e:
        # argparse usage errors exit 2, --help and --version exit 0
        code = e.code if isinstance(e.code, int) else 2
    except ArchLabError as e:
        logger.error(f"{type(e).__name__}: {e}")
        code = e.exit_code
    except KeyboardInterrupt:
        code = 130
    except Exception:
        logger.exception("Fatal error while running ArchLab CLI.")
        code = 1
    finally:
        _force_process_exit(code)
