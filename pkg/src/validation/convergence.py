"""Convergence tables: a truncated quantity against its closed form over a cutoff grid."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

from src.specfun.complex_value import as_complex
from src.specfun.qgamma import pochhammer_tail_bound, q_gamma_value, q_pochhammer
from src.utils.errors import ParseError
from src.utils.logger import logger
from src.volumes.equivariant import (
    character_closed_form,
    character_tail_bound,
    character_trace,
    classical_limit_check,
    mode_partition_3d,
    q_classical_limit_check,
)

TARGETS = ("qgamma", "classical_limit", "q_classical_limit", "character", "mode3d")


@dataclass(slots=True)
class ConvergenceRow:
    target: str
    params: Dict[str, Any]
    value: complex
    reference: complex
    error: float
    bound: float

    @property
    def within_bound(self) -> bool:
        return self.error <= self.bound

    def to_dict(self) -> Dict[str, Any]:
        return {
            "target": self.target,
            **self.params,
            "value": self.value,
            "reference": self.reference,
            "error": self.error,
            "bound": self.bound,
            "within_bound": self.within_bound,
        }


@dataclass(slots=True)
class ConvergenceTable:
    target: str
    rows: List[ConvergenceRow] = field(default_factory=list)

    @property
    def monotone(self) -> bool:
        """Errors never grow along the grid."""
        errors = [row.error for row in self.rows]
        return all(later <= earlier for earlier, later in zip(errors, errors[1:]))

    def to_dicts(self) -> List[Dict[str, Any]]:
        return [row.to_dict() for row in self.rows]


def _cutoffs(grid: Sequence[float], what: str) -> List[int]:
    values: List[int] = []
    for raw in grid:
        if float(raw) != int(raw) or int(raw) < 0:
            raise ParseError(f"{what} grid needs non-negative integers, got {raw}")
        values.append(int(raw))
    return values


def _qgamma_rows(q: complex, t: complex, grid: Sequence[float]) -> List[ConvergenceRow]:
    reference = q_gamma_value(t, q, 1e-15)
    rows = []
    for n in _cutoffs(grid, "factor count"):
        value = 1.0 / q_pochhammer(t, q, n)
        error = abs(value - reference) / abs(reference)
        bound = math.expm1(pochhammer_tail_bound(t, q, n))
        rows.append(ConvergenceRow("qgamma", {"q": q, "t": t, "n": n}, value, reference, error, bound))
    return rows


def _classical_rows(lambdas: Sequence[float], grid: Sequence[float]) -> List[ConvergenceRow]:
    rows = []
    for report in classical_limit_check(lambdas, [float(b) for b in grid]):
        beta = report.params["beta"]
        rows.append(
            ConvergenceRow(
                "classical_limit",
                {"beta": beta, "lambdas": list(lambdas)},
                report.lhs,
                report.rhs,
                report.abs_error,
                report.tol,
            )
        )
    return rows


def _q_classical_rows(hbar: float, lambdas: Sequence[float], grid: Sequence[float]) -> List[ConvergenceRow]:
    rows = []
    for report in q_classical_limit_check(hbar, lambdas, [float(b) for b in grid]):
        rows.append(
            ConvergenceRow(
                "q_classical_limit",
                {"beta": report.params["beta"], "hbar": hbar, "lambdas": list(lambdas)},
                report.lhs,
                report.rhs,
                report.abs_error,
                report.tol,
            )
        )
    return rows


def _character_rows(beta: float, lambdas: Sequence[float], grid: Sequence[float]) -> List[ConvergenceRow]:
    reference = character_closed_form(beta, lambdas)
    rows = []
    for d in _cutoffs(grid, "degree"):
        value = character_trace(beta, lambdas, d)
        rows.append(
            ConvergenceRow(
                "character",
                {"beta": beta, "lambdas": list(lambdas), "degree": d},
                value,
                reference,
                abs(reference - value),
                character_tail_bound(beta, lambdas, d),
            )
        )
    return rows


def _mode3d_rows(beta: float, hbar: float, lam: float, grid: Sequence[float]) -> List[ConvergenceRow]:
    q = math.exp(-beta * hbar)
    t = math.exp(-beta * lam)
    reference = q_gamma_value(t, q, 1e-15)
    rows = []
    for n in _cutoffs(grid, "mode cutoff"):
        value = mode_partition_3d(beta, hbar, lam, mode_cutoff=n)
        rows.append(
            ConvergenceRow(
                "mode3d",
                {"beta": beta, "hbar": hbar, "lambda": lam, "mode_cutoff": n},
                value,
                reference,
                abs(value - reference) / abs(reference),
                # modes 0..n are n + 1 Pochhammer factors
                math.expm1(pochhammer_tail_bound(t, q, n + 1)),
            )
        )
    return rows


def convergence_table(target: str, params: Dict[str, Any], grid: Sequence[float]) -> ConvergenceTable:
    """One row per grid point.

    qgamma: params q, t; grid of factor counts.
    classical_limit: params lambdas; grid of decreasing betas.
    q_classical_limit: params hbar, lambdas; grid of decreasing betas.
    character: params beta, lambdas; grid of degree cutoffs.
    mode3d: params beta, hbar, lambda; grid of mode cutoffs.
    """
    grid = list(grid)
    if not grid:
        raise ParseError(f"convergence grid for {target} is empty")
    try:
        if target == "qgamma":
            rows = _qgamma_rows(as_complex(params["q"], "q"), as_complex(params["t"], "t"), grid)
        elif target == "classical_limit":
            rows = _classical_rows(params["lambdas"], grid)
        elif target == "q_classical_limit":
            rows = _q_classical_rows(params["hbar"], params["lambdas"], grid)
        elif target == "character":
            rows = _character_rows(params["beta"], params["lambdas"], grid)
        elif target == "mode3d":
            rows = _mode3d_rows(params["beta"], params["hbar"], params["lambda"], grid)
        else:
            raise ParseError(f"unknown convergence target: {target}")
    except KeyError as e:
        raise ParseError(f"convergence target {target} needs parameter {e.args[0]}") from e

    table = ConvergenceTable(target=target, rows=rows)
    logger.info(f"convergence {target}: {len(rows)} rows, monotone={table.monotone}")
    return table
