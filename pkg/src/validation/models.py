from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from src.specfun.complex_value import distance_mod_2pi_i

METRICS = ("relative", "absolute", "mod_2pi_i")


@dataclass(slots=True)
class VerificationReport:
    identity: str
    lhs: complex
    rhs: complex
    abs_error: float
    rel_error: float
    tol: float
    passed: bool
    metric: str = "relative"
    params: Dict[str, Any] = field(default_factory=dict)
    note: Optional[str] = None

    def __post_init__(self) -> None:
        self.identity = str(self.identity or "").strip()
        if not self.identity:
            raise ValueError("identity name is required")
        if self.metric not in METRICS:
            raise ValueError(f"unknown error metric: {self.metric}")
        if not self.tol > 0:
            raise ValueError("tol must be positive")

    @classmethod
    def compare(
        cls,
        identity: str,
        lhs: complex,
        rhs: complex,
        tol: float,
        metric: str = "relative",
        params: Optional[Dict[str, Any]] = None,
        note: Optional[str] = None,
    ) -> "VerificationReport":
        lhs = complex(lhs)
        rhs = complex(rhs)
        if metric == "mod_2pi_i":
            abs_error = distance_mod_2pi_i(lhs, rhs)
        else:
            abs_error = abs(lhs - rhs)
        scale = abs(rhs)
        rel_error = abs_error / scale if scale > 0 else abs_error
        measured = rel_error if metric == "relative" else abs_error
        passed = math.isfinite(measured) and measured <= tol
        return cls(
            identity=identity,
            lhs=lhs,
            rhs=rhs,
            abs_error=abs_error,
            rel_error=rel_error,
            tol=tol,
            passed=passed,
            metric=metric,
            params=dict(params or {}),
            note=note,
        )

    @classmethod
    def from_error(
        cls,
        identity: str,
        error: Exception,
        tol: float,
        params: Optional[Dict[str, Any]] = None,
    ) -> "VerificationReport":
        return cls(
            identity=identity,
            lhs=complex(math.nan, 0.0),
            rhs=complex(math.nan, 0.0),
            abs_error=math.inf,
            rel_error=math.inf,
            tol=tol,
            passed=False,
            params=dict(params or {}),
            note=f"{type(error).__name__}: {error}",
        )

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "identity": self.identity,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_error": self.abs_error,
            "rel_error": self.rel_error,
            "metric": self.metric,
            "tol": self.tol,
            "passed": self.passed,
            "params": dict(self.params),
        }
        if self.note:
            payload["note"] = self.note
        return payload


@dataclass(slots=True)
class SuiteResult:
    suite: str
    reports: List[VerificationReport] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def pass_count(self) -> int:
        return sum(1 for report in self.reports if report.passed)

    @property
    def fail_count(self) -> int:
        return len(self.reports) - self.pass_count

    @property
    def ok(self) -> bool:
        return self.fail_count == 0

    def summary_text(self) -> str:
        return f"suite={self.suite} passed={self.pass_count} failed={self.fail_count} wall_time={self.wall_time:.3f}s"

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "suite": self.suite,
            "pass_count": self.pass_count,
            "fail_count": self.fail_count,
            "reports": [report.to_dict() for report in self.reports],
        }
        if include_timing:
            payload["wall_time"] = self.wall_time
        return payload
