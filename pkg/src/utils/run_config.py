from __future__ import annotations

import math
from typing import Any, Dict, Literal, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator

from src.utils.errors import ParseError

Command = Literal["lfactor", "regdet", "qgamma", "volume", "verify", "convergence"]
OutputFormat = Literal["json", "csv", "plain"]


class RunConfig(BaseModel):
    """Shared CLI options after merging flags over config.yaml defaults."""

    command: Command
    seed: int = Field(default=0, ge=0)
    tol: float = Field(default=1e-10, gt=0)
    output_format: OutputFormat = Field(default="json")
    out: Optional[str] = Field(default=None)

    @field_validator("tol")
    @classmethod
    def finite_tol(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("tol must be finite")
        return v

    @classmethod
    def build(cls, data: Dict[str, Any]) -> "RunConfig":
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            problems = "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors())
            raise ParseError(f"invalid run configuration: {problems}") from e

    def meta(self, version: str) -> Dict[str, Any]:
        return {"seed": self.seed, "tol": self.tol, "version": version}
