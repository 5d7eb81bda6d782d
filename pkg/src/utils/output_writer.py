from __future__ import annotations

import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd


def format_complex(value: complex) -> str:
    z = complex(value)
    return f"{z.real:.17g}{z.imag:+.17g}i"


def format_real(value: float) -> str:
    return f"{float(value):.17g}"


def to_jsonable(value: Any) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (complex, np.complexfloating)):
        return format_complex(complex(value))
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        f = float(value)
        # JSON has no inf/nan; these only reach here from failed reports
        return f if math.isfinite(f) else str(f)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, Path):
        return str(value)
    return value


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (complex, np.complexfloating)):
        return format_complex(complex(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_real(float(value))
    if isinstance(value, (list, tuple)):
        return " ".join(_cell(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(to_jsonable(value), sort_keys=True, separators=(",", ":"))
    return str(value)


def render_json(command: str, params: Dict[str, Any], results: List[Dict[str, Any]], meta: Dict[str, Any]) -> str:
    payload = {
        "command": command,
        "params": to_jsonable(params),
        "results": to_jsonable(results),
        "meta": to_jsonable(meta),
    }
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_csv(results: List[Dict[str, Any]]) -> str:
    columns: List[str] = []
    for row in results:
        for key in row:
            if key not in columns:
                columns.append(key)
    frame = pd.DataFrame(
        [[_cell(row.get(col)) for col in columns] for row in results],
        columns=columns,
        dtype=str,
    )
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def read_table_csv(text: str) -> pd.DataFrame:
    return pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False)


def rerender_csv(frame: pd.DataFrame) -> str:
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def render_plain(results: List[Dict[str, Any]], summary: Optional[str] = None) -> str:
    blocks = []
    for row in results:
        blocks.append("\n".join(f"{key}={_cell(value)}" for key, value in row.items()))
    text = "\n\n".join(blocks)
    if summary:
        text = f"{text}\n\n{summary}" if text else summary
    return text + "\n"


def emit(text: str, out: Optional[str] = None) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
