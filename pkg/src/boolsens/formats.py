"""Plain-text file formats: truth tables, vertex sets and dense matrices."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Iterable

import numpy as np

from .core import BooleanFunction, from_int


def truth_table_to_text(f: BooleanFunction) -> str:
    """Line 1: ``n``.  Line 2: the table as hex, most significant digit first.

    Table entry ``i`` is bit ``i mod 4`` of hex digit ``i // 4`` counted from
    the right-hand end of the string.
    """
    digits = max(1, (f.size + 3) // 4)
    return f"{f.n}\n{f.to_int():0{digits}x}\n"


def truth_table_from_text(text: str) -> BooleanFunction:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) != 2:
        raise ValueError("truth-table file needs exactly two lines: n and the hex table")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValueError(f"bad variable count {lines[0]!r}") from None
    if not 0 <= n <= 24:
        raise ValueError(f"n={n} out of range")
    hexstr = lines[1].lower().removeprefix("0x")
    digits = max(1, ((1 << n) + 3) // 4)
    if len(hexstr) != digits:
        raise ValueError(f"expected {digits} hex digits for n={n}, got {len(hexstr)}")
    try:
        code = int(hexstr, 16)
    except ValueError:
        raise ValueError("table is not a hex string") from None
    if code >> (1 << n):
        raise ValueError("hex table sets bits beyond 2**n entries")
    return from_int(n, code)


def read_truth_table(path: str | Path) -> BooleanFunction:
    return truth_table_from_text(Path(path).read_text())


def write_truth_table(f: BooleanFunction, path: str | Path) -> None:
    Path(path).write_text(truth_table_to_text(f))


def vertex_set_to_text(n: int, vertices: Iterable[int]) -> str:
    return "\n".join([str(n), *(str(int(v)) for v in vertices)]) + "\n"


def vertex_set_from_text(text: str) -> tuple[int, list[int]]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty vertex-set file")
    n = int(lines[0])
    verts = [int(v) for v in lines[1:]]
    bad = [v for v in verts if not 0 <= v < (1 << n)]
    if bad:
        raise ValueError(f"vertex {bad[0]} out of range for n={n}")
    return n, verts


def matrix_to_text(entries: np.ndarray) -> str:
    rows = [" ".join(str(int(v)) for v in row) for row in entries]
    return "\n".join([str(entries.shape[0]), *rows]) + "\n"


def matrix_from_text(text: str) -> np.ndarray:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    dim = int(lines[0][0])
    m = np.array([[int(v) for v in row] for row in lines[1:]], dtype=np.int64)
    if m.shape != (dim, dim):
        raise ValueError(f"matrix shape {m.shape} does not match dimension {dim}")
    return m


def round_floats(obj: Any, digits: int = 12) -> Any:
    """Recursively round floats to ``digits`` significant digits for stable JSON."""
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x) or math.isinf(x):
            return None
        return float(f"{x:.{digits}g}")
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, dict):
        return {str(k): round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v, digits) for v in obj]
    if isinstance(obj, np.ndarray):
        return [round_floats(v, digits) for v in obj.tolist()]
    if isinstance(obj, (set, frozenset)):
        return sorted(round_floats(v, digits) for v in obj)
    return obj


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, floats at 12 significant digits."""
    return json.dumps(round_floats(obj), sort_keys=True, indent=2) + "\n"
