"""Matrix file formats.

JSON (read and write)::

    {"n": 2, "m": 2, "data": [[re, im], [re, im], [re, im], [re, im]]}

with entries in row-major order. Plain text (read only): a first line
``n m`` followed by `n` lines of `m` whitespace-separated entries written
as ``a``, ``a+bi`` or ``bi``.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import MatrixParseError
from .linalg import as_matrix

__all__ = ["parse_matrix", "load_matrix", "dumps_matrix", "save_matrix"]


def _parse_entry(tok: str) -> complex:
    t = tok.strip().replace("I", "i").replace("i", "j")
    try:
        return complex(t)
    except ValueError as exc:
        raise MatrixParseError(f"bad matrix entry {tok!r}") from exc


def _parse_json(obj) -> np.ndarray:
    try:
        n, m = int(obj["n"]), int(obj["m"])
        data = obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixParseError("JSON matrix needs integer 'n', 'm' and a 'data' list") from exc
    if n < 1 or m < 1 or len(data) != n * m:
        raise MatrixParseError(f"expected {n}x{m}={n * m} entries, got {len(data)}")
    try:
        vals = [complex(float(re), float(im)) for re, im in data]
    except (TypeError, ValueError) as exc:
        raise MatrixParseError("each JSON entry must be a [re, im] pair") from exc
    return np.array(vals, dtype=np.complex128).reshape(n, m)


def _parse_text(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MatrixParseError("empty matrix file")
    head = lines[0].split()
    if len(head) != 2:
        raise MatrixParseError("first line must be 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise MatrixParseError("first line must be 'n m'") from exc
    rows = lines[1:]
    if n < 1 or m < 1 or len(rows) != n:
        raise MatrixParseError(f"expected {n} rows, got {len(rows)}")
    out = np.empty((n, m), dtype=np.complex128)
    for i, row in enumerate(rows):
        toks = row.split()
        if len(toks) != m:
            raise MatrixParseError(f"row {i + 1} has {len(toks)} entries, expected {m}")
        out[i] = [_parse_entry(t) for t in toks]
    return out


def parse_matrix(text: str) -> np.ndarray:
    """Parse either format; JSON is detected by a leading ``{``."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise MatrixParseError(f"invalid JSON: {exc}") from exc
        M = _parse_json(obj)
    else:
        M = _parse_text(text)
    try:
        return as_matrix(M)
    except ValueError as exc:
        raise MatrixParseError(str(exc)) from exc


def load_matrix(path) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise MatrixParseError(f"cannot read {path}: {exc}") from exc
    return parse_matrix(text)


def dumps_matrix(M) -> str:
    M = as_matrix(M)
    n, m = M.shape
    data = [[float(z.real), float(z.imag)] for z in M.ravel()]
    return json.dumps({"n": n, "m": m, "data": data})


def save_matrix(path, M) -> None:
    Path(path).write_text(dumps_matrix(M) + "\n")
