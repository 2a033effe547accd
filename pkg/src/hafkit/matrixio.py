"""JSON matrix and block files.

A matrix file::

    {"rows": 2, "cols": 2,
     "entries": [[1.0, 0.0], [0.5, -2.0],
                 [0.5, 2.0], [3.0, 0.0]]}

holds ``rows * cols`` ``[re, im]`` pairs in row-major order. A block file
wraps two such payloads for ``A(Y, B)``::

    {"m": 2, "y": {...matrix...}, "b": {...matrix...}}

Floats are written with Python's shortest round-trip ``repr``, so reading a
written file recovers every value bit-for-bit. NaN and infinities are
rejected on both sides.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import ParseError
from .hafper import BlockMatrix


def _reject_constant(name: str):
    raise ParseError(f"non-finite numeral {name!r} is not allowed")


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _num(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("cannot serialise a non-finite value")
    return repr(x)


def matrix_to_dict(m) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def matrix_from_dict(doc) -> np.ndarray:
    if not isinstance(doc, dict):
        raise ParseError("matrix document must be a JSON object")
    missing = {"rows", "cols", "entries"} - doc.keys()
    if missing:
        raise ParseError(f"matrix document missing fields: {sorted(missing)}")
    rows, cols, entries = doc["rows"], doc["cols"], doc["entries"]
    for key, val in (("rows", rows), ("cols", cols)):
        if not isinstance(val, int) or isinstance(val, bool) or val < 0:
            raise ParseError(f"{key} must be a nonnegative integer, got {val!r}")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        got = len(entries) if isinstance(entries, list) else type(entries).__name__
        raise ParseError(f"entries must be a list of {rows * cols} pairs, got {got}")
    out = np.empty(rows * cols, dtype=np.complex128)
    for k, pair in enumerate(entries):
        if not (isinstance(pair, list) and len(pair) == 2 and all(map(_is_number, pair))):
            raise ParseError(f"entry {k} is not a [re, im] pair of numbers: {pair!r}")
        re, im = float(pair[0]), float(pair[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ParseError(f"entry {k} is not finite")
        out[k] = complex(re, im)
    return out.reshape(rows, cols)


def _format_matrix(doc: dict, indent: str) -> str:
    cols = doc["cols"]
    pairs = [f"[{_num(re)}, {_num(im)}]" for re, im in doc["entries"]]
    lines = [", ".join(pairs[i:i + cols]) for i in range(0, len(pairs), max(cols, 1))]
    body = (",\n" + indent + "  ").join(lines)
    entries = f"[\n{indent}  {body}\n{indent}]" if lines else "[]"
    return (
        f'{{\n{indent}"rows": {doc["rows"]},\n{indent}"cols": {cols},\n'
        f'{indent}"entries": {entries}\n{indent[:-2]}}}'
    )


def dumps_matrix(m) -> str:
    return _format_matrix(matrix_to_dict(m), "  ") + "\n"


def loads_matrix(text: str) -> np.ndarray:
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return matrix_from_dict(doc)


def dumps_block(ab: BlockMatrix) -> str:
    y = _format_matrix(matrix_to_dict(ab.y), "    ")
    b = _format_matrix(matrix_to_dict(ab.b), "    ")
    return f'{{\n  "m": {ab.m},\n  "y": {y},\n  "b": {b}\n}}\n'


def loads_block(text: str) -> BlockMatrix:
    """Parse a block file; symmetry of y and Hermiticity of b are enforced."""
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or {"m", "y", "b"} - doc.keys():
        raise ParseError("block document needs fields m, y, b")
    m = doc["m"]
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise ParseError(f"m must be a nonnegative integer, got {m!r}")
    y = matrix_from_dict(doc["y"])
    b = matrix_from_dict(doc["b"])
    if y.shape != (m, m) or b.shape != (m, m):
        raise ParseError(f"y and b must be {m} x {m}, got {y.shape} and {b.shape}")
    return BlockMatrix(y, b)


def read_matrix(path) -> np.ndarray:
    return loads_matrix(Path(path).read_text())


def write_matrix(path, m) -> None:
    Path(path).write_text(dumps_matrix(m))


def read_block(path) -> BlockMatrix:
    return loads_block(Path(path).read_text())


def write_block(path, ab: BlockMatrix) -> None:
    Path(path).write_text(dumps_block(ab))
