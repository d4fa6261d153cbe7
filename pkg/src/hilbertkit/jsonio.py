"""JSON encodings shared by the CLI and the verify report.

Matrices are ``{"rows": m, "cols": n, "data": [[re, im], ...]}`` in row-major
order; kets add a ``"space"`` field; tensor elements list their terms.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .conjspace import PLAIN, Ket
from .errors import InvalidMatrix
from .linalg import as_matrix
from .tensor import TensorElement


def _number(v, what: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise InvalidMatrix(f"{what} must be a finite number, got {v!r}")
    return float(v)


def complex_from_json(pair) -> complex:
    if isinstance(pair, (int, float)) and not isinstance(pair, bool):
        return complex(_number(pair, "entry"))
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise InvalidMatrix(f"complex entries are [re, im] pairs, got {pair!r}")
    return complex(_number(pair[0], "real part"), _number(pair[1], "imaginary part"))


def complex_to_json(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def vector_from_json(data) -> np.ndarray:
    if not isinstance(data, list) or not data:
        raise InvalidMatrix("vector must be a non-empty list of [re, im] pairs")
    return np.array([complex_from_json(p) for p in data], dtype=np.complex128)


def vector_to_json(v) -> list[list[float]]:
    return [complex_to_json(z) for z in np.asarray(v).reshape(-1)]


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise InvalidMatrix("matrix JSON must be an object")
    try:
        rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    except KeyError as exc:
        raise InvalidMatrix(f"matrix JSON is missing {exc}") from exc
    for name, v in (("rows", rows), ("cols", cols)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise InvalidMatrix(f"{name} must be a positive integer")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise InvalidMatrix(f"data must hold rows*cols = {rows * cols} entries")
    flat = np.array([complex_from_json(p) for p in data], dtype=np.complex128)
    return as_matrix(flat.reshape(rows, cols))


def matrix_to_json(a) -> dict:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim == 1:
        a = a[:, None]
    return {"rows": int(a.shape[0]), "cols": int(a.shape[1]), "data": vector_to_json(a.reshape(-1))}


def ket_from_json(obj) -> Ket:
    m = matrix_from_json(obj)
    if m.shape[1] != 1:
        raise InvalidMatrix("a ket is a one-column matrix")
    return Ket(m[:, 0], obj.get("space", PLAIN))


def ket_to_json(x: Ket) -> dict:
    out = matrix_to_json(x.coords)
    out["space"] = x.space
    return out


def tensor_from_json(obj) -> TensorElement:
    if not isinstance(obj, dict):
        raise InvalidMatrix("tensor element JSON must be an object")
    try:
        n, m, terms = obj["left_dim"], obj["right_dim"], obj["terms"]
    except KeyError as exc:
        raise InvalidMatrix(f"tensor element JSON is missing {exc}") from exc
    if not isinstance(terms, list):
        raise InvalidMatrix("terms must be a list")
    parsed = []
    for t in terms:
        if not isinstance(t, dict) or "x" not in t or "y" not in t:
            raise InvalidMatrix("each term needs 'x' and 'y'")
        parsed.append((vector_from_json(t["x"]), vector_from_json(t["y"])))
    stored = obj.get("matrix_rep")
    rep = matrix_from_json(stored) if stored is not None else None
    return TensorElement(n, m, tuple(parsed), rep)


def tensor_to_json(z: TensorElement) -> dict:
    return {
        "left_dim": z.left_dim,
        "right_dim": z.right_dim,
        "terms": [{"x": vector_to_json(x), "y": vector_to_json(y)} for x, y in z.terms],
        "matrix_rep": matrix_to_json(z.matrix_rep),
    }


def dumps(obj) -> str:
    """Canonical text: sorted keys, no NaN, so equal inputs give equal bytes."""
    return json.dumps(obj, sort_keys=True, allow_nan=False)
