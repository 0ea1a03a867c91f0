"""File formats used by the command line.

JSON is the primary interchange format: matrices as {"n": ..., "rows":
[[...]]}, vectors as {"n": ..., "values": [...]}, determinantal families
as {"matrices": [...], "e": [...]}, and custom trace-zero bases as a JSON
array of n x n matrices (nested rows, or flat row-major).  Plain
whitespace-delimited numbers are accepted for matrices and vectors behind
an explicit flag.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .basisgen import TracelessBasis, custom_traceless_basis
from .errors import DegenerateBasisError
from .symlinalg import symmetric

__all__ = [
    "SCHEMA_VERSION",
    "load_matrix",
    "load_vector",
    "load_family",
    "load_basis_file",
    "dump_json",
]

SCHEMA_VERSION = 1


def _read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc


def _parse_json(path, text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc


def _parse_tokens(path, text: str) -> np.ndarray:
    tokens = text.split()
    if not tokens:
        raise ValueError(f"{path}: file contains no numbers")
    try:
        return np.array([float(t) for t in tokens])
    except ValueError as exc:
        raise ValueError(f"{path}: non-numeric token: {exc}") from exc


def _as_float_grid(path, rows, field: str) -> np.ndarray:
    if not isinstance(rows, list) or not rows:
        raise ValueError(f"{path}: field '{field}' must be a non-empty array of rows")
    width = None
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise ValueError(f"{path}: '{field}' row {i} is not an array")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ValueError(
                f"{path}: '{field}' row {i} has {len(row)} entries, expected {width}"
            )
    try:
        return np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{path}: '{field}' has a non-numeric entry: {exc}") from exc


def load_matrix(path, plain: bool = False, symmetrize: bool = False) -> np.ndarray:
    """Load a symmetric matrix from a MatrixFile JSON or plain text."""
    text = _read_text(path)
    if plain:
        flat = _parse_tokens(path, text)
        n = round(len(flat) ** 0.5)
        if n * n != len(flat):
            raise ValueError(
                f"{path}: {len(flat)} numbers do not form a square matrix"
            )
        A = flat.reshape(n, n)
    else:
        doc = _parse_json(path, text)
        if not isinstance(doc, dict) or "rows" not in doc:
            raise ValueError(f"{path}: expected an object with field 'rows'")
        A = _as_float_grid(path, doc["rows"], "rows")
        if A.shape[0] != A.shape[1]:
            raise ValueError(f"{path}: 'rows' is {A.shape[0]} x {A.shape[1]}, not square")
        if "n" in doc and doc["n"] != A.shape[0]:
            raise ValueError(
                f"{path}: field 'n' = {doc['n']} but 'rows' has {A.shape[0]} rows"
            )
    try:
        return symmetric(A, symmetrize=symmetrize)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc


def load_vector(path, plain: bool = False) -> np.ndarray:
    """Load a vector from a VectorFile JSON or plain text."""
    text = _read_text(path)
    if plain:
        return _parse_tokens(path, text)
    doc = _parse_json(path, text)
    if not isinstance(doc, dict) or "values" not in doc:
        raise ValueError(f"{path}: expected an object with field 'values'")
    values = doc["values"]
    if not isinstance(values, list) or not values:
        raise ValueError(f"{path}: field 'values' must be a non-empty array")
    try:
        x = np.array(values, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{path}: 'values' has a non-numeric entry: {exc}") from exc
    if x.ndim != 1:
        raise ValueError(f"{path}: 'values' must be a flat array")
    if "n" in doc and doc["n"] != x.shape[0]:
        raise ValueError(
            f"{path}: field 'n' = {doc['n']} but 'values' has {x.shape[0]} entries"
        )
    return x


def load_family(path) -> tuple[np.ndarray, np.ndarray]:
    """Load a determinantal family: matrices A_1..A_m and a direction e."""
    doc = _parse_json(path, _read_text(path))
    if not isinstance(doc, dict) or "matrices" not in doc or "e" not in doc:
        raise ValueError(f"{path}: expected an object with fields 'matrices' and 'e'")
    raw = doc["matrices"]
    if not isinstance(raw, list) or not raw:
        raise ValueError(f"{path}: 'matrices' must be a non-empty array")
    mats = []
    side = None
    for i, entry in enumerate(raw):
        A = _as_float_grid(path, entry, f"matrices[{i}]")
        if A.shape[0] != A.shape[1]:
            raise ValueError(f"{path}: matrices[{i}] is not square")
        if side is None:
            side = A.shape[0]
        elif A.shape[0] != side:
            raise ValueError(
                f"{path}: matrices[{i}] has side {A.shape[0]}, expected {side}"
            )
        try:
            mats.append(symmetric(A))
        except ValueError as exc:
            raise ValueError(f"{path}: matrices[{i}]: {exc}") from exc
    try:
        e = np.array(doc["e"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{path}: 'e' has a non-numeric entry: {exc}") from exc
    if e.ndim != 1 or e.shape[0] != len(mats):
        raise ValueError(
            f"{path}: 'e' must have one entry per matrix ({len(mats)}), got shape {e.shape}"
        )
    return np.array(mats), e


def load_basis_file(path) -> TracelessBasis:
    """Load and validate a custom trace-zero basis from a JSON array."""
    doc = _parse_json(path, _read_text(path))
    if not isinstance(doc, list) or not doc:
        raise ValueError(f"{path}: expected a non-empty JSON array of matrices")
    mats = []
    n = None
    for i, entry in enumerate(doc):
        if not isinstance(entry, list):
            raise ValueError(f"{path}: element {i} is not an array")
        if entry and isinstance(entry[0], list):
            A = _as_float_grid(path, entry, f"element {i}")
        else:
            flat = np.array(entry, dtype=float)
            side = round(len(flat) ** 0.5)
            if side * side != len(flat):
                raise ValueError(
                    f"{path}: element {i} has {len(flat)} entries, not a square count"
                )
            A = flat.reshape(side, side)
        if A.shape[0] != A.shape[1]:
            raise ValueError(f"{path}: element {i} is not square")
        if n is None:
            n = A.shape[0]
        elif A.shape[0] != n:
            raise ValueError(f"{path}: element {i} has side {A.shape[0]}, expected {n}")
        mats.append(A)
    try:
        return custom_traceless_basis(np.array(mats))
    except (ValueError, DegenerateBasisError) as exc:
        raise ValueError(f"{path}: invalid basis: {exc}") from exc


def dump_json(obj) -> str:
    """Deterministic JSON rendering used for every CLI output."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
