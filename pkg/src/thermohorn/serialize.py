"""JSON/CSV encoding shared by the command-line surface.

Schemas:

* matrices: ``{"rows": r, "cols": c, "entries": [[re, im], ...]}`` row-major;
* noisy realizations: ``{"n": system_dim, "m": bath_dim, "U": matrix}``;
* Hamiltonians: ``{"beta": b, "quantum": q, "levels": [{"a": "p/q", "w": "r/s"}, ...]}``
  with exact rational strings for the level labels;
* vectors on the command line: comma-separated decimals, ``a/b`` tokens allowed;
* CSV floats: 12 significant digits.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np

from .energy import EnergyLabel, Hamiltonian
from .errors import PreconditionError
from .linalg import ComplexMatrix
from .noisy import NoisyRealization

__all__ = [
    "format_float",
    "format_vector",
    "parse_vector",
    "matrix_to_json",
    "matrix_from_json",
    "real_rows",
    "realization_to_json",
    "realization_from_json",
    "hamiltonian_to_json",
    "hamiltonian_from_json",
    "dump_json",
]


def format_float(value: float) -> str:
    return "%.12g" % float(value)


def _round12(value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        return value
    return float(format_float(value))


def format_vector(vec) -> str:
    return ",".join(format_float(x) for x in np.asarray(vec, dtype=np.float64))


def parse_vector(text: str) -> np.ndarray:
    """Comma-separated decimals; ``a/b`` tokens are parsed exactly."""
    tokens = [tok.strip() for tok in str(text).split(",")]
    if not tokens or any(not tok for tok in tokens):
        raise PreconditionError("bad-vector", f"cannot parse vector from {text!r}")
    values = []
    for tok in tokens:
        try:
            values.append(float(Fraction(tok)) if "/" in tok else float(tok))
        except (ValueError, ZeroDivisionError) as exc:
            raise PreconditionError("bad-vector", f"cannot parse entry {tok!r}") from exc
    return np.array(values, dtype=np.float64)


def matrix_to_json(mat: ComplexMatrix) -> dict:
    mat = np.asarray(mat, dtype=np.complex128)
    if mat.ndim != 2:
        raise PreconditionError("bad-matrix", f"expected a matrix, got shape {mat.shape}")
    rows, cols = mat.shape
    entries = [[_round12(z.real), _round12(z.imag)] for z in mat.reshape(-1)]
    return {"rows": int(rows), "cols": int(cols), "entries": entries}


def matrix_from_json(obj) -> ComplexMatrix:
    if not isinstance(obj, dict) or not {"rows", "cols", "entries"} <= set(obj):
        raise PreconditionError("bad-matrix", "expected {rows, cols, entries}")
    rows, cols = obj["rows"], obj["cols"]
    if not (isinstance(rows, int) and isinstance(cols, int) and rows > 0 and cols > 0):
        raise PreconditionError("bad-matrix", f"bad dimensions {rows!r} x {cols!r}")
    entries = obj["entries"]
    if len(entries) != rows * cols:
        raise PreconditionError(
            "bad-matrix", f"{len(entries)} entries for a {rows}x{cols} matrix"
        )
    flat = np.empty(rows * cols, dtype=np.complex128)
    for k, pair in enumerate(entries):
        if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
            raise PreconditionError("bad-matrix", f"entry {k} is not a [re, im] pair")
        re, im = float(pair[0]), float(pair[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise PreconditionError("bad-matrix", f"entry {k} is not finite")
        flat[k] = complex(re, im)
    return flat.reshape(rows, cols)


def real_rows(mat) -> list[list[float]]:
    """Real matrix as nested lists with 12-significant-digit floats."""
    mat = np.asarray(mat, dtype=np.float64)
    return [[_round12(x) for x in row] for row in mat]


def realization_to_json(realization: NoisyRealization) -> dict:
    return {
        "n": realization.system_dim,
        "m": realization.bath_dim,
        "U": matrix_to_json(realization.unitary),
    }


def realization_from_json(obj) -> NoisyRealization:
    if not isinstance(obj, dict) or not {"n", "m", "U"} <= set(obj):
        raise PreconditionError("bad-realization", "expected {n, m, U}")
    return NoisyRealization(int(obj["n"]), int(obj["m"]), matrix_from_json(obj["U"]))


def _fraction_from_json(value, what: str) -> Fraction:
    if isinstance(value, bool):
        raise PreconditionError("bad-rational", f"{what} must be rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float) and value.is_integer():
        return Fraction(int(value))
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise PreconditionError("bad-rational", f"cannot parse {what}={value!r}") from exc
    raise PreconditionError("bad-rational", f"{what} must be an integer or 'p/q', got {value!r}")


def hamiltonian_to_json(ham: Hamiltonian) -> dict:
    return {
        "beta": _round12(ham.beta),
        "quantum": _round12(ham.base_quantum),
        "levels": [
            {"a": str(lv.quantum_mult), "w": str(lv.weight_factor)} for lv in ham.levels
        ],
    }


def hamiltonian_from_json(obj) -> Hamiltonian:
    if not isinstance(obj, dict) or not {"beta", "quantum", "levels"} <= set(obj):
        raise PreconditionError("bad-hamiltonian", "expected {beta, quantum, levels}")
    levels = obj["levels"]
    if not isinstance(levels, list) or not levels:
        raise PreconditionError("bad-hamiltonian", "levels must be a non-empty list")
    parsed = []
    for k, lv in enumerate(levels):
        if not isinstance(lv, dict) or "a" not in lv:
            raise PreconditionError("bad-hamiltonian", f"level {k} needs an 'a' field")
        a = _fraction_from_json(lv["a"], f"levels[{k}].a")
        w = _fraction_from_json(lv.get("w", 1), f"levels[{k}].w")
        parsed.append(EnergyLabel(a, w))
    return Hamiltonian(tuple(parsed), float(obj["beta"]), float(obj["quantum"]))


def dump_json(obj) -> str:
    """Canonical JSON: sorted keys, stable float formatting, trailing newline."""
    return json.dumps(obj, sort_keys=True, allow_nan=False) + "\n"
