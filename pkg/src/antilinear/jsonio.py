"""JSON encodings for operators, vectors, bipartite vectors and curves.

Complex numbers are ``[re, im]`` pairs. Floats are rounded to 12
significant digits so that written files re-parse to identical values.
"""
from __future__ import annotations

import json
from typing import Any

import numpy as np

from antilinear.core import AntiOp, LinOp
from antilinear.decomp import WhvForm
from antilinear.epr_teleport import BipartiteVector
from antilinear.symplectic import ConjugationCurve

SIG_DIGITS = 12


class SchemaError(ValueError):
    """JSON content does not match the expected schema."""


def fmt(x: float) -> float:
    """Round to 12 significant digits; ``-0.0`` becomes ``0.0``."""
    v = float(f"{float(x):.{SIG_DIGITS}g}")
    return v + 0.0


def cplx_to_json(z) -> list:
    z = complex(z)
    return [fmt(z.real), fmt(z.imag)]


def cplx_from_json(obj, where: str = "value") -> complex:
    if (
        not isinstance(obj, (list, tuple))
        or len(obj) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in obj)
    ):
        raise SchemaError(f"{where}: expected [re, im], got {obj!r}")
    return complex(obj[0], obj[1])


CHOP = 1e-14


def chop(a) -> np.ndarray:
    """Zero real and imaginary parts below ``CHOP`` times the largest entry.

    Roundoff noise differs between BLAS builds; chopping it keeps written
    files identical across platforms.
    """
    a = np.asarray(a, dtype=complex)
    floor = CHOP * float(np.max(np.abs(a), initial=0.0))
    re = np.where(np.abs(a.real) < floor, 0.0, a.real)
    im = np.where(np.abs(a.imag) < floor, 0.0, a.imag)
    return re + 1j * im


def matrix_to_json(m) -> list:
    return [[cplx_to_json(z) for z in row] for row in chop(m)]


def matrix_from_json(obj, where: str = "matrix") -> np.ndarray:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise SchemaError(f"{where}: expected a non-empty list of rows")
    ncols = len(obj[0])
    out = np.zeros((len(obj), ncols), dtype=complex)
    for i, row in enumerate(obj):
        if len(row) != ncols:
            raise SchemaError(f"{where}[{i}]: ragged row")
        for j, z in enumerate(row):
            out[i, j] = cplx_from_json(z, f"{where}[{i}][{j}]")
    return out


def _require(obj: Any, keys, where: str):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    for k in keys:
        if k not in obj:
            raise SchemaError(f"{where}: missing key {k!r}")


def operator_to_json(op) -> dict:
    return {"dim": op.dim, "kind": op.kind, "matrix": matrix_to_json(op.mat)}


def operator_from_json(obj, where: str = "operator"):
    _require(obj, ("dim", "kind", "matrix"), where)
    m = matrix_from_json(obj["matrix"], f"{where}.matrix")
    if m.shape != (obj["dim"], obj["dim"]):
        raise SchemaError(f"{where}: matrix shape {m.shape} does not match dim {obj['dim']}")
    if obj["kind"] == "linear":
        return LinOp(m)
    if obj["kind"] == "antilinear":
        return AntiOp(m)
    raise SchemaError(f"{where}.kind: expected 'linear' or 'antilinear'")


def vector_to_json(v) -> dict:
    v = chop(v)
    return {"dim": int(v.shape[0]), "entries": [cplx_to_json(z) for z in v]}


def vector_from_json(obj, where: str = "vector") -> np.ndarray:
    _require(obj, ("dim", "entries"), where)
    ent = obj["entries"]
    if not isinstance(ent, list) or len(ent) != obj["dim"]:
        raise SchemaError(f"{where}: entries length does not match dim")
    return np.array([cplx_from_json(z, f"{where}.entries[{i}]") for i, z in enumerate(ent)])


def bipartite_to_json(psi: BipartiteVector) -> dict:
    return {"dimA": psi.dimA, "dimB": psi.dimB, "coeffs": matrix_to_json(psi.coeffs)}


def bipartite_from_json(obj, where: str = "bipartite") -> BipartiteVector:
    _require(obj, ("dimA", "dimB", "coeffs"), where)
    c = matrix_from_json(obj["coeffs"], f"{where}.coeffs")
    if c.shape != (obj["dimA"], obj["dimB"]):
        raise SchemaError(f"{where}: coeffs shape does not match dimA x dimB")
    return BipartiteVector(c)


def curve_to_json(curve: ConjugationCurve) -> dict:
    return {"closed": curve.closed, "samples": [operator_to_json(s) for s in curve.samples]}


def curve_from_json(obj, where: str = "curve") -> ConjugationCurve:
    _require(obj, ("closed", "samples"), where)
    samples = tuple(operator_from_json(s, f"{where}.samples[{i}]") for i, s in enumerate(obj["samples"]))
    if not samples:
        raise SchemaError(f"{where}: no samples")
    return ConjugationCurve(samples, bool(obj["closed"]))


def whv_to_json(form: WhvForm) -> dict:
    return {
        "blocks1d": [fmt(r) for r in form.blocks_1d],
        "blocks2d": [cplx_to_json(z) for z in form.blocks_2d],
        "basis": matrix_to_json(form.basis),
    }


def whv_from_json(obj, where: str = "whv") -> WhvForm:
    _require(obj, ("blocks1d", "blocks2d", "basis"), where)
    return WhvForm(
        tuple(float(r) for r in obj["blocks1d"]),
        tuple(cplx_from_json(z, f"{where}.blocks2d") for z in obj["blocks2d"]),
        matrix_from_json(obj["basis"], f"{where}.basis"),
    )


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2)
