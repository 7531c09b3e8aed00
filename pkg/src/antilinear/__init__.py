"""Numerical calculus of antilinear operators on finite-dimensional spaces."""
from antilinear.core import (
    AntiMap,
    AntiOp,
    LinMap,
    LinOp,
    adjoint,
    apply,
    apply_anti,
    canonical_form,
    compose,
    pauli_basis,
)
from antilinear.errors import AntilinearError

__all__ = [
    "AntiMap",
    "AntiOp",
    "AntilinearError",
    "LinMap",
    "LinOp",
    "adjoint",
    "apply",
    "apply_anti",
    "canonical_form",
    "compose",
    "pauli_basis",
]

__version__ = "0.1.0"
