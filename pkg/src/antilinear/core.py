"""Linear and antilinear operators on finite-dimensional Hilbert spaces.

Every operator is stored as a complex matrix. A linear operator acts by
``v -> M @ v`` and an antilinear operator acts by ``v -> M @ conj(v)``.
With this convention products, adjoints and traces reduce to ordinary
matrix algebra::

    anti o anti  ->  M1 @ conj(M2)   (linear)
    anti o lin   ->  M1 @ conj(M2)   (antilinear)
    lin  o anti  ->  M1 @ M2         (antilinear)
    lin  o lin   ->  M1 @ M2         (linear)

The scalar product ``<x, y> = np.vdot(x, y)`` is antilinear in ``x``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np
import scipy.linalg

from antilinear.errors import DimError, UnsupportedDimError, ZeroVectorError

DEFAULT_TOL = 1e-9


def _as_matrix(mat) -> np.ndarray:
    arr = np.array(mat, dtype=complex)
    if arr.ndim != 2:
        raise DimError(f"expected a 2-d matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    arr.setflags(write=False)
    return arr


def as_vector(v) -> np.ndarray:
    """Convert ``v`` to a 1-d complex array."""
    arr = np.asarray(v, dtype=complex)
    if arr.ndim != 1:
        raise DimError(f"expected a 1-d vector, got shape {arr.shape}")
    return arr


@dataclass(frozen=True, eq=False)
class _Map:
    """Matrix-backed map from C^dim_in to C^dim_out."""

    mat: np.ndarray
    antilinear = False

    def __post_init__(self):
        object.__setattr__(self, "mat", _as_matrix(self.mat))
        self._check_shape()

    def _check_shape(self):
        pass

    @property
    def dim_in(self) -> int:
        return self.mat.shape[1]

    @property
    def dim_out(self) -> int:
        return self.mat.shape[0]

    @property
    def kind(self) -> str:
        return "antilinear" if self.antilinear else "linear"

    def __call__(self, v):
        return apply(self, v)

    def __matmul__(self, other):
        return compose(self, other)

    def __add__(self, other):
        if not isinstance(other, _Map) or other.antilinear != self.antilinear:
            return NotImplemented
        if other.mat.shape != self.mat.shape:
            raise DimError("shape mismatch in sum")
        return _wrap(self.mat + other.mat, self.antilinear)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __mul__(self, c):
        # (c X) v = c (X v) for both kinds, so scalars multiply the matrix.
        if not np.isscalar(c):
            return NotImplemented
        return _wrap(complex(c) * self.mat, self.antilinear)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1.0 / complex(c))

    @property
    def H(self):
        """Hermitian adjoint."""
        return adjoint(self)

    def allclose(self, other, tol: float = DEFAULT_TOL) -> bool:
        """True if both maps are of the same kind and agree entrywise."""
        return (
            self.antilinear == other.antilinear
            and self.mat.shape == other.mat.shape
            and bool(np.max(np.abs(self.mat - other.mat), initial=0.0) <= tol)
        )

    def __repr__(self):
        return f"{type(self).__name__}({self.mat.tolist()!r})"


class LinMap(_Map):
    """Linear map between spaces of possibly different dimension."""


class AntiMap(_Map):
    """Antilinear map ``v -> mat @ conj(v)`` between two spaces."""

    antilinear = True


class _Square:
    def _check_shape(self):
        if self.mat.shape[0] != self.mat.shape[1]:
            raise DimError(f"operator matrix must be square, got {self.mat.shape}")

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


class LinOp(_Square, LinMap):
    """Linear operator on C^dim."""


class AntiOp(_Square, AntiMap):
    """Antilinear operator on C^dim acting by ``v -> mat @ conj(v)``."""


Operator = Union[LinMap, AntiMap]


def _wrap(mat, antilinear: bool) -> Operator:
    mat = np.asarray(mat)
    square = mat.ndim == 2 and mat.shape[0] == mat.shape[1]
    if antilinear:
        return AntiOp(mat) if square else AntiMap(mat)
    return LinOp(mat) if square else LinMap(mat)


def identity(dim: int) -> LinOp:
    return LinOp(np.eye(dim))


def standard_conjugation(dim: int) -> AntiOp:
    """Entrywise complex conjugation in the standard basis."""
    return AntiOp(np.eye(dim))


def apply(x: Operator, v) -> np.ndarray:
    """Apply a linear or antilinear map to a vector."""
    v = as_vector(v)
    if v.shape[0] != x.dim_in:
        raise DimError(f"map expects dimension {x.dim_in}, got {v.shape[0]}")
    return x.mat @ (np.conj(v) if x.antilinear else v)


def apply_anti(theta: AntiMap, v) -> np.ndarray:
    """Apply an antilinear map: returns ``mat @ conj(v)``."""
    if not theta.antilinear:
        raise TypeError("apply_anti expects an antilinear map")
    return apply(theta, v)


def compose(x: Operator, y: Operator) -> Operator:
    """Return ``x o y``, i.e. first ``y`` then ``x``.

    The result is linear iff both factors are of the same kind.
    """
    if x.dim_in != y.dim_out:
        raise DimError(f"cannot compose: {x.dim_in} != {y.dim_out}")
    right = np.conj(y.mat) if x.antilinear else y.mat
    return _wrap(x.mat @ right, x.antilinear != y.antilinear)


def adjoint(x: Operator) -> Operator:
    """Hermitian adjoint.

    For antilinear maps the defining relation is
    ``<f1, x^dag f2> = <f2, x f1>`` and the matrix is the plain transpose.
    """
    mat = x.mat.T if x.antilinear else x.mat.conj().T
    return _wrap(mat, x.antilinear)


def trace(x: LinMap) -> complex:
    if x.antilinear:
        raise TypeError("the trace of an antilinear operator is not defined")
    return complex(np.trace(x.mat))


def canonical_form(theta1: AntiOp, theta2: AntiOp) -> complex:
    """Canonical Hermitian form ``(theta1, theta2) = Tr(theta2 o theta1)``."""
    if theta1.mat.shape != theta2.mat.shape:
        raise DimError("canonical form needs equal dimensions")
    return complex(np.sum(theta2.mat * np.conj(theta1.mat).T))


def gram_matrix(ops: Sequence[AntiOp]) -> np.ndarray:
    """Matrix ``G[m, n] = (ops[m], ops[n])`` of the canonical form."""
    stack = np.array([op.mat for op in ops])
    if stack.ndim != 3:
        raise DimError("operators must share one dimension")
    # Tr(M_n conj(M_m)) = sum_ab M_n[a, b] conj(M_m)[b, a]
    return np.einsum("nab,mba->mn", stack, np.conj(stack))


def hermitian_split(theta: AntiOp) -> tuple[AntiOp, AntiOp]:
    """Return the Hermitian and skew-Hermitian parts of ``theta``."""
    m = theta.mat
    return AntiOp((m + m.T) / 2), AntiOp((m - m.T) / 2)


def rank_one_anti(phi_out, phi_in) -> AntiMap:
    """Antilinear rank-one map ``|phi_out><phi_in|_c : f -> <f, phi_in> phi_out``."""
    a, b = as_vector(phi_out), as_vector(phi_in)
    if not np.any(a) or not np.any(b):
        raise ZeroVectorError("rank-one operators need nonzero vectors")
    return _wrap(np.outer(a, b), True)


def rank_one(phi_out, phi_in) -> LinMap:
    """Linear rank-one map ``|phi_out><phi_in| : f -> <phi_in, f> phi_out``."""
    a, b = as_vector(phi_out), as_vector(phi_in)
    if not np.any(a) or not np.any(b):
        raise ZeroVectorError("rank-one operators need nonzero vectors")
    return _wrap(np.outer(a, np.conj(b)), False)


def operator_norm(x: Operator) -> float:
    """Largest singular value of the matrix.

    Complex conjugation is an isometry, so this is also the norm of an
    antilinear map.
    """
    if x.mat.size == 0:
        return 0.0
    return float(np.linalg.norm(x.mat, 2))


def field_of_values_radius(theta: AntiOp) -> float:
    """Radius of the disk ``{<f, theta f> : |f| = 1}``.

    Only the Hermitian part contributes to ``<f, theta f>``, and the disk
    radius is its operator norm.

    Raises:
        UnsupportedDimError: in dimension one, where the set is not a disk.
    """
    if theta.dim < 2:
        raise UnsupportedDimError("the field of values is a disk only for dim >= 2")
    return operator_norm(hermitian_split(theta)[0])


def is_hermitian(x: Operator, tol: float = DEFAULT_TOL) -> bool:
    return bool(np.max(np.abs(x.mat - adjoint(x).mat)) <= tol * max(1.0, operator_norm(x)))


def is_unitary(x: Operator, tol: float = DEFAULT_TOL) -> bool:
    """Unitary (linear) or antiunitary (antilinear)."""
    m = x.mat
    if m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0]))) <= tol)


def is_normal(theta: AntiOp, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``theta`` commutes with its adjoint.

    The commutator test is cross-checked against the equivalent statement
    that the Hermitian and skew-Hermitian parts commute.
    """
    scale = tol * max(operator_norm(theta) ** 2, np.finfo(float).tiny)
    m = theta.mat
    comm = np.max(np.abs(m.T @ m.conj() - m @ m.conj().T))
    plus, minus = hermitian_split(theta)
    parts = compose(plus, minus).mat - compose(minus, plus).mat
    # theta^dag theta - theta theta^dag = 2 (theta- theta+ - theta+ theta-)
    return bool(comm <= scale) and bool(np.max(np.abs(parts)) <= scale)


class EigenStructure(NamedTuple):
    """Eigenvalue circles of an antilinear operator.

    Attributes:
        circles: ``(radius, multiplicity)`` pairs sorted by radius. The
            eigenvalues belonging to a radius ``r`` fill the circle ``|z| = r``.
        diagonalizable: whether the eigenvectors span the whole space.
    """

    circles: list
    diagonalizable: bool


def _cluster(values: np.ndarray, tol: float) -> list[np.ndarray]:
    """Group indices of complex ``values`` whose chains of gaps are ``<= tol``."""
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= tol:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [np.array(g) for g in groups.values()]


def _null_dim(a: np.ndarray, tol: float) -> int:
    s = np.linalg.svd(a, compute_uv=False)
    return int(np.sum(s <= tol))


def eigen_structure(theta: AntiOp, tol: float = DEFAULT_TOL) -> EigenStructure:
    """Eigenvalue circles of ``theta``.

    If ``theta f = a f`` then ``theta^2 f = |a|^2 f``, so eigenvectors live in
    eigenspaces of ``theta^2`` with real nonnegative eigenvalue ``mu``. On such
    an eigenspace with ``mu > 0`` the map ``theta / sqrt(mu)`` is an antilinear
    involution and therefore has a full basis of fixed vectors; for ``mu = 0``
    the eigenvectors form the kernel of ``theta``.
    """
    d = theta.dim
    nrm = operator_norm(theta)
    if nrm == 0.0:
        return EigenStructure([(0.0, d)], True)
    atol = max(tol, 1e-12) * nrm**2
    sq = compose(theta, theta).mat
    mus = np.linalg.eigvals(sq)
    circles = []
    for idx in _cluster(mus, 1e3 * atol):
        mu = complex(np.mean(mus[idx]))
        if abs(mu) <= 1e3 * atol:
            mult = _null_dim(theta.mat, 1e3 * max(tol, 1e-12) * nrm)
            if mult:
                circles.append((0.0, mult))
        elif abs(mu.imag) <= 1e3 * atol and mu.real > 0:
            mult = _null_dim(sq - mu.real * np.eye(d), 1e3 * atol)
            circles.append((float(np.sqrt(mu.real)), mult))
    circles.sort()
    total = sum(m for _, m in circles)
    return EigenStructure(circles, total == d)


class PauliBasis(NamedTuple):
    """Linear Pauli matrices, their antilinear partners and the metric."""

    sigma: tuple
    tau: tuple
    g: np.ndarray


PAULI_METRIC = np.diag([-1.0, 1.0, 1.0, 1.0])


def pauli_basis() -> PauliBasis:
    """Standard-basis Pauli operators ``sigma_1..3`` and ``tau_0..3``.

    ``tau_0`` is skew-Hermitian with square ``-1``; ``tau_1..3`` are
    conjugations. They obey ``tau_j tau_k + tau_k tau_j = 2 g_jk``.
    """
    sigma = (
        LinOp([[0, 1], [1, 0]]),
        LinOp([[0, -1j], [1j, 0]]),
        LinOp([[1, 0], [0, -1]]),
    )
    tau = (
        AntiOp([[0, -1], [1, 0]]),
        AntiOp([[-1, 0], [0, 1]]),
        AntiOp([[1j, 0], [0, 1j]]),
        AntiOp([[0, 1], [1, 0]]),
    )
    basis = PauliBasis(sigma, tau, PAULI_METRIC.copy())
    one = np.eye(2)
    for j in range(4):
        for k in range(4):
            anti = compose(tau[j], tau[k]).mat + compose(tau[k], tau[j]).mat
            assert np.allclose(anti, 2 * PAULI_METRIC[j, k] * one)
            assert np.isclose(canonical_form(tau[j], tau[k]), 2 * PAULI_METRIC[j, k])
    for j in range(3):
        for k in range(3):
            anti = sigma[j].mat @ sigma[k].mat + sigma[k].mat @ sigma[j].mat
            assert np.allclose(anti, 2 * (j == k) * one)
    return basis


def spin_flip() -> AntiOp:
    """Spin flip ``(c1, c2) -> (-i conj(c2), i conj(c1))``, equal to ``i tau_0``."""
    return AntiOp([[0, -1j], [1j, 0]])


def theta_z(z: complex) -> AntiOp:
    """Two-dimensional operator ``(c1, c2) -> (conj(z) conj(c2), z conj(c1))``."""
    z = complex(z)
    return AntiOp([[0, np.conj(z)], [z, 0]])


def elementary_basis(dim: int) -> list[AntiOp]:
    """The ``dim**2`` operators ``|e_j><e_k|_c``."""
    out = []
    for j in range(dim):
        for k in range(dim):
            m = np.zeros((dim, dim))
            m[j, k] = 1.0
            out.append(AntiOp(m))
    return out


def hermitian_basis(dim: int) -> list[AntiOp]:
    """Orthonormal basis of the Hermitian antilinear operators.

    The canonical form is positive definite on this family.
    """
    out = []
    for j in range(dim):
        for k in range(j, dim):
            m = np.zeros((dim, dim))
            if j == k:
                m[j, j] = 1.0
            else:
                m[j, k] = m[k, j] = 1 / np.sqrt(2)
            out.append(AntiOp(m))
    return out


def skew_basis(dim: int) -> list[AntiOp]:
    """Basis of the skew-Hermitian antilinear operators, orthonormal for ``-(.,.)``."""
    out = []
    for j in range(dim):
        for k in range(j + 1, dim):
            m = np.zeros((dim, dim))
            m[j, k] = 1 / np.sqrt(2)
            m[k, j] = -1 / np.sqrt(2)
            out.append(AntiOp(m))
    return out


def canonical_basis(dim: int) -> list[AntiOp]:
    """Hermitian family followed by the skew-Hermitian family."""
    return hermitian_basis(dim) + skew_basis(dim)


def signature(dim: int, tol: float = 1e-10) -> tuple[int, int]:
    """Counts of positive and negative eigenvalues of the canonical form."""
    eig = np.linalg.eigvalsh(gram_matrix(elementary_basis(dim)))
    return int(np.sum(eig > tol)), int(np.sum(eig < -tol))


def funm_hermitian(a: np.ndarray, f) -> np.ndarray:
    """Apply ``f`` to the eigenvalues of a Hermitian matrix."""
    w, v = scipy.linalg.eigh((a + a.conj().T) / 2)
    return (v * f(w)) @ v.conj().T
