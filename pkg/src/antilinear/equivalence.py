"""Antiunitary equivalence, copositive maps and antilinear operator spaces.

Covers the theta-transpose, trace criteria for unitary equivalence to the
transpose, completely copositive maps built from prescribed input/output
vectors, the strong angle test, geometric phases and the inertia of
subspaces of antilinear operators under the canonical form.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from antilinear.core import (
    DEFAULT_TOL,
    AntiOp,
    LinOp,
    adjoint,
    as_vector,
    canonical_form,
    compose,
    gram_matrix,
)
from antilinear.decomp import OpClass, classify
from antilinear.errors import (
    BasisError,
    BetaError,
    DegenerateInputError,
    DimError,
    NotConjugationError,
    NotProjectionError,
    UndefinedPhaseError,
)


def theta_transpose(x: LinOp, theta: AntiOp, tol: float = DEFAULT_TOL) -> LinOp:
    """Transpose ``theta o x^dag o theta`` relative to a conjugation.

    Raises:
        NotConjugationError: if ``theta`` is not a conjugation.
    """
    if classify(theta, tol) is not OpClass.CONJUGATION:
        raise NotConjugationError("the transpose needs a conjugation")
    return compose(theta, compose(adjoint(x), theta))


def uet_invariants_dim2(x: LinOp) -> tuple[complex, complex, float]:
    """``(Tr X, Tr X^2, Tr X^dag X)``, a complete unitary invariant in dimension 2."""
    if x.dim != 2:
        raise DimError("the invariant triple is defined for dimension 2")
    m = x.mat
    return complex(np.trace(m)), complex(np.trace(m @ m)), float(np.real(np.trace(m.conj().T @ m)))


def uet_words_dim3(x: LinOp) -> tuple[complex, complex]:
    """The two degree-6 trace words compared by the dimension-3 criterion."""
    if x.dim != 3:
        raise DimError("the criterion is defined for dimension 3")
    a = x.mat
    h = a.conj().T
    a2 = a @ a
    w1 = np.trace(h @ a @ h @ a2 @ h)
    w2 = np.trace(h @ a2 @ h @ a @ h)
    return complex(w1), complex(w2)


def uet_test_dim3(x: LinOp, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``X`` is unitarily equivalent to its transpose (dimension 3).

    The two trace words are compared relative to ``|X|^6``.
    """
    w1, w2 = uet_words_dim3(x)
    scale = np.linalg.norm(x.mat, 2) ** 6
    return bool(abs(w1 - w2) <= tol * max(scale, np.finfo(float).tiny))


@dataclass(frozen=True)
class CopositiveMap:
    """Completely copositive map ``X -> sum_i t_i X^dag t_i^dag``."""

    kraus_anti: tuple

    def __post_init__(self):
        object.__setattr__(self, "kraus_anti", tuple(self.kraus_anti))
        dims = {t.dim for t in self.kraus_anti}
        if len(dims) > 1:
            raise DimError("all terms must act on one space")

    @property
    def length(self) -> int:
        return len(self.kraus_anti)

    @property
    def dim(self) -> int:
        return self.kraus_anti[0].dim

    @property
    def k_op(self) -> LinOp:
        """``K = sum t_i^dag t_i``, so that ``Tr T(X) = Tr(K X)``."""
        k = np.zeros((self.dim, self.dim), dtype=complex)
        for t in self.kraus_anti:
            k += t.mat.T @ np.conj(t.mat)
        return LinOp(k)

    def __call__(self, x: LinOp) -> LinOp:
        return apply_copositive(self, x)

    def superoperator(self) -> np.ndarray:
        """Matrix of ``T`` acting on row-major vectorised operators."""
        d = self.dim
        cols = []
        for k in range(d * d):
            e = np.zeros(d * d)
            e[k] = 1.0
            cols.append(apply_copositive(self, LinOp(e.reshape(d, d))).mat.reshape(-1))
        return np.array(cols).T


def apply_copositive(t: CopositiveMap, x: LinOp) -> LinOp:
    """``sum_i t_i o x^dag o t_i^dag``."""
    if x.dim != t.dim:
        raise DimError("operator and map dimensions differ")
    xt = x.mat.T
    out = np.zeros_like(x.mat)
    for th in t.kraus_anti:
        # t X^dag t^dag = M conj(X^H) conj(M^T) = M X^T M^H
        out = out + th.mat @ xt @ th.mat.conj().T
    return LinOp(out)


def check_beta(beta, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Validate a positive semi-definite matrix with unit diagonal.

    Raises:
        BetaError: if ``beta`` is not Hermitian, not positive or lacks a unit diagonal.
    """
    b = np.asarray(beta, dtype=complex)
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise BetaError("beta must be square")
    if np.max(np.abs(b - b.conj().T)) > tol:
        raise BetaError("beta must be Hermitian")
    if np.max(np.abs(np.diag(b) - 1)) > tol:
        raise BetaError("beta must have unit diagonal")
    if np.min(np.linalg.eigvalsh((b + b.conj().T) / 2)) < -tol * b.shape[0]:
        raise BetaError("beta must be positive semi-definite")
    return (b + b.conj().T) / 2


def _column_matrix(vectors: Sequence, name: str) -> np.ndarray:
    v = np.column_stack([as_vector(x) for x in vectors])
    if np.any(np.abs(np.linalg.norm(v, axis=0) - 1) > 1e-8):
        raise DegenerateInputError(f"{name} must be unit vectors")
    return v


def build_copositive(inputs: Sequence, outputs: Sequence, beta, tol: float = DEFAULT_TOL) -> CopositiveMap:
    """Copositive map sending ``|f_j><f_k|`` to ``beta_jk |g_k><g_j|``.

    ``beta = alpha^dag alpha`` is factored through its eigendecomposition,
    keeping one term per numerically nonzero eigenvalue, and
    ``t_i = sum_j alpha_ij |g_j><h_j|_c`` with ``h_j`` the dual basis of the
    inputs ``f_j``. The number of terms equals the rank of ``beta``.

    Raises:
        DegenerateInputError: dependent or non-unit inputs, non-unit outputs.
        BetaError: invalid ``beta``.
    """
    f = _column_matrix(inputs, "inputs")
    g = _column_matrix(outputs, "outputs")
    m = f.shape[1]
    if g.shape != f.shape:
        raise DimError("inputs and outputs must match in number and dimension")
    b = check_beta(beta, tol)
    if b.shape[0] != m:
        raise BetaError("beta size must equal the number of vectors")
    if m > f.shape[0] or np.linalg.cond(f) > 1e12:
        raise DegenerateInputError("inputs are linearly dependent")
    dual = f @ np.linalg.inv(f.conj().T @ f)
    lam, u = np.linalg.eigh(b)
    keep = lam > tol * max(lam.max(), 1.0)
    alpha = np.sqrt(lam[keep])[:, None] * u[:, keep].conj().T
    terms = [AntiOp((g * a) @ dual.T) for a in alpha]
    return CopositiveMap(tuple(terms))


def strong_angle_test(inputs: Sequence, outputs: Sequence, tol: float = DEFAULT_TOL) -> bool:
    """Triple-product test for a length-one trace-preserving cochannel.

    Checks ``<f_i,f_j><f_j,f_k><f_k,f_i> = <g_j,g_i><g_i,g_k><g_k,g_j>``
    for all index triples.

    Raises:
        DegenerateInputError: if either family is not a basis.
    """
    f = np.column_stack([as_vector(x) for x in inputs])
    g = np.column_stack([as_vector(x) for x in outputs])
    for v in (f, g):
        if v.shape[0] != v.shape[1] or np.linalg.cond(v) > 1e12:
            raise DegenerateInputError("inputs and outputs must be bases")
    a = f.conj().T @ f
    b = g.conj().T @ g
    lhs = np.einsum("ij,jk,ki->ijk", a, a, a)
    rhs = np.einsum("ji,ik,kj->ijk", b, b, b)
    return bool(np.max(np.abs(lhs - rhs)) <= tol)


def rank_one_beta_test(beta, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``beta_ij beta_jk beta_ki = 1`` for all triples."""
    b = check_beta(beta, tol)
    prod = np.einsum("ij,jk,ki->ijk", b, b, b)
    return bool(np.max(np.abs(prod - 1)) <= tol)


def geometric_phase(projections: Sequence[LinOp], tol: float = DEFAULT_TOL) -> float:
    """``arg Tr(P1 P2 ... Pn)`` in ``[0, 2 pi)`` for rank-one projections.

    Raises:
        NotProjectionError: if an input is not a rank-one projection.
        UndefinedPhaseError: if the trace vanishes.
    """
    prod = None
    for p in projections:
        m = p.mat
        if (
            np.max(np.abs(m @ m - m)) > 1e-8
            or np.max(np.abs(m - m.conj().T)) > 1e-8
            or abs(np.trace(m) - 1) > 1e-8
        ):
            raise NotProjectionError("inputs must be rank-one orthogonal projections")
        prod = m if prod is None else prod @ m
    if prod is None:
        raise ValueError("need at least one projection")
    z = np.trace(prod)
    if abs(z) < tol:
        raise UndefinedPhaseError("the trace vanishes, the phase is undefined")
    if abs(z.imag) <= 1e-14 * abs(z):  # roundoff would wrap 0 to 2 pi
        z = complex(z.real, 0.0)
    phase = float(np.angle(z) % (2 * np.pi))
    return 0.0 if phase == 2 * np.pi else phase


class AoSpaceInertia(NamedTuple):
    n_plus: int
    n_minus: int
    n_zero: int


def ao_space_inertia(basis: Sequence[AntiOp], tol: float = 1e-10) -> AoSpaceInertia:
    """Inertia of the canonical form restricted to ``span(basis)``.

    Raises:
        DegenerateInputError: if the basis is linearly dependent.
    """
    stack = np.array([b.mat.reshape(-1) for b in basis])
    s = np.linalg.svd(stack, compute_uv=False)
    if s.size and s[-1] <= 1e-10 * s[0]:
        raise DegenerateInputError("basis operators are linearly dependent")
    eig = np.linalg.eigvalsh(gram_matrix(basis))
    scale = tol * max(1.0, float(np.max(np.abs(eig), initial=0.0)))
    plus = int(np.sum(eig > scale))
    minus = int(np.sum(eig < -scale))
    return AoSpaceInertia(plus, minus, len(basis) - plus - minus)


def ao_space_map(
    orthonormal_basis: Sequence[AntiOp],
    inner: Callable[[AntiOp, AntiOp], complex] = canonical_form,
    tol: float = 1e-10,
) -> CopositiveMap:
    """Map ``X -> sum_j t_j X^dag t_j^dag`` of an orthonormal basis.

    The result does not depend on which orthonormal basis is used.

    Raises:
        BasisError: if the basis is not orthonormal for ``inner``.
    """
    basis = list(orthonormal_basis)
    g = np.array([[inner(a, b) for b in basis] for a in basis])
    if np.max(np.abs(g - np.eye(len(basis)))) > tol:
        raise BasisError("basis is not orthonormal for the supplied scalar product")
    return CopositiveMap(tuple(basis))


def negative_canonical_form(theta1: AntiOp, theta2: AntiOp) -> complex:
    """``-(theta1, theta2)``, positive definite on skew-Hermitian operators."""
    return -canonical_form(theta1, theta2)


def remix(basis: Sequence[AntiOp], u) -> list[AntiOp]:
    """New basis ``t'_j = sum_k u_jk t_k``."""
    u = np.asarray(u)
    stack = np.array([b.mat for b in basis])
    return [AntiOp(m) for m in np.einsum("jk,kab->jab", u, stack)]


def ao_zero_example(dim: int) -> list[AntiOp]:
    """Operators ``|e_a><e_b|_c`` with ``a`` even and ``b`` odd (1-based).

    Their span is isotropic: the canonical form vanishes on it.
    """
    out = []
    for a in range(2, dim + 1, 2):
        for b in range(1, dim + 1, 2):
            m = np.zeros((dim, dim))
            m[a - 1, b - 1] = 1.0
            out.append(AntiOp(m))
    return out
