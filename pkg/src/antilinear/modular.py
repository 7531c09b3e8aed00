"""Geometric means, metric involutions and finite modular objects.

For a cyclic and separating bipartite vector ``psi`` the modular involution
``S`` maps ``(A (x) 1) psi`` to ``(A^dag (x) 1) psi``. Its polar parts are the
modular operator ``Delta`` and the modular conjugation ``J``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from antilinear.core import DEFAULT_TOL, AntiOp, LinOp, compose, funm_hermitian
from antilinear.epr_teleport import BipartiteVector
from antilinear.errors import (
    DimError,
    IncompatibleError,
    NotPositiveError,
    NotSeparatingError,
    NotUnimodularError,
)


class PositiveOp(LinOp):
    """Hermitian positive definite operator (validated on construction)."""

    def __post_init__(self):
        super().__post_init__()
        m = self.mat
        if np.max(np.abs(m - m.conj().T), initial=0.0) > 1e-9 * max(1.0, np.max(np.abs(m))):
            raise NotPositiveError("operator is not Hermitian")
        if self.dim and np.min(np.linalg.eigvalsh(m)) <= 0:
            raise NotPositiveError("operator is not positive definite")

    def power(self, t: float) -> "PositiveOp":
        return PositiveOp(funm_hermitian(self.mat, lambda w: w**t))


def as_positive(a) -> PositiveOp:
    if isinstance(a, PositiveOp):
        return a
    m = np.asarray(getattr(a, "mat", a), dtype=complex)
    return PositiveOp((m + m.conj().T) / 2 if np.allclose(m, m.conj().T, atol=1e-12) else m)


def geometric_mean(a, b) -> PositiveOp:
    """``A # B = A^{1/2} (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2}``.

    The unique positive solution ``C`` of ``C A^{-1} C = B``.

    Raises:
        NotPositiveError: if an input is not positive definite.
    """
    a, b = as_positive(a), as_positive(b)
    if a.dim != b.dim:
        raise DimError("geometric mean needs equal dimensions")
    ah = a.power(0.5).mat
    aih = a.power(-0.5).mat
    mid = funm_hermitian(aih @ b.mat @ aih, np.sqrt)
    c = ah @ mid @ ah
    return PositiveOp((c + c.conj().T) / 2)


class MetricInvolution:
    """``S_A(X) = A^{-1} X^dag A``, the adjoint for ``<x, y>_A = <x, A y>``."""

    def __init__(self, a):
        self.a = as_positive(a)
        self._ainv = np.linalg.inv(self.a.mat)

    def __call__(self, x) -> LinOp:
        xm = np.asarray(getattr(x, "mat", x))
        return LinOp(self._ainv @ xm.conj().T @ self.a.mat)


def metric_involution(a) -> MetricInvolution:
    return MetricInvolution(a)


def metric_acq_point(a, b, t: float) -> PositiveOp:
    """``C_t = A^{1/2} Y^t A^{1/2}`` with ``Y = A^{-1/2} B A^{-1/2}``."""
    a, b = as_positive(a), as_positive(b)
    ah = a.power(0.5).mat
    aih = a.power(-0.5).mat
    y = funm_hermitian(aih @ b.mat @ aih, lambda w: w**t)
    c = ah @ y @ ah
    return PositiveOp((c + c.conj().T) / 2)


def metric_acq_line(a, b, t: float) -> MetricInvolution:
    """``S_{C_t}``; equals ``S_A`` at ``t = 0`` and ``S_B`` at ``t = 1``."""
    return MetricInvolution(metric_acq_point(a, b, t))


@dataclass(frozen=True)
class ModularTriple:
    """Modular involution ``s = j Delta^{1/2}``, operator ``delta`` and conjugation ``j``."""

    s: AntiOp
    delta: PositiveOp
    j: AntiOp


def _swap_indices(d: int) -> np.ndarray:
    idx = np.arange(d * d).reshape(d, d)
    return idx.T.reshape(-1)


def modular_from_bipartite(psi: BipartiteVector, tol: float = DEFAULT_TOL) -> ModularTriple:
    """Modular objects of a cyclic and separating bipartite vector.

    With the Schmidt form ``psi = sum sqrt(p_j) a_j (x) b_j`` and
    ``|jk> = a_j (x) b_k``::

        S |jk> = sqrt(p_j / p_k) |kj>,  Delta |jk> = (p_j / p_k) |jk>,  J |jk> = |kj>.

    The result does not depend on the normalisation of ``psi``.

    Raises:
        NotSeparatingError: if the coefficient matrix is singular.
    """
    c = psi.coeffs
    if psi.dimA != psi.dimB:
        raise NotSeparatingError("cyclic and separating vectors need equal dimensions")
    d = psi.dimA
    u, s, wh = np.linalg.svd(c)
    if s[-1] <= tol * s[0]:
        raise NotSeparatingError("coefficient matrix is singular")
    p = s**2 / np.sum(s**2)
    basis = np.kron(u, wh.T)  # column j*d+k is a_j (x) b_k with b = conj(W)
    ratio = np.outer(p, 1 / p).reshape(-1)
    swap = _swap_indices(d)
    # antilinear operators in this basis: B D B^T with D[(kj), (jk)]
    dj = np.zeros((d * d, d * d))
    dj[swap, np.arange(d * d)] = 1.0
    ds = dj * np.sqrt(ratio)[None, :]
    j = AntiOp(basis @ dj @ basis.T)
    s_op = AntiOp(basis @ ds @ basis.T)
    delta = basis @ np.diag(ratio) @ basis.conj().T
    return ModularTriple(s_op, PositiveOp((delta + delta.conj().T) / 2), j)


def modular_involution_closed_form(psi: BipartiteVector) -> AntiOp:
    """``S`` from ``X -> (c^dag)^{-1} X^dag c`` on coefficient matrices ``X = A c``."""
    c = psi.coeffs
    d = psi.dimA
    cinv_h = np.linalg.inv(c).conj().T
    swap = np.eye(d * d)[_swap_indices(d)]
    # vec(P Z Q) = kron(P, Q^T) vec(Z) and vec(Z^T) = swap vec(Z)
    return AntiOp(np.kron(cinv_h, c.T) @ swap)


def modular_commutative(epsilons: Sequence[complex], tol: float = DEFAULT_TOL) -> ModularTriple:
    """Modular objects of a commutative algebra: ``S = J`` with ``S e_k = eps_k e_k``, ``Delta = 1``.

    Raises:
        NotUnimodularError: if some ``|eps_k| != 1``.
    """
    eps = np.asarray(epsilons, dtype=complex)
    if np.any(np.abs(np.abs(eps) - 1) > tol):
        raise NotUnimodularError("all eps_k must have modulus one")
    s = AntiOp(np.diag(eps))
    return ModularTriple(s, PositiveOp(np.eye(len(eps))), s)


def commutative_midpoint(eps1: Sequence[complex], eps2: Sequence[complex], tol: float = DEFAULT_TOL) -> ModularTriple:
    """Solve ``S_1 S = S S_2`` for commutative triples.

    With ``eps = exp(i s)`` the condition is ``s = (s1 + s2) / 2 mod pi``;
    the representative with the principal angles is returned.
    """
    a1 = np.angle(np.asarray(eps1, dtype=complex))
    a2 = np.angle(np.asarray(eps2, dtype=complex))
    return modular_commutative(np.exp(0.5j * (a1 + a2)), tol)


def modular_geomean(s1: ModularTriple, s2: ModularTriple, tol: float = DEFAULT_TOL) -> ModularTriple:
    """Triple ``S`` with a common ``J`` solving ``S_1 S = S S_2``.

    Writing ``S_k = J |S_k|`` with ``|S_k| = Delta_k^{1/2}`` the relation
    becomes ``|S| |S_1|^{-1} |S| = |S_2|``, so ``|S| = |S_1| # |S_2|``. For
    commuting ``Delta_1, Delta_2`` this gives ``Delta = Delta_1 # Delta_2``.

    Raises:
        IncompatibleError: if the two triples have different conjugations.
    """
    if s1.j.mat.shape != s2.j.mat.shape or np.max(np.abs(s1.j.mat - s2.j.mat)) > tol:
        raise IncompatibleError("the triples must share the modular conjugation")
    modulus = geometric_mean(s1.delta.power(0.5), s2.delta.power(0.5))
    s = compose(s1.j, modulus)
    delta = modulus.mat @ modulus.mat
    return ModularTriple(s, PositiveOp((delta + delta.conj().T) / 2), s1.j)


def triple_from_delta(j: AntiOp, delta) -> ModularTriple:
    """Triple ``(J Delta^{1/2}, Delta, J)``; needs ``J Delta J = Delta^{-1}``."""
    delta = as_positive(delta)
    return ModularTriple(compose(j, delta.power(0.5)), delta, j)
