"""Structure theory of antilinear operators.

Polar decompositions, the block canonical form of normal antilinear
operators, classification of (skew) conjugations and involutions, real
fixed spaces and orthogonal families of conjugations.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from antilinear.core import (
    DEFAULT_TOL,
    AntiOp,
    LinOp,
    _cluster,
    compose,
    eigen_structure,
    funm_hermitian,
    is_normal,
    operator_norm,
    pauli_basis,
)
from antilinear.errors import (
    DecompositionError,
    NotInvolutionError,
    NotNormalError,
    NotUnitaryError,
    UnsupportedDimError,
)


@dataclass(frozen=True)
class PolarParts:
    """Polar factors of an antilinear operator.

    ``theta = left_antiunitary o abs_right = modulus o right_antiunitary``
    with ``abs_right = sqrt(theta^dag theta)`` and
    ``modulus = sqrt(theta theta^dag)``.
    """

    left_antiunitary: AntiOp
    modulus: LinOp
    right_antiunitary: AntiOp
    abs_right: LinOp


def polar_anti(theta: AntiOp, tol: float = DEFAULT_TOL) -> PolarParts:
    """Polar decomposition via the SVD ``M = U S V^H``.

    Both antiunitary factors have matrix ``U V^H``. For singular ``theta`` the
    compact SVD yields partial isometries supported on the range of
    ``theta^dag theta``.
    """
    u, s, vh = np.linalg.svd(theta.mat)
    r = int(np.sum(s > tol * max(s[0], np.finfo(float).tiny))) if s.size else 0
    w = u[:, :r] @ vh[:r]
    v = vh.conj().T
    # theta^dag theta = conj(V) S^2 V^T and theta theta^dag = U S^2 U^H
    abs_right = LinOp((v.conj() * s) @ v.T)
    modulus = LinOp((u * s) @ u.conj().T)
    return PolarParts(AntiOp(w), modulus, AntiOp(w), abs_right)


@dataclass(frozen=True)
class WhvForm:
    """Block canonical form of a normal antilinear operator.

    In the orthonormal basis given by the columns of ``basis`` the operator
    has 1x1 blocks ``r >= 0`` followed by 2x2 blocks ``[[0, z], [conj(z), 0]]``.
    The basis columns are ordered the same way.
    """

    blocks_1d: tuple
    blocks_2d: tuple
    basis: np.ndarray

    def block_matrix(self) -> np.ndarray:
        n1 = len(self.blocks_1d)
        dim = n1 + 2 * len(self.blocks_2d)
        d = np.zeros((dim, dim), dtype=complex)
        d[np.arange(n1), np.arange(n1)] = self.blocks_1d
        for i, z in enumerate(self.blocks_2d):
            k = n1 + 2 * i
            d[k, k + 1] = z
            d[k + 1, k] = np.conj(z)
        return d

    def reassemble(self) -> AntiOp:
        """Operator with matrix ``B D B^T``, where ``B`` is the basis."""
        b = self.basis
        return AntiOp(b @ self.block_matrix() @ b.T)


def _orthonormal_complement(q: np.ndarray, used: np.ndarray) -> np.ndarray:
    """Orthonormal basis of span(q) minus span(used) (both orthonormal)."""
    r = q - used @ (used.conj().T @ q)
    u, s, _ = np.linalg.svd(r, full_matrices=False)
    return u[:, : q.shape[1] - used.shape[1]]


def _real_fixed_basis(op: AntiOp, space: np.ndarray, tol: float) -> np.ndarray:
    """Fixed vectors of an antilinear involution ``op`` on ``span(space)``.

    Candidates ``x + op x`` are fixed for every ``x``. A pivoted QR of their
    real form picks ``dim`` real-independent ones.
    """
    m = space.shape[1]
    cands = []
    for k in range(m):
        for x in (space[:, k], 1j * space[:, k]):
            cands.append(x + op.mat @ np.conj(x))
    c = np.array(cands).T
    real = np.vstack([c.real, c.imag])
    _, rr, piv = scipy.linalg.qr(real, pivoting=True, mode="economic")
    diag = np.abs(np.diag(rr))
    if m and diag[m - 1] <= tol * max(diag[0], 1.0):
        raise DecompositionError("fixed space has too small real dimension")
    chosen = real[:, piv[:m]]
    q, _ = np.linalg.qr(chosen)
    n = space.shape[0]
    return q[:n] + 1j * q[n:]


def whv_decompose(theta: AntiOp, tol: float = DEFAULT_TOL) -> WhvForm:
    """Block canonical form of a normal antilinear operator.

    The eigenspaces ``H_mu`` of the normal linear operator ``theta^2`` are
    processed one by one. For real ``mu >= 0`` the operator ``theta/sqrt(mu)``
    is a conjugation on ``H_mu`` and its fixed vectors give 1x1 blocks. For
    other ``mu`` pairs ``(f, theta f / conj(z))`` with ``z^2 = mu`` give 2x2
    blocks.

    Raises:
        NotNormalError: if ``theta`` is not normal within ``tol``.
    """
    if not is_normal(theta, tol):
        raise NotNormalError("the block form requires a normal operator")
    d = theta.dim
    nrm = operator_norm(theta)
    if nrm == 0.0:
        return WhvForm((0.0,) * d, (), np.eye(d, dtype=complex))
    atol = max(tol, 1e-12) * nrm**2
    sq = compose(theta, theta).mat
    tri, q = scipy.linalg.schur(sq, output="complex")
    mus = np.diag(tri)
    ones, ones_basis, twos, twos_basis = [], [], [], []
    for idx in _cluster(mus, 1e3 * atol):
        mu = complex(np.mean(mus[idx]))
        space = q[:, idx]
        real = abs(mu.imag) <= 1e3 * atol
        # compare radii, not squares: |mu| ~ 1e-6 is still a radius of 1e-3
        if np.sqrt(abs(mu)) <= 1e3 * max(tol, 1e-12) * nrm:
            ones += [0.0] * len(idx)
            ones_basis.append(space)
        elif real and mu.real > 0:
            r = np.sqrt(mu.real)
            fixed = _real_fixed_basis(AntiOp(theta.mat / r), space, 1e-8)
            ones += [r] * len(idx)
            ones_basis.append(fixed)
        elif real:
            z = 1j * np.sqrt(-mu.real)
            rest = space
            while rest.shape[1]:
                f1 = rest[:, 0]
                f2 = theta.mat @ np.conj(f1) / np.conj(z)
                pair = np.column_stack([f1, f2])
                twos.append(z)
                twos_basis.append(pair)
                rest = _orthonormal_complement(rest, pair)
        elif mu.imag > 0:
            # principal root: Re z > 0 and Im z > 0 fix the sign and the
            # z <-> conj(z) ambiguity; the conj(mu) cluster is the partner.
            z = complex(np.sqrt(mu))
            f2 = theta.mat @ np.conj(space) / np.conj(z)
            for k in range(len(idx)):
                twos.append(z)
                twos_basis.append(np.column_stack([space[:, k], f2[:, k]]))
    basis = np.column_stack(ones_basis + twos_basis) if d else np.zeros((0, 0))
    form = WhvForm(tuple(ones), tuple(twos), basis)
    if basis.shape != (d, d):
        raise DecompositionError("eigenspace bookkeeping failed; increase tol")
    err = np.max(np.abs(form.reassemble().mat - theta.mat))
    if err > 1e3 * max(tol, 1e-12) * max(nrm, 1.0):
        raise DecompositionError(f"reassembly error {err:.3g} too large")
    return form


class OpClass(str, enum.Enum):
    CONJUGATION = "Conjugation"
    SKEW_CONJUGATION = "SkewConjugation"
    ANTIUNITARY = "Antiunitary"
    INVOLUTION = "Involution"
    SKEW_INVOLUTION = "SkewInvolution"
    HERMITIAN = "HermitianAnti"
    SKEW_HERMITIAN = "SkewHermitianAnti"
    NORMAL = "Normal"
    GENERAL = "General"


def classify(theta: AntiOp, tol: float = DEFAULT_TOL) -> OpClass:
    """Most specific class of ``theta``, testing labels in declaration order."""
    m = theta.mat
    d = theta.dim
    eye = np.eye(d)
    scale = max(1.0, operator_norm(theta)) ** 2

    def small(a, s=1.0):
        return bool(np.max(np.abs(a), initial=0.0) <= tol * s)

    unitary = small(m @ m.conj().T - eye)
    square = m @ np.conj(m)
    plus, minus = small(square - eye, scale), small(square + eye, scale)
    if unitary and plus:
        return OpClass.CONJUGATION
    if unitary and minus:
        return OpClass.SKEW_CONJUGATION
    if unitary:
        return OpClass.ANTIUNITARY
    if plus:
        return OpClass.INVOLUTION
    if minus:
        return OpClass.SKEW_INVOLUTION
    if small(m - m.T, max(1.0, operator_norm(theta))):
        return OpClass.HERMITIAN
    if small(m + m.T, max(1.0, operator_norm(theta))):
        return OpClass.SKEW_HERMITIAN
    if is_normal(theta, tol):
        return OpClass.NORMAL
    return OpClass.GENERAL


@dataclass(frozen=True)
class InvolutionParts:
    """``S = modulus o conj_part = conj_part o modulus^{-1}``."""

    modulus: LinOp
    conj_part: AntiOp
    kind: str


def involution_polar(s: AntiOp, tol: float = DEFAULT_TOL) -> InvolutionParts:
    """Split an (skew) involution into ``|S| = (S S^dag)^{1/2}`` and a (skew) conjugation.

    Raises:
        NotInvolutionError: if ``S^2`` is neither ``1`` nor ``-1``.
    """
    m = s.mat
    square = m @ np.conj(m)
    eye = np.eye(s.dim)
    scale = tol * max(1.0, operator_norm(s)) ** 2
    if np.max(np.abs(square - eye)) <= scale:
        kind = "involution"
    elif np.max(np.abs(square + eye)) <= scale:
        kind = "skew"
    else:
        raise NotInvolutionError("S^2 is neither 1 nor -1")
    mod = funm_hermitian(m @ m.conj().T, np.sqrt)
    theta = np.linalg.solve(mod, m)
    return InvolutionParts(LinOp(mod), AntiOp(theta), kind)


def is_diagonalizable(theta: AntiOp, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``theta`` has a basis of eigenvectors."""
    return eigen_structure(theta, tol).diagonalizable


def fixed_real_subspace(theta: AntiOp, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Real basis of ``{f : theta f = f}`` for a conjugation or involution.

    For a conjugation the returned vectors are orthonormal and their scalar
    products are real.

    Raises:
        NotInvolutionError: if ``theta`` is not a conjugation or involution.
    """
    cls = classify(theta, tol)
    if cls not in (OpClass.CONJUGATION, OpClass.INVOLUTION):
        raise NotInvolutionError(f"expected a conjugation or involution, got {cls.value}")
    d = theta.dim
    if cls is OpClass.CONJUGATION:
        basis = _real_fixed_basis(theta, np.eye(d, dtype=complex), 1e-8)
        return [basis[:, k] for k in range(d)]
    cands = []
    for k in range(d):
        for x in (np.eye(d)[k], 1j * np.eye(d)[k]):
            cands.append(x + theta.mat @ np.conj(x))
    c = np.array(cands).T
    real = np.vstack([c.real, c.imag])
    _, _, piv = scipy.linalg.qr(real, pivoting=True, mode="economic")
    return [c[:, p] for p in piv[:d]]


def unitary_as_two_conjugations(u: LinOp, tol: float = DEFAULT_TOL) -> tuple[AntiOp, AntiOp]:
    """Conjugations ``(theta1, theta2)`` with ``theta1 o theta2 = u``.

    With an eigenbasis ``u f_j = e_j f_j`` take ``theta2 f_j = f_j`` and
    ``theta1 f_j = e_j f_j``.

    Raises:
        NotUnitaryError: if ``u`` is not unitary.
    """
    m = u.mat
    if np.max(np.abs(m @ m.conj().T - np.eye(u.dim))) > tol:
        raise NotUnitaryError("input is not unitary")
    tri, q = scipy.linalg.schur(m, output="complex")
    eps = np.diag(tri)
    eps = eps / np.abs(eps)
    return AntiOp((q * eps) @ q.T), AntiOp(q @ q.T)


def orthogonal_conjugation_family(n: int) -> tuple[list[AntiOp], list[AntiOp]]:
    """Orthogonal (skew) conjugations in dimension ``2**n``.

    Tensor words in ``tau_0..tau_3`` are conjugations when they contain an
    even number of ``tau_0`` factors and skew conjugations otherwise.

    Raises:
        UnsupportedDimError: if ``n < 1``.
    """
    if n < 1:
        raise UnsupportedDimError("n must be at least 1")
    tau = [t.mat for t in pauli_basis().tau]
    conj, skew = [], []
    for word in itertools.product(range(4), repeat=n):
        m = np.ones((1, 1), dtype=complex)
        for j in word:
            m = np.kron(m, tau[j])
        (skew if word.count(0) % 2 else conj).append(AntiOp(m))
    return conj, skew
