"""Conjugations as points of the Lagrangian Grassmannian.

Acq-lines ``t -> exp(itH) theta0 exp(-itH)``, the discrete canonical 1-form,
the Maslov index of closed curves and the correspondence between
conjugations and maximal real subspaces.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from antilinear.core import DEFAULT_TOL, AntiOp, LinOp, as_vector, compose, funm_hermitian
from antilinear.decomp import OpClass, classify
from antilinear.errors import (
    CommutationError,
    NotClosedError,
    NotConjugationError,
    NotLagrangianError,
    SamplingTooCoarse,
)


@dataclass(frozen=True)
class AcqLine:
    """The line ``theta_t = exp(itH) theta0 exp(-itH) = exp(2itH) theta0``.

    The second form uses that ``theta0`` commutes with ``H``.
    """

    base: AntiOp
    generator: LinOp

    def sample(self, t: float) -> AntiOp:
        u = funm_hermitian(self.generator.mat, lambda w: np.exp(2j * t * w))
        return AntiOp(u @ self.base.mat)

    __call__ = sample

    def derivative(self, t: float) -> AntiOp:
        """Exact derivative ``2iH theta_t``."""
        return AntiOp(2j * self.generator.mat @ self.sample(t).mat)

    def curve(self, t0: float, t1: float, n: int, closed: bool = False) -> "ConjugationCurve":
        """``n`` samples on ``[t0, t1)`` when closed, on ``[t0, t1]`` otherwise."""
        ts = np.linspace(t0, t1, n, endpoint=not closed)
        return ConjugationCurve(tuple(self.sample(t) for t in ts), closed)


def make_acq_line(theta0: AntiOp, h: LinOp, tol: float = DEFAULT_TOL) -> AcqLine:
    """Validate and build an acq-line.

    Raises:
        NotConjugationError: if ``theta0`` is not a conjugation.
        CommutationError: if ``h`` is not Hermitian or does not commute with ``theta0``.
    """
    if classify(theta0, tol) is not OpClass.CONJUGATION:
        raise NotConjugationError("the base point must be a conjugation")
    hm = h.mat
    scale = tol * max(1.0, np.linalg.norm(hm, 2))
    if np.max(np.abs(hm - hm.conj().T)) > scale:
        raise CommutationError("the generator must be Hermitian")
    # h o theta0 = H M0 and theta0 o h = M0 conj(H)
    if np.max(np.abs(hm @ theta0.mat - theta0.mat @ np.conj(hm))) > scale:
        raise CommutationError("the generator does not commute with the base point")
    return AcqLine(theta0, h)


def quandle_check(a: AntiOp, mid: AntiOp, b: AntiOp, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``a o mid = mid o b``."""
    lhs = compose(a, mid).mat
    rhs = compose(mid, b).mat
    return bool(np.max(np.abs(lhs - rhs)) <= tol * max(1.0, np.max(np.abs(lhs))))


@dataclass(frozen=True)
class ConjugationCurve:
    """Ordered samples of a curve of conjugations.

    For a closed curve the last sample connects back to the first; the
    endpoint should not be repeated (a repeated endpoint is ignored).
    """

    samples: tuple
    closed: bool = True


def maslov_integral(curve: ConjugationCurve) -> float:
    """Discrete integral ``(1/2 pi i) sum Tr((theta_{i+1} - theta_i) o theta_i)``.

    Returns the real part; the imaginary part is a second order
    discretisation artefact.

    Raises:
        NotClosedError: for open curves.
    """
    if not curve.closed:
        raise NotClosedError("the Maslov index needs a closed curve")
    mats = [s.mat for s in curve.samples]
    if len(mats) > 1 and np.allclose(mats[0], mats[-1], atol=1e-12):
        mats = mats[:-1]
    total = 0.0j
    for i, m in enumerate(mats):
        nxt = mats[(i + 1) % len(mats)]
        # Tr(delta o theta) = Tr(delta conj(M))
        total += np.sum((nxt - m) * np.conj(m).T)
    return float((total / (2j * np.pi)).real)


def maslov_index(curve: ConjugationCurve, max_residual: float = 0.1) -> int:
    """Maslov index of a closed curve of conjugations.

    Raises:
        NotClosedError: for open curves.
        SamplingTooCoarse: if the integral is more than ``max_residual`` away
            from an integer.
    """
    value = maslov_integral(curve)
    k = round(value)
    if abs(value - k) > max_residual:
        raise SamplingTooCoarse(f"integral {value:.4f} is not close to an integer")
    return int(k)


def curve_length(line: AcqLine, t0: float, t1: float) -> float:
    """Hilbert-Schmidt length ``2 (t1 - t0) sqrt(Tr H^2)`` of an acq-line segment.

    The velocity ``2iH theta_t`` has constant Hilbert-Schmidt norm
    ``2 sqrt(Tr H^2)``.
    """
    if t1 < t0:
        raise ValueError("t1 must not be smaller than t0")
    hm = line.generator.mat
    return float(2 * (t1 - t0) * np.sqrt(np.real(np.trace(hm @ hm))))


def is_closed_line(line: AcqLine, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``theta_0 = theta_pi``, i.e. the spectrum of ``H`` is integral."""
    return bool(np.max(np.abs(line.sample(np.pi).mat - line.base.mat)) <= tol)


def conjugation_from_real_subspace(basis: Sequence, tol: float = DEFAULT_TOL) -> AntiOp:
    """The conjugation fixing every vector of a Lagrangian basis.

    For column matrix ``V`` the operator is ``V conj(V)^{-1}``.

    Raises:
        NotLagrangianError: if the vectors are dependent, not ``dim`` in
            number, or have non-real mutual scalar products.
    """
    v = np.column_stack([as_vector(b) for b in basis])
    d = v.shape[0]
    if v.shape[1] != d:
        raise NotLagrangianError(f"need {d} vectors, got {v.shape[1]}")
    gram = v.conj().T @ v
    if np.max(np.abs(gram.imag)) > tol * max(1.0, np.max(np.abs(gram))):
        raise NotLagrangianError("scalar products are not real")
    if np.linalg.cond(v) > 1e12:
        raise NotLagrangianError("vectors are dependent")
    return AntiOp(np.linalg.solve(np.conj(v).T, v.T).T)
