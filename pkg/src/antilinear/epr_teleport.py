"""Antilinear maps carried by bipartite vectors and teleportation.

A vector ``psi = sum c_jk e_j (x) f_k`` in ``H^A (x) H^B`` is stored as its
coefficient matrix ``c`` (row-major vectorisation ``index = j * dimB + k``).
It defines the antilinear map ``s^{ba}: H^A -> H^B`` with
``(|f><f| (x) 1) psi = f (x) s^{ba} f`` for unit ``f``, and
``s^{ab} = (s^{ba})^dag``. Products of two such maps are the linear
teleportation maps.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from antilinear.core import (
    DEFAULT_TOL,
    AntiMap,
    AntiOp,
    LinMap,
    LinOp,
    compose,
)
from antilinear.errors import DecompositionError, DimError


@dataclass(frozen=True, eq=False)
class BipartiteVector:
    """Vector in ``C^dimA (x) C^dimB`` given by its coefficient matrix."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 2:
            raise DimError("coefficients must form a matrix")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def dimA(self) -> int:
        return self.coeffs.shape[0]

    @property
    def dimB(self) -> int:
        return self.coeffs.shape[1]

    @classmethod
    def from_vector(cls, vec, dimA: int, dimB: int) -> "BipartiteVector":
        return cls(np.asarray(vec, dtype=complex).reshape(dimA, dimB))

    @classmethod
    def maximally_entangled(cls, dim: int) -> "BipartiteVector":
        return cls(np.eye(dim) / np.sqrt(dim))

    def vector(self) -> np.ndarray:
        return self.coeffs.reshape(-1)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def schmidt(self, tol: float = DEFAULT_TOL):
        """Schmidt coefficients and vectors ``psi = sum s_j a_j (x) b_j``.

        Returns ``(s, a, b)`` with ``a`` and ``b`` holding the vectors as
        columns, restricted to the numerical rank.
        """
        u, s, wh = np.linalg.svd(self.coeffs)
        r = int(np.sum(s > tol * max(s[0], np.finfo(float).tiny))) if s.size else 0
        return s[:r], u[:, :r], wh[:r].T


def smap_ba(psi: BipartiteVector) -> AntiMap:
    """``s^{ba}: H^A -> H^B`` with matrix ``c^T``."""
    return _anti(psi.coeffs.T)


def smap_ab(psi: BipartiteVector) -> AntiMap:
    """``s^{ab} = (s^{ba})^dag: H^B -> H^A`` with matrix ``c``."""
    return _anti(psi.coeffs)


def _anti(mat) -> AntiMap:
    mat = np.asarray(mat)
    return AntiOp(mat) if mat.shape[0] == mat.shape[1] else AntiMap(mat)


def _lin(mat) -> LinMap:
    mat = np.asarray(mat)
    return LinOp(mat) if mat.shape[0] == mat.shape[1] else LinMap(mat)


def reduced_densities(psi: BipartiteVector) -> tuple[LinOp, LinOp]:
    """``rho^A = s^{ab} s^{ba}`` and ``rho^B = s^{ba} s^{ab}``."""
    return compose(smap_ab(psi), smap_ba(psi)), compose(smap_ba(psi), smap_ab(psi))


def partial_trace(rho: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Partial trace of a density matrix over all factors not in ``keep``."""
    dims = list(dims)
    n = len(dims)
    t = np.asarray(rho).reshape(dims + dims)
    keep = sorted(keep)
    trace_out = [i for i in range(n) if i not in keep]
    for offset, i in enumerate(trace_out):
        ax = i - offset
        cur = t.ndim // 2
        t = np.trace(t, axis1=ax, axis2=ax + cur)
    k = int(np.prod([dims[i] for i in keep]))
    return t.reshape(k, k)


def jmaps(psi: BipartiteVector, tol: float = DEFAULT_TOL) -> tuple[AntiMap, AntiMap]:
    """Partial isometries ``(j^{ba}, j^{ab})`` of the polar decomposition.

    ``s^{ba} = j^{ba} sqrt(rho^A) = sqrt(rho^B) j^{ba}`` and
    ``j^{ab} = (j^{ba})^dag``. With ``c = U S W^H`` the matrix of ``j^{ba}``
    is ``conj(W) U^T`` restricted to the support.
    """
    u, s, wh = np.linalg.svd(psi.coeffs)
    r = int(np.sum(s > tol * max(s[0], np.finfo(float).tiny))) if s.size else 0
    jba = wh[:r].T @ u[:, :r].T
    return _anti(jba), _anti(jba.T)


def twisted_product(t_ab: AntiMap, t_ba: AntiMap) -> AntiOp:
    """Antilinear operator ``f_A (x) f_B -> (t_ab f_B) (x) (t_ba f_A)`` on ``H^A (x) H^B``.

    Raises:
        DimError: unless ``t_ab: B -> A`` and ``t_ba: A -> B``.
    """
    if not (t_ab.antilinear and t_ba.antilinear):
        raise TypeError("twisted products are formed from antilinear maps")
    da, db = t_ab.dim_out, t_ab.dim_in
    if t_ba.dim_in != da or t_ba.dim_out != db:
        raise DimError("t_ab must map B -> A and t_ba must map A -> B")
    m = np.einsum("lk,mj->lmjk", t_ab.mat, t_ba.mat)
    return AntiOp(m.reshape(da * db, da * db))


def tensor(x, y):
    """Tensor product of two maps of the same kind."""
    if x.antilinear != y.antilinear:
        raise TypeError("tensor factors must be of the same kind")
    m = np.kron(x.mat, y.mat)
    return _anti(m) if x.antilinear else _lin(m)


class PhiMap:
    """Superoperator ``X -> sum_j s_j X^dag s_j^dag`` for a list of antilinear maps."""

    def __init__(self, maps: Sequence[AntiMap]):
        self.maps = tuple(maps)

    def __call__(self, x) -> LinOp:
        xm = np.asarray(getattr(x, "mat", x))
        out = 0
        for s in self.maps:
            out = out + s.mat @ xm.T @ s.mat.conj().T
        return LinOp(out)


def phi_maps(rho, decomposition: Sequence[BipartiteVector], tol: float = DEFAULT_TOL) -> tuple[PhiMap, PhiMap]:
    """Maps ``(Phi^{ba}, Phi^{ab})`` with ``Tr (X^A (x) X^B) rho = Tr X^B Phi^{ba}(X^A)``.

    ``Phi^{ba}(X) = sum_j s_j^{ba} X^dag s_j^{ab}`` for ``rho = sum |psi_j><psi_j|``.

    Raises:
        DecompositionError: if the vectors do not reproduce ``rho``.
    """
    r = np.asarray(getattr(rho, "mat", rho), dtype=complex)
    acc = np.zeros_like(r)
    for psi in decomposition:
        v = psi.vector()
        if v.shape[0] != r.shape[0]:
            raise DecompositionError("vector and density dimensions differ")
        acc += np.outer(v, v.conj())
    if np.max(np.abs(acc - r)) > tol * max(1.0, np.max(np.abs(r))):
        raise DecompositionError("decomposition does not reproduce rho")
    return PhiMap([smap_ba(p) for p in decomposition]), PhiMap([smap_ab(p) for p in decomposition])


def teleport_map(phi_bc: BipartiteVector, psi_ab: BipartiteVector) -> LinMap:
    """Teleportation map ``t^{ca} = s_phi^{cb} o s_psi^{ba}`` from ``H^A`` to ``H^C``."""
    if phi_bc.dimA != psi_ab.dimB:
        raise DimError("the shared B dimensions differ")
    return compose(smap_ba(phi_bc), smap_ba(psi_ab))


def _psd_sqrt(a: np.ndarray) -> np.ndarray:
    # eigenvalues at roundoff level are zero; their square roots would be ~1e-8
    w, v = np.linalg.eigh((a + a.conj().T) / 2)
    floor = 10 * a.shape[0] * np.finfo(float).eps * max(float(np.max(np.abs(w), initial=0.0)), 1e-300)
    w = np.where(w > floor, w, 0.0)
    return (v * np.sqrt(w)) @ v.conj().T


def fidelity(rho, sigma) -> float:
    """``Tr (sqrt(rho) sigma sqrt(rho))^{1/2}`` for positive semi-definite inputs.

    Computed as the trace norm of ``sqrt(rho) sqrt(sigma)``. Eigenvalues at
    roundoff level are treated as zero, which keeps rank-deficient inputs
    accurate to ~1e-15 instead of ~1e-8.
    """
    r = np.asarray(getattr(rho, "mat", rho), dtype=complex)
    s = np.asarray(getattr(sigma, "mat", sigma), dtype=complex)
    return float(np.sum(np.linalg.svd(_psd_sqrt(r) @ _psd_sqrt(s), compute_uv=False)))


def teleport_fidelity(phi_bc: BipartiteVector, psi_ab: BipartiteVector, tol: float = 1e-8) -> float:
    """Trace norm of the teleportation map.

    It equals the fidelity of the B-reductions of the two unit vectors.
    """
    for v in (phi_bc, psi_ab):
        if abs(v.norm() - 1) > tol:
            raise ValueError("teleport_fidelity expects unit vectors")
    return float(np.sum(np.linalg.svd(teleport_map(phi_bc, psi_ab).mat, compute_uv=False)))


def chain_map(links: Sequence[BipartiteVector]):
    """Composition ``s^{n+1,n} o ... o s^{2,1}`` of the links' s-maps.

    Linear for an even number of links and antilinear for an odd number.
    """
    if not links:
        raise ValueError("need at least one link")
    out = smap_ba(links[0])
    for link in links[1:]:
        if link.dimA != out.dim_out:
            raise DimError("adjacent links do not share a dimension")
        out = compose(smap_ba(link), out)
    return out


def entanglement_swap(phi23: BipartiteVector, phi45: BipartiteVector, psi34: BipartiteVector) -> BipartiteVector:
    """Vector ``(s^{2,3} (x) s^{5,4}) psi^{3,4}`` on ``H^2 (x) H^5``.

    This is the (unnormalised) 2-5 factor left after projecting
    ``phi23 (x) phi45`` onto ``psi34``.
    """
    if phi23.dimB != psi34.dimA or psi34.dimB != phi45.dimA:
        raise DimError("shared dimensions do not match")
    s23 = smap_ab(phi23)
    s54 = smap_ba(phi45)
    return BipartiteVector(s23.mat @ np.conj(psi34.coeffs) @ s54.mat.T)


class Measurement(NamedTuple):
    """Post-measurement state, probability and the factor left after the pair."""

    state: np.ndarray
    probability: float
    remainder: np.ndarray


def measure_project(basis_vector: BipartiteVector, state: np.ndarray, position: int) -> Measurement:
    """Apply ``|psi><psi| (x) 1`` on the factor pair ``(position, position+1)``.

    ``state`` is a tensor with one axis per subsystem. The basis vector is
    normalised first so that the operator is a projection.

    Returns:
        ``Measurement(state, probability, remainder)`` where ``remainder``
        holds ``<psi|`` applied to the state (axes of the other factors in
        their original order) and ``state`` the projected tensor.
    """
    state = np.asarray(state, dtype=complex)
    i = position
    if i < 0 or i + 1 >= state.ndim:
        raise DimError("position out of range")
    c = basis_vector.coeffs
    if state.shape[i : i + 2] != c.shape:
        raise DimError("basis vector does not match the factor dimensions")
    c = c / np.linalg.norm(c)
    rem = np.tensordot(np.conj(c), state, axes=([0, 1], [i, i + 1]))
    post = np.tensordot(c, rem, axes=0)
    post = np.moveaxis(post, [0, 1], [i, i + 1])
    total = np.vdot(state, state).real
    prob = float(np.vdot(post, post).real / total) if total else 0.0
    return Measurement(post, prob, rem)


def product_state(*factors) -> np.ndarray:
    """Tensor product of vectors and coefficient matrices as one tensor."""
    out = np.ones(())
    for f in factors:
        arr = f.coeffs if isinstance(f, BipartiteVector) else np.asarray(f, dtype=complex)
        out = np.multiply.outer(out, arr)
    return out


def bell_basis() -> list[BipartiteVector]:
    """The four two-qubit Bell vectors."""
    s = 1 / np.sqrt(2)
    return [
        BipartiteVector([[s, 0], [0, s]]),
        BipartiteVector([[s, 0], [0, -s]]),
        BipartiteVector([[0, s], [s, 0]]),
        BipartiteVector([[0, s], [-s, 0]]),
    ]


def inner(phi: BipartiteVector, psi: BipartiteVector) -> complex:
    """``<phi, psi>`` of two bipartite vectors."""
    return complex(np.vdot(phi.coeffs, psi.coeffs))


__all__ = [
    "BipartiteVector",
    "Measurement",
    "PhiMap",
    "bell_basis",
    "chain_map",
    "entanglement_swap",
    "fidelity",
    "jmaps",
    "measure_project",
    "partial_trace",
    "phi_maps",
    "product_state",
    "reduced_densities",
    "smap_ab",
    "smap_ba",
    "teleport_fidelity",
    "teleport_map",
    "tensor",
    "twisted_product",
]
