"""Random instances used by the tests, demos and acceptance suite."""
from __future__ import annotations

import numpy as np
from scipy.stats import unitary_group

from antilinear.core import AntiOp, LinOp


def _rng(rng) -> np.random.Generator:
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


def random_vector(dim: int, rng=None, normalize: bool = True) -> np.ndarray:
    rng = _rng(rng)
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v) if normalize else v


def random_matrix(rows: int, cols: int | None = None, rng=None) -> np.ndarray:
    rng = _rng(rng)
    cols = rows if cols is None else cols
    return rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))


def random_unitary(dim: int, rng=None) -> np.ndarray:
    return unitary_group.rvs(dim, random_state=_rng(rng)) if dim > 1 else np.exp(
        2j * np.pi * _rng(rng).random((1, 1))
    )


def random_linop(dim: int, rng=None) -> LinOp:
    return LinOp(random_matrix(dim, rng=rng))


def random_antiop(dim: int, rng=None) -> AntiOp:
    return AntiOp(random_matrix(dim, rng=rng))


def random_antiunitary(dim: int, rng=None) -> AntiOp:
    return AntiOp(random_unitary(dim, rng))


def random_conjugation(dim: int, rng=None) -> AntiOp:
    """``U conj(.)`` transported by a random unitary: matrix ``U U^T``."""
    u = random_unitary(dim, rng)
    return AntiOp(u @ u.T)


def random_skew_conjugation(dim: int, rng=None) -> AntiOp:
    """Random skew conjugation; ``dim`` must be even."""
    if dim % 2:
        raise ValueError("skew conjugations exist only in even dimension")
    u = random_unitary(dim, rng)
    block = np.kron(np.eye(dim // 2), np.array([[0, -1], [1, 0]]))
    return AntiOp(u @ block @ u.T)


def random_positive(dim: int, rng=None, cond: float = 10.0) -> LinOp:
    """Random positive definite matrix with eigenvalues in ``[1/cond, 1]``."""
    rng = _rng(rng)
    u = random_unitary(dim, rng)
    w = np.exp(rng.uniform(-np.log(cond), 0.0, size=dim))
    return LinOp((u * w) @ u.conj().T)


def random_hermitian(dim: int, rng=None) -> LinOp:
    a = random_matrix(dim, rng=rng)
    return LinOp((a + a.conj().T) / 2)


def random_normal_antiop(dim: int, rng=None) -> AntiOp:
    """Random normal antilinear operator ``Theta P`` with ``P`` commuting with ``Theta``.

    Built from random one- and two-dimensional blocks in a random
    orthonormal basis, so every block type occurs.
    """
    rng = _rng(rng)
    blocks = []
    left = dim
    while left:
        if left >= 2 and rng.random() < 0.5:
            z = rng.uniform(0.2, 2.0) * np.exp(1j * rng.uniform(0.05, np.pi - 0.05))
            blocks.append(np.array([[0, z], [np.conj(z), 0]]))
            left -= 2
        else:
            blocks.append(np.array([[rng.uniform(0.0, 2.0)]]))
            left -= 1
    d = np.zeros((dim, dim), dtype=complex)
    i = 0
    for b in blocks:
        n = b.shape[0]
        d[i : i + n, i : i + n] = b
        i += n
    u = random_unitary(dim, rng)
    return AntiOp(u @ d @ u.T)
