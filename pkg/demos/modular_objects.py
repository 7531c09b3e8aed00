"""Modular objects of bipartite vectors and geometric means.

Run with ``python demos/modular_objects.py``.
"""
import numpy as np

from antilinear import core, modular
from antilinear import sampling as smp
from antilinear.epr_teleport import BipartiteVector, reduced_densities

rng = np.random.default_rng(3)

# Geometric mean of two positive matrices: C A^{-1} C = B.
a, b = smp.random_positive(3, rng), smp.random_positive(3, rng)
c = modular.geometric_mean(a, b)
print("C A^-1 C == B:", np.allclose(c.mat @ np.linalg.solve(a.mat, c.mat), b.mat))

# S = J Delta^{1/2} for a full-rank bipartite vector.
psi = BipartiteVector(smp.random_matrix(2, rng=rng))
t = modular.modular_from_bipartite(psi)
ra, rb = reduced_densities(psi)
print("\nDelta spectrum:", np.round(np.linalg.eigvalsh(t.delta.mat), 4))
print("Delta == rho_A (x) rho_B^-1:", np.allclose(t.delta.mat, np.kron(ra.mat, np.linalg.inv(rb.mat))))
print("S == J Delta^1/2:", core.compose(t.j, t.delta.power(0.5)).allclose(t.s, 1e-9))
print("S^2 == 1:", np.allclose(core.compose(t.s, t.s).mat, np.eye(4)))

# A maximally entangled vector has trivial modular operator.
me = modular.modular_from_bipartite(BipartiteVector.maximally_entangled(2))
print("\nmaximally entangled: Delta == 1:", np.allclose(me.delta.mat, np.eye(4)))
