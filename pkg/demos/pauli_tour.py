"""A short tour of the antilinear Pauli operators.

Run with ``python demos/pauli_tour.py``.
"""
import numpy as np

from antilinear import core
from antilinear.decomp import classify

basis = core.pauli_basis()

# Each tau_k is antilinear. Its square is -1 for tau_0 and +1 otherwise.
for k, t in enumerate(basis.tau):
    sq = core.compose(t, t)
    print(f"tau_{k}: class={classify(t).value:15s} tau^2 = {np.real_if_close(sq.mat[0, 0]):+.0f} * 1")

# The canonical form on the antilinear operators is indefinite.
print("\nGram matrix of the tau basis:")
print(np.real_if_close(core.gram_matrix(basis.tau)))
print("signature in dim 2:", core.signature(2))
print("signature in dim 3:", core.signature(3))

# Antilinearity in action: tau_0 (i v) = -i tau_0 v.
v = np.array([1.0, 2.0j])
lhs = basis.tau[0](1j * v)
rhs = -1j * basis.tau[0](v)
print("\ntau_0(i v) == -i tau_0(v):", np.allclose(lhs, rhs))

# The spin flip is i tau_0 and still squares to -1.
flip = core.spin_flip()
print("spin flip squared:", np.real_if_close(core.compose(flip, flip).mat).tolist())
