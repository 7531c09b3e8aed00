"""Block canonical forms, polar decompositions and conjugations.

Run with ``python demos/block_forms.py``.
"""
import numpy as np

from antilinear import core, decomp
from antilinear import sampling as smp

rng = np.random.default_rng(7)

# A normal antilinear operator splits into 1x1 and 2x2 blocks.
theta = smp.random_normal_antiop(5, rng)
form = decomp.whv_decompose(theta)
print("1x1 blocks:", np.round(form.blocks_1d, 4))
print("2x2 blocks:", np.round(form.blocks_2d, 4))
print("reassembled matches:", form.reassemble().allclose(theta, 1e-9))

# Polar decomposition: an antiunitary times a positive modulus.
gen = smp.random_antiop(3, rng)
parts = decomp.polar_anti(gen)
print("\nmodulus eigenvalues:", np.round(np.linalg.eigvalsh(parts.modulus.mat), 4))
print("left factor class:", decomp.classify(parts.left_antiunitary).value)

# Every unitary is a product of two conjugations.
u = core.LinOp(smp.random_unitary(3, rng))
t1, t2 = decomp.unitary_as_two_conjugations(u)
print("\ntheta1, theta2 classes:", decomp.classify(t1).value, decomp.classify(t2).value)
print("theta1 o theta2 == u:", core.compose(t1, t2).allclose(u, 1e-9))

# A conjugation fixes a real subspace of full real dimension.
c = smp.random_conjugation(3, rng)
real = decomp.fixed_real_subspace(c)
print("fixed vectors:", len(real), "all fixed:", all(np.allclose(c(x), x) for x in real))
