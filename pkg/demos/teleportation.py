"""Teleportation and entanglement swapping through antilinear maps.

Run with ``python demos/teleportation.py``.
"""
import numpy as np

from antilinear import epr_teleport as ept
from antilinear import sampling as smp

rng = np.random.default_rng(11)
bell = ept.bell_basis()

# Projecting onto each Bell vector leaves a scaled copy of the input.
vin = smp.random_vector(2, rng)
vin /= np.linalg.norm(vin)
state = ept.product_state(vin, bell[0])
for k, b in enumerate(bell):
    m = ept.measure_project(b, state, 0)
    t = ept.teleport_map(bell[0], b)
    print(f"branch {k}: probability {m.probability:.3f}, remainder == t(v): {np.allclose(m.remainder, t(vin))}")

# With less entangled resources the trace norm of the map drops below 1.
for p in (0.5, 0.8, 0.95):
    phi = ept.BipartiteVector(np.diag(np.sqrt([p, 1 - p])))
    print(f"resource weight {p}: fidelity {ept.teleport_fidelity(phi, bell[0]):.4f}")

# Swapping: two Bell pairs and a Bell projection give a Bell pair on the outer legs.
out = ept.entanglement_swap(bell[0], bell[0], bell[0])
print("\nswap output coefficients:\n", np.round(out.coeffs, 4))
