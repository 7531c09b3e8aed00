"""Lines of conjugations and the Maslov index of closed loops.

Run with ``python demos/maslov_loop.py``.
"""
import numpy as np

from antilinear import core, symplectic

base = core.standard_conjugation(3)

# theta_t = exp(i t H) theta exp(-i t H) closes up at t = pi for integer H.
for diag in ([1, 0, 0], [1, 1, 0], [2, -1, 0], [3, 0, -3]):
    line = symplectic.make_acq_line(base, core.LinOp(np.diag(diag)))
    curve = line.curve(0, np.pi, 400, closed=True)
    value = symplectic.maslov_integral(curve)
    index = symplectic.maslov_index(curve)
    length = symplectic.curve_length(line, 0, np.pi)
    print(f"H = diag{tuple(diag)}: integral {value:+.4f} index {index:+d} length {length:.4f}")

# Too few samples are reported instead of silently rounded.
line = symplectic.make_acq_line(core.standard_conjugation(1), core.LinOp([[5.0]]))
try:
    symplectic.maslov_index(line.curve(0, np.pi, 20, closed=True))
except symplectic.SamplingTooCoarse as exc:
    print("\ncoarse loop:", exc)

# Points on a line satisfy the quandle relation with their midpoint.
line = symplectic.make_acq_line(base, core.LinOp(np.diag([1.0, 2.0, 0.5])))
print("quandle relation:", symplectic.quandle_check(line(0.2), line(0.7), line(1.2)))
