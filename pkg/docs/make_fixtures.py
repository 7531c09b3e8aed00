"""Regenerate the JSON fixtures in docs/fixtures/ (deterministic)."""
from pathlib import Path

import numpy as np

from antilinear import core, symplectic
from antilinear.decomp import whv_decompose
from antilinear.epr_teleport import BipartiteVector, bell_basis
from antilinear.jsonio import (
    bipartite_to_json,
    curve_to_json,
    dumps,
    matrix_to_json,
    operator_to_json,
    vector_to_json,
    whv_to_json,
)

OUT = Path(__file__).parent / "fixtures"


def main():
    OUT.mkdir(exist_ok=True)
    tau = core.pauli_basis().tau
    files = {
        "tau0.json": operator_to_json(tau[0]),
        "tau3.json": operator_to_json(tau[3]),
        "theta_z.json": operator_to_json(core.theta_z(np.exp(0.7j))),
        "vector.json": vector_to_json(np.array([1, 1j]) / np.sqrt(2)),
        "bell.json": bipartite_to_json(bell_basis()[0]),
        "bipartite.json": bipartite_to_json(BipartiteVector([[0.8, 0.1j], [0.0, 0.59160797831]])),
        "whv.json": whv_to_json(whv_decompose(tau[0])),
    }
    line = symplectic.make_acq_line(core.standard_conjugation(2), core.LinOp([[1, 0], [0, 0]]))
    files["generator_loop.json"] = curve_to_json(line.curve(0, np.pi, 400, closed=True))
    s = 1 / np.sqrt(2)
    files["copositive.json"] = {
        "inputs": [vector_to_json([1, 0]), vector_to_json([0, 1])],
        "outputs": [vector_to_json([s, s]), vector_to_json([s, -s])],
        "beta": matrix_to_json([[1, 0.5], [0.5, 1]]),
    }
    files["pos_a.json"] = operator_to_json(core.LinOp([[2, 0], [0, 1]]))
    files["pos_b.json"] = operator_to_json(core.LinOp([[1, 0.5], [0.5, 1]]))
    for name, obj in files.items():
        (OUT / name).write_text(dumps(obj) + "\n")
        print("wrote", OUT / name)


if __name__ == "__main__":
    main()
