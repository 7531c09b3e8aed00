"""Command-line front end.

Every command reads JSON inputs, calls the library and writes a report.
Exit codes: 0 success, 2 unreadable input, 3 library error, 4 tolerance
violation (a discretised integral too far from an integer).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

import numpy as np

from antilinear import decomp, epr_teleport, equivalence, modular, symplectic
from antilinear.core import DEFAULT_TOL, AntiOp, LinOp
from antilinear.errors import AntilinearError, SamplingTooCoarse
from antilinear.jsonio import (
    SchemaError,
    bipartite_from_json,
    bipartite_to_json,
    curve_from_json,
    dumps,
    fmt,
    matrix_from_json,
    matrix_to_json,
    operator_from_json,
    operator_to_json,
    vector_from_json,
    vector_to_json,
    whv_to_json,
)

EXIT_OK, EXIT_PARSE, EXIT_LIBRARY, EXIT_TOLERANCE = 0, 2, 3, 4


class _Inputs:
    """Loads JSON files and remembers their bytes for the digest."""

    def __init__(self):
        self.blobs: list[bytes] = []

    def load(self, path: str):
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise SchemaError(f"{path}: {exc.strerror}") from exc
        self.blobs.append(data)
        try:
            return json.loads(data)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc

    def digest(self) -> str:
        h = hashlib.sha256()
        for b in self.blobs:
            h.update(hashlib.sha256(b).digest())
        return h.hexdigest()


def _anti(obj, where):
    op = operator_from_json(obj, where)
    if not isinstance(op, AntiOp):
        raise SchemaError(f"{where}: expected an antilinear operator")
    return op


def _cmd_classify(args, inp):
    op = _anti(inp.load(args.op), args.op)
    return {"class": decomp.classify(op, args.tol).value}, []


def _cmd_decompose(args, inp):
    op = _anti(inp.load(args.op), args.op)
    return whv_to_json(decomp.whv_decompose(op, args.tol)), []


def _cmd_polar(args, inp):
    op = _anti(inp.load(args.op), args.op)
    parts = decomp.polar_anti(op, args.tol)
    return {
        "left": operator_to_json(parts.left_antiunitary),
        "modulus": operator_to_json(parts.modulus),
        "right": operator_to_json(parts.right_antiunitary),
    }, []


def _cmd_maslov(args, inp):
    curve = curve_from_json(inp.load(args.curve), args.curve)
    value = symplectic.maslov_integral(curve)
    index = symplectic.maslov_index(curve)
    return {"index": index, "integral": fmt(value)}, []


def _cmd_copositive(args, inp):
    obj = inp.load(args.input)
    if not isinstance(obj, dict) or not {"inputs", "outputs", "beta"} <= obj.keys():
        raise SchemaError(f"{args.input}: expected keys inputs, outputs, beta")
    ins = [vector_from_json(v, f"inputs[{i}]") for i, v in enumerate(obj["inputs"])]
    outs = [vector_from_json(v, f"outputs[{i}]") for i, v in enumerate(obj["outputs"])]
    beta = matrix_from_json(obj["beta"], "beta")
    t = equivalence.build_copositive(ins, outs, beta, args.tol)
    rng = np.random.default_rng(0)
    x = rng.normal(size=(t.dim, t.dim)) + 1j * rng.normal(size=(t.dim, t.dim))
    lhs = np.trace(t(LinOp(x)).mat)
    rhs = np.trace(t.k_op.mat @ x)
    ok = bool(abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs)))
    return {"length": t.length, "K": matrix_to_json(t.k_op.mat), "traces_check": ok}, []


def _cmd_mean(args, inp):
    a = operator_from_json(inp.load(args.a), args.a)
    b = operator_from_json(inp.load(args.b), args.b)
    return operator_to_json(modular.geometric_mean(a, b)), []


def _cmd_modular(args, inp):
    psi = bipartite_from_json(inp.load(args.psi), args.psi)
    t = modular.modular_from_bipartite(psi, args.tol)
    return {"S": operator_to_json(t.s), "Delta": operator_to_json(t.delta), "J": operator_to_json(t.j)}, []


def _cmd_teleport(args, inp):
    psi = bipartite_from_json(inp.load(args.psi), args.psi)
    phi = bipartite_from_json(inp.load(args.phi), args.phi)
    vec = vector_from_json(inp.load(args.input), args.input)
    out = epr_teleport.teleport_map(phi, psi)(vec)
    return {"output": vector_to_json(out), "norm": fmt(np.linalg.norm(out))}, []


def _cmd_fidelity(args, inp):
    psi = bipartite_from_json(inp.load(args.psi), args.psi)
    phi = bipartite_from_json(inp.load(args.phi), args.phi)
    if abs(psi.norm() - 1) > 1e-8 or abs(phi.norm() - 1) > 1e-8:
        raise AntilinearError("fidelity expects unit vectors")
    return {"fidelity": fmt(epr_teleport.teleport_fidelity(phi, psi))}, []


def _cmd_swap(args, inp):
    phi23 = bipartite_from_json(inp.load(args.phi23), args.phi23)
    phi45 = bipartite_from_json(inp.load(args.phi45), args.phi45)
    psi34 = bipartite_from_json(inp.load(args.psi34), args.psi34)
    return bipartite_to_json(epr_teleport.entanglement_swap(phi23, phi45, psi34)), []


COMMANDS = {
    "classify": (_cmd_classify, "classify an antilinear operator", ["op"]),
    "decompose": (_cmd_decompose, "block canonical form of a normal antilinear operator", ["op"]),
    "polar": (_cmd_polar, "polar decomposition of an antilinear operator", ["op"]),
    "maslov": (_cmd_maslov, "Maslov index of a closed curve of conjugations", ["curve"]),
    "copositive": (_cmd_copositive, "build a copositive map from inputs, outputs and beta", ["input"]),
    "mean": (_cmd_mean, "geometric mean of two positive operators", ["a", "b"]),
    "modular": (_cmd_modular, "modular objects of a bipartite vector", ["psi"]),
    "teleport": (_cmd_teleport, "teleport an input vector", ["psi", "phi", "input"]),
    "fidelity": (_cmd_fidelity, "trace norm of the teleportation map", ["psi", "phi"]),
    "swap": (_cmd_swap, "entanglement swapping", ["phi23", "phi45", "psi34"]),
}


def _default_tol() -> float:
    env = os.environ.get("ANTILIN_TOL")
    if env is None:
        return DEFAULT_TOL
    try:
        return float(env)
    except ValueError:
        raise SchemaError(f"ANTILIN_TOL: not a number: {env!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="antilinear", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text, inputs) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        for key in inputs:
            p.add_argument(f"--{key}", required=True, metavar="FILE")
        p.add_argument("--tol", type=float, default=None, help="tolerance (default: ANTILIN_TOL or 1e-9)")
        p.add_argument("--json", dest="json_out", action="store_true", help="print the report as JSON")
        p.add_argument("--output", default=None, metavar="FILE", help="write the report here")
    return parser


def _human(report: dict) -> str:
    lines = [f"command: {report['command']}", f"inputs:  {report['inputs_digest'][:16]}"]
    for key, value in sorted(report["result"].items()):
        text = json.dumps(value, sort_keys=True)
        lines.append(f"{key}: {text}")
    for d in report["diagnostics"]:
        lines.append(f"warning: {d}")
    return "\n".join(lines)


def run(argv=None) -> tuple[int, str]:
    """Run the CLI and return ``(exit_code, text)``."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.tol is None:
            args.tol = _default_tol()
    except SchemaError as exc:
        return EXIT_PARSE, f"parse error: {exc}"
    if not args.tol > 0:
        return EXIT_PARSE, "parse error: tolerance must be positive"
    handler = COMMANDS[args.command][0]
    inp = _Inputs()
    try:
        result, diags = handler(args, inp)
    except SchemaError as exc:
        return EXIT_PARSE, f"parse error: {exc}"
    except SamplingTooCoarse as exc:
        return EXIT_TOLERANCE, f"SamplingTooCoarse: {exc}"
    except (AntilinearError, ValueError, np.linalg.LinAlgError) as exc:
        return EXIT_LIBRARY, f"{type(exc).__name__}: {exc}"
    report = {
        "command": args.command,
        "inputs_digest": inp.digest(),
        "result": result,
        "diagnostics": diags,
    }
    text = dumps(report) if args.json_out else _human(report)
    if args.output:
        Path(args.output).write_text(text + "\n")
    return EXIT_OK, text


def main(argv=None) -> int:
    code, text = run(argv)
    stream = sys.stdout if code == EXIT_OK else sys.stderr
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
