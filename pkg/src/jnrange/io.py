"""Triple files (JSON input) and OBJ mesh output."""

from __future__ import annotations

import ast
import hashlib
import json
import math
import operator
from pathlib import Path

import numpy as np

from .linalg import Triple, hermitian
from .settings import DEFAULT, Settings

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}
_FUNCS = {"sqrt": math.sqrt}


def _eval(node):
    if isinstance(node, ast.Expression):
        return _eval(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval(node.left), _eval(node.right))
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id in _FUNCS
        and len(node.args) == 1
    ):
        return _FUNCS[node.func.id](_eval(node.args[0]))
    raise ValueError(f"unsupported expression: {ast.dump(node)}")


def scalar(value) -> float:
    """Resolve a numeric JSON value or a symbolic tag such as ``"-sqrt(3)/2"``."""
    if isinstance(value, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        return _eval(ast.parse(value.strip(), mode="eval"))
    raise ValueError(f"not a number: {value!r}")


def _entry(e) -> complex:
    if isinstance(e, (list, tuple)):
        if len(e) != 2:
            raise ValueError(f"complex entries are [re, im] pairs, got {e!r}")
        return complex(scalar(e[0]), scalar(e[1]))
    return complex(scalar(e), 0.0)


def parse_matrix(rows) -> np.ndarray:
    """Square complex matrix from rows of ``[re, im]`` pairs (bare reals allowed)."""
    out = np.array([[_entry(e) for e in row] for row in rows], dtype=complex)
    if out.ndim != 2 or out.shape[0] != out.shape[1]:
        raise ValueError(f"matrix is not square: {out.shape}")
    return out


def matrix_to_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def parse_triple(doc: dict, settings: Settings = DEFAULT) -> Triple:
    mats = doc.get("matrices")
    if not isinstance(mats, list) or len(mats) != 3:
        raise ValueError("a triple file needs exactly three matrices")
    parsed = [hermitian(parse_matrix(m), settings) for m in mats]
    n = doc.get("n", parsed[0].shape[0])
    if any(m.shape != (n, n) for m in parsed):
        raise ValueError(f"matrices do not match declared size n={n}")
    return Triple(*parsed)


def triple_to_json(triple: Triple, labels=None) -> dict:
    doc = {"n": triple.n, "matrices": [matrix_to_json(m) for m in triple.matrices]}
    if labels:
        doc["labels"] = list(labels)
    return doc


def load_triple(path, settings: Settings = DEFAULT) -> Triple:
    return parse_triple(json.loads(Path(path).read_text()), settings)


def digest(triple: Triple) -> str:
    payload = json.dumps(triple_to_json(triple), sort_keys=True).encode()
    return hashlib.sha256(payload).hexdigest()


def write_obj(path, vertices, triangles) -> None:
    lines = [f"v {x:.9g} {y:.9g} {z:.9g}" for x, y, z in np.asarray(vertices, dtype=float)]
    lines += [f"f {i + 1} {j + 1} {k + 1}" for i, j, k in np.asarray(triangles, dtype=int)]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_obj(path) -> tuple[np.ndarray, np.ndarray]:
    verts, faces = [], []
    for line in Path(path).read_text().splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "v":
            verts.append([float(p) for p in parts[1:4]])
        elif parts[0] == "f":
            faces.append([int(p.split("/")[0]) - 1 for p in parts[1:4]])
    return np.array(verts).reshape(-1, 3), np.array(faces, dtype=int).reshape(-1, 3)
