"""Regenerate src/jnrange/data/examples.json from the matrix listings below.

Entries are written the way they are printed: "i", "-i*sqrt(2)", "1/2",
"-9-6i".  Irrational parts stay symbolic in the JSON file.
"""

import json
import re
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "jnrange" / "data" / "examples.json"


def entry(tok):
    tok = str(tok).replace(" ", "")
    if "sqrt" in tok or "/" in tok:
        if tok.startswith(("i*", "-i*")):
            sign = "-" if tok.startswith("-") else ""
            return ["0", sign + tok.split("*", 1)[1]]
        return [tok, "0"]
    if tok in ("i", "-i"):
        return [0, 1 if tok == "i" else -1]
    z = complex(tok.replace("i", "j"))

    def num(x):
        return int(x) if float(x).is_integer() else x
    return [num(z.real), num(z.imag)]


def mat(rows):
    return [[entry(t) for t in row.split()] for row in rows]


def diag(*d):
    n = len(d)
    return [[entry(d[i]) if i == j else [0, 0] for j in range(n)] for i in range(n)]


def fourier_conj():
    # F diag(1,1,1,0) F^* = 1 - f f^*, f = (1, -i, -1, i)/2
    import numpy as np
    f = np.array([1, -1j, -1, 1j]) / 2
    m = np.eye(4) - np.outer(f, f.conj())
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


EX = []


def add(id_, matrices, expected, kind="triple", note=""):
    EX.append({"id": id_, "kind": kind, "n": len(matrices[0]), "matrices": matrices,
               "note": note, "expected": expected})


def sig(a, idx, tuples, **kw):
    e = {"signature": a, "class_index": idx, "rank1_tuples": tuples}
    e.update(kw)
    return e


add("E0", [mat(["0 1 0 0", "1 0 i 0", "0 -i 0 0", "0 0 0 0"]),
           mat(["0 0 0 0", "0 0 1 0", "0 1 0 i", "0 0 -i 0"]),
           mat(["0 0 0 i", "0 0 0 0", "0 0 0 1", "-i 0 1 0"])],
    sig([0, 0, 0, 0], 0, []), note="no faces, smooth boundary")
add("E1", [mat(["0 i i -2", "-i 0 i 2", "-i -i 0 2i", "-2 2 -2i 0"]),
           mat(["-2 1 1 -2i", "1 1 1 2i", "1 1 1 2", "2i -2i 2 0"]),
           diag(0, 0, 0, -4)],
    sig([1, 0, 0, 0], 1, [[0, 0, 0, 1]]), note="single oval face")
add("E2", [mat(["0 0 0 1", "0 0 0 -1", "0 0 -sqrt(2) -i", "1 -1 i 0"]),
           mat(["-1/sqrt(2) 0 i*1/sqrt(2) -i", "0 1/sqrt(2) i*1/sqrt(2) i",
                "-i*1/sqrt(2) -i*1/sqrt(2) 0 1", "i -i 1 0"]),
           diag(0, 0, 0, 2)],
    sig([0, 1, 0, 0], 2, [[0, 0, 0, 1]]), note="single loaf face")
add("E3", [diag(1, 1, 1, 0), fourier_conj(),
           mat(["0 1/2 0 -1/2", "1/2 0 0 0", "0 0 0 0", "-1/2 0 0 0"])],
    sig([0, 2, 0, 0], 3, [[-1, 1, 0, 0], [-1, 0, 1, 0]]), note="two loaf faces")
add("E4", [diag(2, 0, 0, 0),
           mat(["0 0 0 0", "0 0 0 0", "0 0 1 i", "0 0 -i 1"]),
           mat(["1/2 -1/2 1/2 0", "-1/2 1 0 0", "1/2 0 0 1", "0 0 1 0"])],
    sig([0, 1, 1, 0], 4, [[0, 1, 0, 0], [0, 0, 1, 0]]), note="loaf and droplet")
add("E5", [diag(0, 0, 0, 1), diag(0, 0, 1, 0),
           mat(["-1/2 0 -i*1/2 0", "0 1/2 1/2 0", "i*1/2 1/2 0 1/2", "0 0 1/2 0"])],
    sig([0, 1, 0, 1], 5, [[0, 1, 0, 0], [0, 0, 1, 0]]), note="loaf and triangle")
add("E6", [mat(["-1 1 0 -1", "1 -1 0 1", "0 0 1 i", "-1 1 -i 0"]),
           mat(["0 -i 0 -i", "i 0 0 i", "0 0 0 1", "i -i 1 0"]),
           diag(0, 0, 0, -2)],
    sig([0, 0, 1, 0], 6, [[0, 0, 0, 1]]), note="single droplet")
add("E7a", [mat(["0 0 0 0", "0 0 0 0", "0 0 1 1", "0 0 1 1"]),
            mat(["0 1 0 0", "1 0 0 0", "0 0 1 i", "0 0 -i 1"]),
            mat(["1 i 0 0", "-i 1 0 0", "0 0 0 0", "0 0 0 0"])],
    sig([0, 0, 2, 0], 7, [[0, 1, 0, 0], [0, 0, 0, 1]],
        droplet_intersection=[[0, 0, 0], [0, 1, 0]]), note="Yin-Yang droplets")
add("E7b", [mat(["-1 0 sqrt(2) 0", "0 1 0 0", "sqrt(2) 0 0 0", "0 0 0 1"]),
            mat(["-1 0 -sqrt(2) 0", "0 1 0 0", "-sqrt(2) 0 0 0", "0 0 0 1"]),
            mat(["0 2 0 0", "2 0 0 0", "0 0 0 0", "0 0 0 1"])],
    sig([0, 0, 2, 0], 7, [[-1, 1, 0, 0], [-1, 0, 1, 0]], corners=[[1, 1, 1]]),
    note="two droplets with a corner point")
add("E8", [mat(["2 0 0 0", "0 2 0 0", "0 0 1 i", "0 0 -i 1"]),
           mat(["1 0 -i 0", "0 2 0 0", "i 0 1 0", "0 0 0 2"]),
           mat(["1 0 0 i", "0 2 0 0", "0 0 2 0", "-i 0 0 1"])],
    sig([0, 0, 3, 0], 8, [[-2, 1, 0, 0], [-2, 0, 1, 0], [-2, 0, 0, 1]], corners=[[2, 2, 2]]),
    note="three droplets")
add("E9", [mat(["1 0 0 0", "0 0 1 0", "0 1 0 0", "0 0 0 1"]),
           mat(["0 0 sqrt(2) 0", "0 0 0 0", "sqrt(2) 0 0 0", "0 0 0 1"]),
           diag(0, 0, -2, 0)],
    sig([0, 0, 1, 1], 9, [[0, 0, 0, 1], [-1, 1, 0, 0]], corners=[[1, 1, 0]]),
    note="droplet and triangle")
add("E10", [mat(["1 -i 0 0", "i 1 0 0", "0 0 0 0", "0 0 0 0"]),
            mat(["0 1 0 0", "1 0 0 0", "0 0 1 0", "0 0 0 1"]),
            diag(0, 0, 1, 0)],
    sig([0, 0, 1, 2], 10, [[0, 0, 0, 1], [-1, 0, 1, 0], [0, 1, 0, 0]],
        corners=[[0, 1, 1], [0, 1, 0]]), note="droplet and two triangles")
add("E11", [mat(["1 0 i*sqrt(2) 0", "0 0 0 0", "-i*sqrt(2) 0 2 0", "0 0 0 0"]),
            mat(["0 0 0 0", "0 1 -i*sqrt(2) 0", "0 i*sqrt(2) 2 0", "0 0 0 0"]),
            diag(0, 0, 2, 0)],
    sig([0, 0, 2, 1], 11, [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], corners=[[0, 0, 0]]),
    note="two droplets and a triangle")
add("E12", [mat(["sqrt(3) 0 0 -1", "0 -sqrt(3)/2 0 1", "0 0 -sqrt(3)/2 -i", "-1 1 i 0"]),
            mat(["0 0 0 i", "0 3/2 0 -i", "0 0 -3/2 1", "-i i 1 0"]),
            diag(0, 0, 0, -2)],
    sig([0, 0, 0, 1], 12, [[0, 0, 0, 1]]), note="single triangle")
add("E13", [diag(0, 0, 1, -1),
            mat(["1 0 0 0", "0 1 0 0", "0 0 0 1/2", "0 0 1/2 0"]),
            mat(["0 1 0 0", "1 0 0 0", "0 0 0 -i", "0 0 i 0"])],
    sig([0, 0, 0, 2], 13, [["-2", "sqrt(3)", "2", "0"], ["-2", "-sqrt(3)", "2", "0"]],
        corners=[[0, 1, 1], [0, 1, -1]]), note="two triangles")
add("E14", [diag(1, 1, -1, -1), diag(1, -1, 1, -1), diag(1, -1, -1, 1)],
    sig([0, 0, 0, 4], 14, None, corners=[[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]),
    note="tetrahedron")

add("five-ellipse", [mat(["0 0 1 0", "0 0 0 0", "1 0 0 0", "0 0 0 0"]),
                     mat(["0 0 0 0", "0 0 0 1", "0 0 0 0", "0 1 0 0"]),
                     mat(["1 0 0 0", "0 0 1 0", "0 1 0 0", "0 0 0 1"])],
    {"elliptic_faces": 5, "rank3_elliptic": 1}, note="five elliptic faces")
add("six-dice", [mat(["1/sqrt(2) 1/sqrt(2) 0 0", "1/sqrt(2) -1/sqrt(2) 0 0",
                      "0 0 -1/sqrt(2) 1/sqrt(2)", "0 0 1/sqrt(2) 1/sqrt(2)"]),
                 mat(["0 -1 0 0", "-1 0 0 0", "0 0 0 1", "0 0 1 0"]),
                 mat(["0 0 0 -1", "0 0 i 0", "0 -i 0 0", "-1 0 0 0"])],
    {"elliptic_faces": 6, "intersecting_pairs": 0}, note="dice: six disjoint ellipses")
add("ring", [mat(["1/sqrt(2) 1/sqrt(2) 0 0", "1/sqrt(2) -1/sqrt(2) 0 0",
                  "0 0 -1/sqrt(2) 1/sqrt(2)", "0 0 1/sqrt(2) 1/sqrt(2)"]),
             mat(["0 -1 0 0", "-1 0 0 0", "0 0 0 1", "0 0 1 0"]),
             mat(["0 0 0 -1", "0 0 1 0", "0 1 0 0", "-1 0 0 0"])],
    {"elliptic_faces": 6, "intersecting_pairs": 4, "ring_members": 4},
    note="six ellipses, four in a ring")
add("random-gue", [mat(["-3 -9-6i -15-1i -2+13i", "-9+6i 6 -2+5i -2+10i",
                        "-15+1i -2-5i -10 -6-7i", "-2-13i -2-10i -6+7i 3"]),
                   mat(["11 9+2i 2-5i -1-2i", "9-2i -9 -4-3i 1-4i",
                        "2+5i -4+3i -16 10-12i", "-1+2i 1+4i 10+12i -2"]),
                   mat(["15 10-3i 5+5i -1i", "10+3i -6 -16-2i 15",
                        "5-5i -16+2i 3 -9-7i", "1i 15 -9+7i -13"])],
    {"sep_strictly_inside": True}, note="rounded GUE sample, seed 2137")
add("ex5-1-n5", [mat(["0 0 0 0 0", "0 0 0 0 0", "0 0 -1 0 0", "0 0 0 -1 0", "0 0 0 0 1"]),
                 mat(["0 1 0 0 0", "1 0 0 0 0", "0 0 -1 0 0", "0 0 0 1 0", "0 0 0 0 0"]),
                 mat(["0 -i 0 0 0", "i 0 0 0 0", "0 0 0 0 0", "0 0 0 0 0", "0 0 0 0 0"])],
    {"non_corner": [0, 0, 1], "segments": [[[-1, -1, 0], [0, 0, 1]], [[-1, 1, 0], [0, 0, 1]],
                                           [[1, 0, 0], [0, 0, 1]]]},
    note="three segments meeting at a non-corner point (n=5)")
add("bordered-3x3", [diag(1, 0, 0), mat(["0 0 1", "0 0 0", "1 0 0"])],
    {"shape": "ellipse"}, kind="pair", note="bordered pair, elliptic range")
add("type-exemplar-0", [mat(["-1 1 1", "0 1/2 1", "0 0 1/2"])],
    {"shape": "oval"}, kind="matrix", note="non-normal 3x3 matrix B, W(Re B, Im B)")
add("type-exemplar-1", [mat(["1/2 0 -i*1/2", "0 -1/2 -i*1/2", "i*1/2 i*1/2 i"])],
    {"shape": "loaf"}, kind="matrix")
add("type-exemplar-2", [mat(["1 2 0", "0 1 0", "0 0 i"])],
    {"shape": "droplet"}, kind="matrix")
add("type-exemplar-3", [mat(["-1 0 0", "0 1 0", "0 0 i"])],
    {"shape": "triangle"}, kind="matrix")

OUT.parent.mkdir(parents=True, exist_ok=True)
def dump(ex):
    head = {k: v for k, v in ex.items() if k != "matrices"}
    lines = ["  {"]
    for k, v in head.items():
        lines.append(f"   {json.dumps(k)}: {json.dumps(v)},")
    mats = []
    for m in ex["matrices"]:
        rows = ",\n     ".join(json.dumps(r) for r in m)
        mats.append(f"    [{rows}]")
    lines.append('   "matrices": [\n' + ",\n".join(mats) + "]")
    lines.append("  }")
    return "\n".join(lines)


OUT.write_text('{"schema": 1, "examples": [\n' + ",\n".join(dump(e) for e in EX) + "\n]}\n")
print(f"wrote {len(EX)} examples to {OUT}")
