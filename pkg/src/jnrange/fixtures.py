"""The worked examples as machine-readable fixtures.

Each example stores its matrices in the triple-file format (symbolic entries
like ``"1/sqrt(2)"`` allowed) together with the verdicts expected of it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import numpy as np

from .io import parse_matrix
from .linalg import Triple, hermitian

CLASS_EXAMPLES = ("E0", "E1", "E2", "E3", "E4", "E5", "E6", "E7a", "E7b",
                  "E8", "E9", "E10", "E11", "E12", "E13", "E14")


@dataclass(frozen=True)
class Example:
    id: str
    kind: str  # "triple", "pair" or "matrix"
    matrices: tuple
    expected: dict = field(default_factory=dict)
    note: str = ""

    @property
    def triple(self) -> Triple:
        if self.kind != "triple":
            raise TypeError(f"{self.id} is a {self.kind}, not a triple")
        return Triple(*self.matrices)

    @property
    def pair(self) -> tuple[np.ndarray, np.ndarray]:
        """Hermitian pair (B1, B2); a single matrix B is split into Re B, Im B."""
        if self.kind == "pair":
            return self.matrices[0], self.matrices[1]
        if self.kind == "matrix":
            b = self.matrices[0]
            return (b + b.conj().T) / 2, (b - b.conj().T) / 2j
        raise TypeError(f"{self.id} is a triple, not a pair")

    def to_json(self) -> dict:
        from .io import matrix_to_json

        return {"n": self.matrices[0].shape[0],
                "matrices": [matrix_to_json(m) for m in self.matrices]}


@lru_cache(maxsize=1)
def _raw() -> dict:
    text = resources.files("jnrange").joinpath("data/examples.json").read_text()
    return {e["id"]: e for e in json.loads(text)["examples"]}


def ids() -> list[str]:
    return list(_raw())


def load(example_id: str) -> Example:
    try:
        raw = _raw()[example_id]
    except KeyError:
        raise KeyError(f"unknown example id {example_id!r}; known: {', '.join(ids())}") from None
    mats = [parse_matrix(m) for m in raw["matrices"]]
    if raw["kind"] != "matrix":
        mats = [hermitian(m) for m in mats]
    for m in mats:
        m.setflags(write=False)
    return Example(raw["id"], raw["kind"], tuple(mats), raw["expected"], raw.get("note", ""))


def expected_tuples(example: Example) -> list[np.ndarray] | None:
    from .io import scalar

    tuples = example.expected.get("rank1_tuples")
    if tuples is None:
        return None
    return [np.array([scalar(x) for x in t]) for t in tuples]
