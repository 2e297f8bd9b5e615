"""JSON conversions for matrices, limit-group elements, and witnesses.

Elements serialise as {"payload": ..., "level": N, "flavor": ...} with
flavors "s", "u", "h", "k0", "k1", "ra"; homomorphisms as {"z": [...],
"level": N}; witnesses as {"R": rows, "S": rows, "k": lag}.  Reports carry a
SHA-256 of the compact matrix JSON so runs are attributable to their input.
"""

from __future__ import annotations

import hashlib
import json
from typing import Union

from .exactlinalg import IntMatrix
from .sft import AdjacencyMatrix, validate
from .dimension_groups import HomoclinicElement, StableElement, UnstableElement
from .cylinder_ring import CylinderK0Element, CylinderK1Element, RAElement
from .duality import StableHom
from .shift_equivalence import ShiftEquivalenceWitness

Element = Union[
    StableElement,
    UnstableElement,
    HomoclinicElement,
    CylinderK0Element,
    CylinderK1Element,
    RAElement,
]

_FLAVORS = {
    StableElement: "s",
    UnstableElement: "u",
    HomoclinicElement: "h",
    CylinderK0Element: "k0",
    CylinderK1Element: "k1",
    RAElement: "ra",
}


def matrix_sha256(a: AdjacencyMatrix) -> str:
    payload = json.dumps(a.matrix.to_rows(), separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


def element_to_dict(e: Element) -> dict:
    flavor = _FLAVORS[type(e)]
    if flavor in ("s", "u"):
        payload = list(e.vector)
    elif flavor == "ra":
        payload = list(e.coeffs)
    else:
        payload = e.matrix.to_rows()
    return {"payload": payload, "level": e.level, "flavor": flavor}


def element_from_dict(a: AdjacencyMatrix, d: dict) -> Element:
    flavor = d["flavor"]
    level = int(d["level"])
    payload = d["payload"]
    if flavor == "s":
        return StableElement(a, tuple(int(x) for x in payload), level)
    if flavor == "u":
        return UnstableElement(a, tuple(int(x) for x in payload), level)
    if flavor == "h":
        return HomoclinicElement(a, IntMatrix.from_rows(payload), level)
    if flavor == "k0":
        return CylinderK0Element(a, IntMatrix.from_rows(payload), level)
    if flavor == "k1":
        return CylinderK1Element(a, IntMatrix.from_rows(payload), level)
    if flavor == "ra":
        return RAElement(a, tuple(int(x) for x in payload), level)
    raise ValueError(f"unknown flavor {flavor!r}")


def hom_to_dict(phi: StableHom) -> dict:
    return {"z": list(phi.z), "level": phi.level}


def hom_from_dict(a: AdjacencyMatrix, d: dict) -> StableHom:
    return StableHom(a, tuple(int(x) for x in d["z"]), int(d["level"]))


def witness_to_dict(w: ShiftEquivalenceWitness) -> dict:
    return {"R": w.r.to_rows(), "S": w.s.to_rows(), "k": w.k}


def witness_from_dict(d: dict) -> ShiftEquivalenceWitness:
    return ShiftEquivalenceWitness(
        r=IntMatrix.from_rows(d["R"]), s=IntMatrix.from_rows(d["S"]), k=int(d["k"])
    )


def parse_matrix_text(text: str) -> tuple:
    """Auto-detect JSON versus whitespace rows by the first non-blank byte.

    Returns (AdjacencyMatrix, label or None).
    """
    stripped = text.lstrip()
    if not stripped:
        raise ValueError("empty matrix input")
    label = None
    if stripped[0] in "[{":
        data = json.loads(stripped)
        if isinstance(data, dict):
            label = data.get("label")
            rows = data["matrix"]
        else:
            rows = data
    else:
        rows = [
            [int(tok) for tok in line.split()]
            for line in stripped.splitlines()
            if line.strip()
        ]
    return validate(rows), label
