"""JSON forms for specs, elements, tensors and reports.

Complex numbers are two-element [re, im] arrays; matrices are flat row-major
lists of such pairs, with shapes recovered from the algebra spec; block pair
keys are 1-based "i,j" strings.  The encoding is deterministic so that equal
inputs produce byte-identical reports.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .algebra import AlgebraSpec, Element
from .tensor import AJElement, BElement


def complex_to_pair(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def matrix_to_flat(m: np.ndarray) -> list[list[float]]:
    return [complex_to_pair(z) for z in np.asarray(m, dtype=complex).ravel()]


def flat_to_matrix(flat: Any, rows: int, cols: int) -> np.ndarray:
    if len(flat) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(flat)}")
    values = [complex(float(p[0]), float(p[1])) for p in flat]
    return np.array(values, dtype=complex).reshape(rows, cols)


def spec_to_json(spec: AlgebraSpec) -> dict:
    return {"blocks": list(spec.block_dims)}

def spec_from_json(data: Any) -> AlgebraSpec:
    if not isinstance(data, dict) or "blocks" not in data:
        raise ValueError('algebra spec JSON needs a "blocks" key')
    return AlgebraSpec(tuple(int(n) for n in data["blocks"]))


def element_to_json(x: Element) -> dict:
    return {"blocks": [matrix_to_flat(m) for m in x.blocks]}

def element_from_json(spec: AlgebraSpec, data: Any) -> Element:
    if not isinstance(data, dict) or "blocks" not in data:
        raise ValueError('element JSON needs a "blocks" key')
    flats = data["blocks"]
    if len(flats) != spec.num_blocks:
        raise ValueError(f"expected {spec.num_blocks} blocks, got {len(flats)}")
    blocks = [flat_to_matrix(flat, n, n) for flat, n in zip(flats, spec.block_dims)]
    return Element(spec, tuple(blocks))


def aj_to_json(u: AJElement) -> dict:
    terms = {}
    for (i, j), m in sorted(u.terms.items()):
        terms[f"{i + 1},{j + 1}"] = matrix_to_flat(m)
    return {"terms": terms}

def aj_from_json(spec: AlgebraSpec, data: Any) -> AJElement:
    if not isinstance(data, dict) or "terms" not in data:
        raise ValueError('tensor JSON needs a "terms" key')
    terms = {}
    for key, flat in data["terms"].items():
        i_str, j_str = key.split(",")
        i, j = int(i_str) - 1, int(j_str) - 1
        terms[(i, j)] = flat_to_matrix(flat, spec.block_dims[i], spec.block_dims[j])
    return AJElement(spec, terms)


def b_to_json(x: BElement) -> dict:
    return {"a": element_to_json(x.a), "u": aj_to_json(x.u)}

def b_from_json(spec: AlgebraSpec, data: Any) -> BElement:
    if not isinstance(data, dict) or "a" not in data or "u" not in data:
        raise ValueError('extension element JSON needs "a" and "u" keys')
    return BElement(element_from_json(spec, data["a"]), aj_from_json(spec, data["u"]))


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def load_json_file(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)
