"""JSON forms of fields, codes, nested pairs and networks.

Extension-field elements are coefficient arrays (constant term first), e.g.
``[0, 1, 0]`` for x in F_8. Base-field matrices (transfer matrices, coding
vectors, subspace bases) are plain integer arrays.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .codes import LinearCode
from .coset import NestedPair
from .fields import GF, field
from .netcode import NetworkInstance


def field_to_json(F: GF) -> dict:
    return {"p": F.p, "m": F.m, "modulus": list(F.params.modulus)}


def field_from_json(d: dict) -> GF:
    try:
        return field(int(d["p"]), int(d.get("m", 1)), d.get("modulus"))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad field description: {d!r}") from exc


def element_to_json(F: GF, code: int) -> list[int]:
    return [int(c) for c in F.digits[int(code)]]


def element_from_json(F: GF, coeffs) -> int:
    if isinstance(coeffs, int):
        coeffs = [coeffs] + [0] * (F.m - 1)
    if len(coeffs) != F.m or any(not 0 <= int(c) < F.p for c in coeffs):
        raise ValueError(f"element {coeffs!r} is not {F.m} coefficients mod {F.p}")
    return F.contract(np.asarray(coeffs, dtype=np.int64))


def vector_to_json(F: GF, v) -> list[list[int]]:
    return [element_to_json(F, c) for c in np.asarray(v).reshape(-1)]


def vector_from_json(F: GF, v) -> np.ndarray:
    return np.array([element_from_json(F, c) for c in v], dtype=np.int64)


def matrix_to_json(F: GF, M) -> list:
    M = np.asarray(M)
    return [vector_to_json(F, row) for row in M]


def matrix_from_json(F: GF, rows, n: int | None = None) -> np.ndarray:
    if not rows:
        return np.zeros((0, n or 0), dtype=np.int64)
    return np.array([vector_from_json(F, r) for r in rows], dtype=np.int64)


def code_to_json(C: LinearCode) -> dict:
    return {"field": field_to_json(C.field), "n": C.n, "gen": matrix_to_json(C.field, C.G)}


def code_from_json(d: dict, F: GF | None = None) -> LinearCode:
    F = F or field_from_json(d["field"])
    n = int(d["n"])
    return LinearCode.from_generator(F, matrix_from_json(F, d.get("gen", []), n), n)


def pair_to_json(pair: NestedPair) -> dict:
    F = pair.field
    return {
        "field": field_to_json(F),
        "n": pair.n,
        "c1": matrix_to_json(F, pair.c1.G),
        "c2": matrix_to_json(F, pair.c2.G),
        "msg_rows": matrix_to_json(F, pair.M),
    }


def pair_from_json(d: dict) -> NestedPair:
    try:
        F = field_from_json(d["field"])
        n = int(d["n"])
        c1 = LinearCode.from_generator(F, matrix_from_json(F, d["c1"], n), n)
        c2 = LinearCode.from_generator(F, matrix_from_json(F, d.get("c2", []), n), n)
    except KeyError as exc:
        raise ValueError(f"pair description is missing {exc}") from exc
    msg = d.get("msg_rows")
    msg = None if msg is None else matrix_from_json(F, msg, n)
    return NestedPair.from_codes(c1, c2, msg)


def net_to_json(net: NetworkInstance) -> dict:
    d = {"p": net.p, "A": [list(r) for r in net.A]}
    if net.gcv_list is not None:
        d["gcv_list"] = [list(r) for r in net.gcv_list]
    return d


def net_from_json(d: dict) -> NetworkInstance:
    if "A" not in d:
        raise ValueError("network description needs a transfer matrix 'A'")
    return NetworkInstance.from_matrix(int(d.get("p", 2)), d["A"], d.get("gcv_list"))


def load_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, sort_keys=True)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
