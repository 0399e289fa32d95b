"""JSON file formats and the deterministic report serialiser.

Floats are written with 17 significant digits (always with a decimal point or
exponent) so every double survives a parse/serialise round trip unchanged.
"""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .complex_core import SimplicialComplex, build_complex
from .errors import FormatError
from .spectra import WeightedGraph

REPORT_SCHEMA = "spectral-t-report/1"


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite float {x!r}")
    text = format(x, ".17g")
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist(), indent, level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    """Deterministic JSON text (insertion-ordered keys, 17-digit floats, trailing newline)."""
    return _encode(obj, indent, 0) + "\n"


def sha256_of(obj: Any) -> str:
    return hashlib.sha256(dumps(obj).encode("utf-8")).hexdigest()


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc


def _require(payload: Any, key: str, kind: type | tuple[type, ...], where: str) -> Any:
    if not isinstance(payload, dict) or key not in payload:
        raise FormatError(f"{where}: missing field {key!r}")
    value = payload[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is int:
        raise FormatError(f"{where}: field {key!r} has the wrong type")
    return value


def complex_to_dict(X: SimplicialComplex) -> dict[str, Any]:
    return {
        "n": X.n,
        "vertices": [{"id": v, "type": t} for v, t in zip(X.vertices, X.types)],
        "maximal_simplices": [list(s) for s in X.maximal_simplices],
    }


def complex_from_dict(payload: Any) -> SimplicialComplex:
    n = _require(payload, "n", int, "complex")
    raw_vertices = _require(payload, "vertices", list, "complex")
    vertices = []
    for entry in raw_vertices:
        vid = _require(entry, "id", str, "complex vertex")
        vtype = _require(entry, "type", int, "complex vertex")
        vertices.append((vid, vtype))
    simplices = _require(payload, "maximal_simplices", list, "complex")
    for s in simplices:
        if not isinstance(s, list) or not all(isinstance(v, str) for v in s):
            raise FormatError("complex: maximal simplices must be lists of vertex ids")
    return build_complex(n, vertices, simplices)


def graph_to_dict(g: WeightedGraph) -> dict[str, Any]:
    out: dict[str, Any] = {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]}
    if g.sides is not None:
        out["sides"] = [list(g.sides[0]), list(g.sides[1])]
    return out


def graph_from_dict(payload: Any) -> WeightedGraph:
    verts = _require(payload, "vertices", list, "graph")
    edges = _require(payload, "edges", list, "graph")
    if not all(isinstance(v, str) for v in verts):
        raise FormatError("graph: vertex ids must be strings")
    for e in edges:
        if not isinstance(e, list) or len(e) != 2 or not all(isinstance(v, str) for v in e):
            raise FormatError("graph: edges must be [id, id] pairs")
    sides = payload.get("sides")
    if sides is not None:
        if not isinstance(sides, list) or len(sides) != 2 or not all(isinstance(s, list) for s in sides):
            raise FormatError("graph: sides must be two lists of vertex ids")
        sides = (tuple(sides[0]), tuple(sides[1]))
    return WeightedGraph(tuple(verts), tuple(tuple(e) for e in edges), sides)


def action_from_dict(payload: Any) -> list[dict[str, str]]:
    gens = _require(payload, "generators", list, "action")
    out = []
    for g in gens:
        perm = _require(g, "perm", dict, "action generator")
        if not all(isinstance(k, str) and isinstance(v, str) for k, v in perm.items()):
            raise FormatError("action: permutation entries must map id to id")
        out.append(dict(perm))
    return out


def action_to_dict(generators: list[dict[str, str]]) -> dict[str, Any]:
    return {"generators": [{"perm": dict(sorted(g.items()))} for g in generators]}


def matrices_from_dict(payload: Any) -> list[np.ndarray]:
    """Explicit representation file: ``{"generators": [{"real": [[...]], "imag": [[...]]?}]}``."""
    gens = _require(payload, "generators", list, "representation")
    out = []
    for g in gens:
        real = np.asarray(_require(g, "real", list, "representation generator"), dtype=float)
        imag = g.get("imag")
        mat = real if imag is None else real + 1j * np.asarray(imag, dtype=float)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise FormatError("representation: each generator must be a square matrix")
        out.append(mat)
    return out
