"""JSON documents for barcodes, MV systems, meshes and verification reports.

Numbers are written as strings (``"-1/2"``, ``"3"``, ``"inf"``) so nothing is
lost.  Output is deterministic: objects are emitted with a fixed key order
and in the sorted order of the underlying multisets.
"""

from __future__ import annotations

import json
from typing import Any, Iterable

from .barcodes import GradedBarcode
from .blocks import Block, formal_trace
from .errors import MalformedInput, PreconditionError
from .exact import ext, fmt, rational
from .homology import SimplicialComplex
from .intervals import Bar, Interval
from .levelset import Mismatch, PLFunction
from .mvsystems import GradedBlock, MVSystem


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


# --- field readers -----------------------------------------------------------


def _field(obj: Any, key: str, kind: type | tuple, where: str) -> Any:
    if not isinstance(obj, dict):
        raise MalformedInput(f"{where}: expected an object")
    if key not in obj:
        raise MalformedInput(f"{where}: missing key {key!r}")
    value = obj[key]
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise MalformedInput(f"{where}.{key}: wrong type {type(value).__name__}")
    return value


def _number(obj: Any, key: str, where: str):
    text = _field(obj, key, str, where)
    try:
        return ext(text)
    except (ValueError, TypeError) as exc:
        raise MalformedInput(f"{where}.{key}: {exc}") from exc


def _rational(obj: Any, key: str, where: str):
    text = _field(obj, key, str, where)
    try:
        return rational(text)
    except (ValueError, TypeError) as exc:
        raise MalformedInput(f"{where}.{key}: {exc}") from exc


def _expect_type(doc: Any, name: str) -> None:
    # the "type" tag is optional; when present it has to match
    if isinstance(doc, dict) and "type" in doc and doc["type"] != name:
        raise MalformedInput(f"document: expected type {name!r}, got {doc['type']!r}")


# --- barcodes ----------------------------------------------------------------


def bar_to_dict(bar: Bar) -> dict:
    iv = bar.interval
    return {
        "degree": bar.degree,
        "lo": fmt(iv.lo),
        "hi": fmt(iv.hi),
        "lo_open": iv.lo_open,
        "hi_open": iv.hi_open,
    }


def bar_from_dict(obj: Any, where: str = "bar") -> Bar:
    interval = Interval(
        _number(obj, "lo", where),
        _number(obj, "hi", where),
        _field(obj, "lo_open", bool, where),
        _field(obj, "hi_open", bool, where),
    )
    return Bar(interval, _field(obj, "degree", int, where))


def barcode_to_json(barcode: GradedBarcode) -> str:
    return dumps({"bars": [bar_to_dict(b) for b in barcode]})


def barcode_from_json(text: str) -> GradedBarcode:
    doc = loads(text)
    _expect_type(doc, "barcode")
    bars = _field(doc, "bars", list, "document")
    return GradedBarcode(bar_from_dict(b, f"bars[{i}]") for i, b in enumerate(bars))


# --- MV systems --------------------------------------------------------------


def block_to_dict(gb: GradedBlock) -> dict:
    """``{"kind", "trace", "degree"}``; the trace is the stored one, even when degenerate."""
    lo, hi, lo_open, hi_open = formal_trace(gb.block)
    return {
        "kind": gb.block.kind,
        "trace": {"lo": fmt(lo), "hi": fmt(hi), "lo_open": lo_open, "hi_open": hi_open},
        "degree": gb.degree,
    }


def block_from_dict(obj: Any, where: str = "block") -> GradedBlock:
    trace = _field(obj, "trace", dict, where)
    tw = f"{where}.trace"
    block = Block(
        _field(obj, "kind", str, where),
        _number(trace, "lo", tw),
        _number(trace, "hi", tw),
        not _field(trace, "lo_open", bool, tw),
        not _field(trace, "hi_open", bool, tw),
    )
    return GradedBlock(block, _field(obj, "degree", int, where))


def mv_to_json(system: MVSystem) -> str:
    return dumps({"blocks": [block_to_dict(gb) for gb in system]})


def mv_from_json(text: str) -> MVSystem:
    doc = loads(text)
    _expect_type(doc, "mv-system")
    blocks = _field(doc, "blocks", list, "document")
    return MVSystem(block_from_dict(b, f"blocks[{i}]") for i, b in enumerate(blocks))


# --- meshes ------------------------------------------------------------------


def mesh_to_json(f: PLFunction) -> str:
    cx = f.complex
    top = []
    for d in range(cx.dimension, 0, -1):
        for s in cx.simplices(d):
            # only maximal simplices are needed to rebuild the complex
            if not any(s < t for t in cx.simplices(d + 1)):
                top.append(sorted(str(v) for v in s))
    # ids are written as strings; a complex mixing 1 and "1" cannot be saved
    by_name = {str(v): f.values[v] for v in cx.vertices}
    if len(by_name) != len(cx.vertices):
        raise PreconditionError("vertex ids collide once converted to strings")
    vertices = sorted(by_name)
    doc = {
        "vertices": vertices,
        "simplices": sorted(top, key=lambda s: (len(s), s)),
        "values": {v: fmt(by_name[v]) for v in vertices},
    }
    return dumps(doc)


def mesh_from_json(text: str) -> PLFunction:
    doc = loads(text)
    _expect_type(doc, "mesh")
    vertices = [str(v) for v in _field(doc, "vertices", list, "mesh")]
    simplices = _field(doc, "simplices", list, "mesh")
    raw_values = _field(doc, "values", dict, "mesh")
    known = set(vertices)
    cells = []
    for i, s in enumerate(simplices):
        if not isinstance(s, list) or not s:
            raise MalformedInput(f"mesh.simplices[{i}]: expected a nonempty list of vertex ids")
        ids = [str(v) for v in s]
        unknown = [v for v in ids if v not in known]
        if unknown:
            raise PreconditionError(f"mesh.simplices[{i}]: unknown vertex {unknown[0]!r}")
        cells.append(ids)
    values = {}
    for v in vertices:
        if v not in raw_values:
            raise PreconditionError(f"mesh.values: vertex {v!r} has no value")
        values[v] = _rational(raw_values, v, "mesh.values")
    complex_ = SimplicialComplex(cells, vertices=vertices)
    return PLFunction(complex_, values)


# --- verification reports ------------------------------------------------------


def report_to_json(points: Iterable[tuple], mismatches: Iterable[Mismatch]) -> str:
    points = list(points)
    rows = [
        {
            "x": fmt(m.point[0]),
            "y": fmt(m.point[1]),
            "degree": m.degree,
            "homology_dim": m.homology_dim,
            "system_dim": m.system_dim,
        }
        for m in mismatches
    ]
    return dumps({"type": "pointwise-report", "points": len(points), "mismatches": rows})


def report_from_json(text: str) -> tuple[int, list[Mismatch]]:
    doc = loads(text)
    _expect_type(doc, "pointwise-report")
    n = _field(doc, "points", int, "document")
    out = []
    for i, row in enumerate(_field(doc, "mismatches", list, "document")):
        where = f"mismatches[{i}]"
        point = (_number(row, "x", where), _number(row, "y", where))
        out.append(
            Mismatch(
                point,
                _field(row, "degree", int, where),
                _field(row, "homology_dim", int, where),
                _field(row, "system_dim", int, where),
            )
        )
    return n, out
