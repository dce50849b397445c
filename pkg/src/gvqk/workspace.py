"""JSON workspace files: a geometry, a truncation, invariant tables and an optional ring.

Rationals are written as canonical strings (``"9/8"``, ``"-3"``); JSON
integers are accepted on input, floats never.  Unknown fields are rejected.
Serialization is byte-stable: keys in fixed order, classes sorted, rationals
reduced.

Example::

    {
      "format": 1,
      "geometry": {"label": "X", "dim": 3, "rank": 1, "canonical_pairing": [0]},
      "truncation": {"weights": [1], "cutoff": 4},
      "tables": [
        {"kind": "GV", "n": 0, "insertion_degrees": [],
         "entries": [[[1], "5"], [[2], "7"]]}
      ]
    }
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import char_ring
from .curve_lattice import CurveClass, GeometryModel, Truncation
from .errors import GVQKError, NotDivisorClosed, ValidationError
from .transforms import InvariantTable, check_divisor_closed, format_rational

FORMAT_VERSION = 1

_RATIONAL = re.compile(r"^-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?$")


class WorkspaceError(ValidationError):
    """A workspace failed to parse or validate; ``errors`` lists every finding."""

    def __init__(self, errors: list[dict]):
        self.errors = errors
        super().__init__("; ".join(f"{e['where']}: {e['message']}" for e in errors))


def parse_rational(value: Any) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ValidationError(f"rationals must be exact, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str) or not _RATIONAL.match(value):
        raise ValidationError(f"not a rational string: {value!r}")
    x = Fraction(value)
    if format_rational(x) != value:
        raise ValidationError(f"rational {value!r} is not in reduced form")
    return x


def _int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{what} must be an integer, got {value!r}")
    return value


def _fields(block: Any, where: str, required: set[str], optional: set[str] = frozenset()) -> dict:
    if not isinstance(block, dict):
        raise ValidationError(f"{where} must be an object")
    unknown = set(block) - required - optional
    if unknown:
        raise ValidationError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = required - set(block)
    if missing:
        raise ValidationError(f"{where}: missing field(s) {sorted(missing)}")
    return block


@dataclass
class Workspace:
    geometry: GeometryModel
    truncation: Truncation
    tables: list[InvariantTable] = field(default_factory=list)
    labels: list[str] = field(default_factory=list)
    ring: char_ring.GradedRing | None = None
    ring_block: dict | None = None
    kmodel: char_ring.KClassModel | None = None
    kclasses_block: dict | None = None

    def table(self, selector: str | int | None = None, kind: str | None = None) -> InvariantTable:
        candidates = [
            (i, t) for i, t in enumerate(self.tables) if kind is None or t.kind == kind
        ]
        if selector is not None:
            candidates = [
                (i, t) for i, t in candidates
                if str(selector) == str(i) or str(selector) == self.labels[i]
            ]
        if len(candidates) != 1:
            raise ValidationError(
                f"expected exactly one {kind or ''} table matching {selector!r}, "
                f"found {len(candidates)}"
            )
        return candidates[0][1]


# ---------------------------------------------------------------------------
# parsing


def parse_geometry(block: Any) -> GeometryModel:
    _fields(block, "geometry", {"dim", "rank", "canonical_pairing"}, {"label"})
    pairing = block["canonical_pairing"]
    if not isinstance(pairing, list):
        raise ValidationError("geometry.canonical_pairing must be a list")
    pairing = tuple(_int(k, "canonical pairing entry") for k in pairing)
    rank = _int(block["rank"], "geometry.rank")
    if rank != len(pairing):
        raise ValidationError(f"geometry.rank is {rank} but canonical_pairing has {len(pairing)} entries")
    label = block.get("label", "")
    if not isinstance(label, str):
        raise ValidationError("geometry.label must be a string")
    return GeometryModel(_int(block["dim"], "geometry.dim"), pairing, label)


def parse_truncation(block: Any) -> Truncation:
    _fields(block, "truncation", {"weights", "cutoff"})
    if not isinstance(block["weights"], list):
        raise ValidationError("truncation.weights must be a list")
    weights = tuple(_int(w, "truncation weight") for w in block["weights"])
    return Truncation(weights, _int(block["cutoff"], "truncation.cutoff"))


_TABLE_FIELDS = {"kind", "n", "entries"}
_TABLE_OPTIONAL = {"label", "insertion_degrees", "insertion_cohomological_degrees", "support"}


def parse_table(block: Any, geom: GeometryModel, trunc: Truncation, where: str = "table") -> InvariantTable:
    _fields(block, where, _TABLE_FIELDS, _TABLE_OPTIONAL)
    n = _int(block["n"], f"{where}.n")
    if "insertion_degrees" in block and "insertion_cohomological_degrees" in block:
        raise ValidationError(f"{where}: give insertion degrees only once")
    if "insertion_cohomological_degrees" in block:
        real = [_int(d, "insertion degree") for d in block["insertion_cohomological_degrees"]]
        odd = [d for d in real if d % 2]
        if odd:
            raise ValidationError(f"{where}: odd insertion degree(s) {odd}; only even classes are allowed")
        degrees = [d // 2 for d in real]
    else:
        degrees = [_int(d, "insertion degree") for d in block.get("insertion_degrees", [])]
    support = block.get("support", "explicit")
    if support not in ("explicit", "complete"):
        raise ValidationError(f"{where}.support must be 'explicit' or 'complete'")
    entries: dict[CurveClass, Fraction] = {}
    if not isinstance(block["entries"], list):
        raise ValidationError(f"{where}.entries must be a list")
    for item in block["entries"]:
        if not (isinstance(item, list) and len(item) == 2 and isinstance(item[0], list)):
            raise ValidationError(f"{where}: entries must be [[coords...], value] pairs")
        beta = CurveClass(_int(c, "coordinate") for c in item[0])
        if beta in entries:
            raise ValidationError(f"{where}: duplicate entry for {beta}")
        entries[beta] = parse_rational(item[1])
    table = InvariantTable(
        block["kind"], n, tuple(degrees), geom, entries, trunc, support == "complete"
    )
    check_divisor_closed(table)
    return table


def parse_ring(block: Any) -> char_ring.GradedRing:
    if isinstance(block, dict) and "builtin" in block:
        _fields(block, "ring", {"builtin"}, {"degree", "c2_dot_h", "euler"})
        name = block["builtin"]
        m = re.fullmatch(r"P([1-9][0-9]*)", str(name))
        if m:
            if len(block) > 1:
                raise ValidationError("ring: projective space takes no parameters")
            return char_ring.projective_space(int(m.group(1)))
        if name == "CY3":
            kw = {k: _int(block[k], f"ring.{k}") for k in ("degree", "c2_dot_h", "euler") if k in block}
            return char_ring.calabi_yau_threefold(**kw)
        raise ValidationError(f"ring: unknown builtin {name!r}")
    _fields(block, "ring", {"basis", "unit", "top", "products"}, {"label", "volume", "chern"})
    names, degrees = [], []
    for b in block["basis"]:
        _fields(b, "ring.basis[]", {"name", "degree"})
        names.append(b["name"])
        degrees.append(_int(b["degree"], "basis degree"))
    products = {}
    for p in block["products"]:
        if not (isinstance(p, list) and len(p) == 3 and isinstance(p[2], dict)):
            raise ValidationError("ring.products entries must be [a, b, {name: coeff}]")
        products[(p[0], p[1])] = {k: parse_rational(v) for k, v in p[2].items()}
    chern = [{k: parse_rational(v) for k, v in c.items()} for c in block.get("chern", [])]
    return char_ring.GradedRing(
        names, degrees, products, unit=block["unit"], top=block["top"],
        volume=parse_rational(block.get("volume", 1)), chern=chern, label=block.get("label", ""),
    )


def parse_kclasses(block: Any, ring: char_ring.GradedRing) -> char_ring.KClassModel:
    if isinstance(block, dict) and block.get("builtin") == "standard":
        _fields(block, "kclasses", {"builtin"})
        return char_ring.standard_k_model(ring)
    _fields(block, "kclasses", {"classes"}, {"label"})
    classes = []
    for c in block["classes"]:
        _fields(c, "kclasses.classes[]", {"label", "ch"})
        classes.append(
            char_ring.KClass(c["label"], ring.element({k: parse_rational(v) for k, v in c["ch"].items()}))
        )
    return char_ring.KClassModel(ring, classes, block.get("label", ""))


def _error(where: str, exc: Exception) -> dict:
    err = {"where": where, "error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, NotDivisorClosed):
        err["beta"] = list(exc.beta.coords)
        err["missing"] = list(exc.missing.coords)
    return err


def check_data(data: Any) -> tuple[Workspace | None, list[dict]]:
    """Parse a decoded workspace, collecting the first failure of every section."""
    errors: list[dict] = []
    try:
        _fields(data, "workspace", {"format", "geometry", "truncation", "tables"}, {"ring", "kclasses"})
        if data["format"] != FORMAT_VERSION:
            raise ValidationError(f"unsupported format {data['format']!r}, expected {FORMAT_VERSION}")
    except GVQKError as exc:
        return None, [_error("workspace", exc)]
    try:
        geom = parse_geometry(data["geometry"])
        trunc = parse_truncation(data["truncation"])
        if trunc.rank != geom.rank:
            raise ValidationError("truncation.weights and geometry have different ranks")
    except GVQKError as exc:
        return None, [_error("geometry", exc)]
    ws = Workspace(geom, trunc)
    if not isinstance(data["tables"], list):
        return None, [_error("tables", ValidationError("tables must be a list"))]
    for i, block in enumerate(data["tables"]):
        where = f"tables[{i}]"
        try:
            table = parse_table(block, geom, trunc, where)
            label = block.get("label", "")
            if not isinstance(label, str):
                raise ValidationError(f"{where}.label must be a string")
            ws.tables.append(table)
            ws.labels.append(label)
        except GVQKError as exc:
            errors.append(_error(where, exc))
    if "ring" in data:
        try:
            ws.ring = parse_ring(data["ring"])
            ws.ring_block = data["ring"]
        except GVQKError as exc:
            errors.append(_error("ring", exc))
    if "kclasses" in data:
        try:
            if ws.ring is None:
                raise ValidationError("kclasses needs a ring block")
            ws.kmodel = parse_kclasses(data["kclasses"], ws.ring)
            ws.kclasses_block = data["kclasses"]
        except GVQKError as exc:
            errors.append(_error("kclasses", exc))
    return (None if errors else ws), errors


def loads(text: str) -> Workspace:
    try:
        data = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise WorkspaceError([{"where": "json", "error": "JSONDecodeError", "message": str(exc)}]) from None
    except ValidationError as exc:
        raise WorkspaceError([_error("json", exc)]) from None
    ws, errors = check_data(data)
    if errors:
        raise WorkspaceError(errors)
    return ws


def _reject_float(text: str):
    raise ValidationError(f"floating point number {text} in workspace; use rational strings")


def load(path: str | Path) -> Workspace:
    return loads(Path(path).read_text())


# ---------------------------------------------------------------------------
# serialization


def table_block(table: InvariantTable, label: str = "") -> dict:
    block: dict[str, Any] = {}
    if label:
        block["label"] = label
    block["kind"] = table.kind
    block["n"] = table.n
    block["insertion_degrees"] = list(table.insertion_degrees)
    if table.complete:
        block["support"] = "complete"
    block["entries"] = [[list(b.coords), format_rational(v)] for b, v in table.entries.items()]
    return block


def to_data(ws: Workspace) -> dict:
    geom = {"label": ws.geometry.label, "dim": ws.geometry.dim, "rank": ws.geometry.rank,
            "canonical_pairing": list(ws.geometry.canonical_pairing)}
    if not ws.geometry.label:
        del geom["label"]
    data: dict[str, Any] = {
        "format": FORMAT_VERSION,
        "geometry": geom,
        "truncation": {"weights": list(ws.truncation.weights), "cutoff": ws.truncation.cutoff},
        "tables": [
            table_block(t, ws.labels[i] if i < len(ws.labels) else "")
            for i, t in enumerate(ws.tables)
        ],
    }
    if ws.ring_block is not None:
        data["ring"] = ws.ring_block
    if ws.kclasses_block is not None:
        data["kclasses"] = ws.kclasses_block
    return data


def dumps(ws: Workspace) -> str:
    return json.dumps(to_data(ws), indent=2, sort_keys=False) + "\n"


def dump(ws: Workspace, path: str | Path) -> None:
    Path(path).write_text(dumps(ws))
