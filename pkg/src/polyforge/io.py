"""Text formats: ``poly/1`` face-lattice documents and ``summary/1`` count summaries.

Both are UTF-8 JSON with sorted keys.  ``poly/1`` puts one face or cover per
line so fixtures diff cleanly; serializing a canonical lattice is byte-stable.
"""
from __future__ import annotations

import json
from importlib import resources
from typing import Any

from .errors import PolytopeError
from .lattice import FaceLattice, build_lattice

POLY_FORMAT = "poly/1"
SUMMARY_FORMAT = "summary/1"


class DocumentError(PolytopeError):
    pass


def _line(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def dumps(L: FaceLattice, metadata: dict | None = None, implicit_bounds: bool = False) -> str:
    skip = {L.bottom, L.top} if implicit_bounds else set()
    faces = []
    for f in range(L.n_faces):
        if f in skip:
            continue
        entry: dict[str, Any] = {"id": f, "rank": int(L.face_rank[f])}
        if L.vertex_sets is not None:
            entry["vertex_set"] = list(L.vertex_sets[f])
        faces.append(entry)
    covers = sorted((lo, hi) for lo, hi in L.covers() if lo not in skip and hi not in skip)

    out = ["{"]
    out.append(' "covers": [')
    out.append(",\n".join(f"  [{lo}, {hi}]" for lo, hi in covers))
    out.append(" ],")
    out.append(' "faces": [')
    out.append(",\n".join("  " + _line(e) for e in faces))
    out.append(" ],")
    out.append(f' "format_version": "{POLY_FORMAT}",')
    out.append(f' "implicit_bounds": {"true" if implicit_bounds else "false"},')
    out.append(f' "metadata": {_line(metadata or {})},')
    out.append(f' "rank": {L.rank}')
    out.append("}")
    return "\n".join(line for line in out if line) + "\n"


def _as_label(x):
    return tuple(_as_label(y) for y in x) if isinstance(x, list) else x


def parse_poly(doc: dict) -> tuple[FaceLattice, dict]:
    try:
        rank = int(doc["rank"])
        implicit = bool(doc.get("implicit_bounds", False))
        ranks = {}
        vsets = {}
        for entry in doc["faces"]:
            fid = entry["id"]
            if fid in ranks:
                raise DocumentError(f"duplicate face id {fid}")
            ranks[fid] = int(entry["rank"])
            if "vertex_set" in entry:
                vsets[fid] = tuple(_as_label(x) for x in entry["vertex_set"])
        covers = [(lo, hi) for lo, hi in doc["covers"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"malformed poly/1 document: {exc}") from None
    if implicit:
        bottom, top = ("bottom",), ("top",)
        covers += [(bottom, f) for f, r in ranks.items() if r == 0]
        covers += [(f, top) for f, r in ranks.items() if r == rank - 1]
        ranks = {bottom: -1, **ranks, top: rank}
        if vsets:
            vsets[bottom] = ()
            vsets[top] = tuple(sorted({x for f, r in ranks.items() if r == 0 for x in vsets.get(f, ())}))
    L = build_lattice(rank, covers, ranks, vertex_sets=vsets or None)
    return L, dict(doc.get("metadata") or {})


def loads(text: str) -> tuple[str, Any, dict]:
    """Parse a document: ``("poly", lattice, metadata)`` or ``("summary", fields, metadata)``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    fmt = doc.get("format_version")
    if fmt == POLY_FORMAT:
        L, meta = parse_poly(doc)
        return "poly", L, meta
    if fmt == SUMMARY_FORMAT:
        return "summary", doc, dict(doc.get("metadata") or {})
    raise DocumentError(f"unknown format_version {fmt!r}")


def load_lattice(text: str) -> tuple[FaceLattice, dict]:
    kind, L, meta = loads(text)
    if kind != "poly":
        raise DocumentError(f"expected a {POLY_FORMAT} document, got {kind}")
    return L, meta


def dump_summary(fields: dict) -> str:
    doc = dict(fields)
    doc["format_version"] = SUMMARY_FORMAT
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


# fixtures ------------------------------------------------------------------------

FIXTURE_NAME = "asymmetric_fixture"


def fixture_text(name: str = FIXTURE_NAME) -> tuple[str, str]:
    data = resources.files("polyforge") / "data"
    return (data / f"{name}.poly.json").read_text(), (data / f"{name}.cert.json").read_text()


def load_fixture(name: str = FIXTURE_NAME) -> tuple[FaceLattice, dict]:
    """The frozen fixture lattice and its certificate."""
    poly, cert = fixture_text(name)
    L, _ = load_lattice(poly)
    return L, json.loads(cert)
