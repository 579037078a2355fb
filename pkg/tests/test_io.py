import json

import pytest

from polyforge import constructions as C
from polyforge.io import DocumentError, dump_summary, dumps, load_lattice, loads
from polyforge.properties import f_vector
from polyforge.symmetry import isomorphic

from conftest import CORPUS_NAMES, corpus_item


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_round_trip(name):
    L = corpus_item(name)
    text = dumps(L, {"name": name})
    L2, meta = load_lattice(text)
    assert meta == {"name": name}
    assert isomorphic(L, L2)
    # canonical ids survive the trip, so a second dump is byte-identical
    assert dumps(L2, meta) == text


@pytest.mark.parametrize("name", ["cube", "fixture", "{4,4}_(3,0)"])
def test_implicit_bounds(name):
    L = corpus_item(name)
    text = dumps(L, implicit_bounds=True)
    doc = json.loads(text)
    assert doc["implicit_bounds"] is True
    assert all(-1 < f["rank"] < L.rank for f in doc["faces"])
    L2, _ = load_lattice(text)
    assert f_vector(L2) == f_vector(L)
    assert isomorphic(L, L2)


def test_document_shape():
    text = dumps(C.polygon(3), {"name": "triangle"})
    doc = json.loads(text)
    assert doc["format_version"] == "poly/1"
    assert doc["rank"] == 2
    assert len(doc["faces"]) == 8
    assert list(doc) == sorted(doc)
    # one face or cover per line
    assert sum(1 for line in text.splitlines() if line.strip().startswith('{"id"')) == 8


def test_vertex_sets_serialized():
    L = C.simplex(2)
    doc = json.loads(dumps(L))
    assert any("vertex_set" in f for f in doc["faces"])
    L2, _ = load_lattice(dumps(L))
    assert L2.vertex_sets == L.vertex_sets


def test_summary_document():
    text = dump_summary({"v": 3, "f_vector": [1, 8, 12, 6, 1]})
    kind, doc, meta = loads(text)
    assert kind == "summary" and doc["v"] == 3 and meta == {}
    with pytest.raises(DocumentError):
        load_lattice(text)


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[1, 2]",
        '{"format_version": "poly/9"}',
        '{"format_version": "poly/1", "rank": 1}',
        '{"format_version": "poly/1", "rank": 1, "faces": [{"id": 0, "rank": -1}, {"id": 0, "rank": 1}], "covers": []}',
    ],
)
def test_malformed_documents(text):
    with pytest.raises(DocumentError):
        loads(text)
