import json
import os

import pytest

from conftest import fixture_dir
from hodgegauge.documents import DocumentError, parse, serialize
from hodgegauge.fixtures import (
    kummer,
    kummer_delta,
    named_corpus,
    real_corpus,
    t3_delta,
)
from hodgegauge.connection import connection_from_delta
from hodgegauge.scalars import FieldError, Scalar


def test_roundtrip_named_corpus():
    for name, V in named_corpus():
        doc = serialize(V)
        # documents survive a JSON encode/decode cycle unchanged
        doc = json.loads(json.dumps(doc))
        assert parse(doc) == V


def test_roundtrip_real_documents():
    for name, V in real_corpus():
        doc = json.loads(json.dumps(serialize(V)))
        back = parse(doc)
        assert back.W == V.W and back.F == V.F


def test_roundtrip_delta_and_connection():
    d = t3_delta(2, 5)
    assert parse(serialize(d)) == d
    C = connection_from_delta(d)
    assert parse(serialize(C)) == C


def test_field_restriction():
    doc = serialize(kummer(Scalar(2, 1)))
    parse(doc, "Qi")
    with pytest.raises(FieldError):
        parse(doc, "Q")
    assert parse(serialize(kummer(3)), "Q") == kummer(3)


def test_malformed_documents():
    with pytest.raises(DocumentError):
        parse({"no": "type"})
    with pytest.raises(DocumentError):
        parse({"type": "widget"})
    doc = serialize(kummer(1))
    del doc["W"]
    with pytest.raises(DocumentError):
        parse(doc)
    bad = serialize(kummer(1))
    bad["Fp"]["steps"]["0"] = [["not-a-scalar", "0/1"]]
    with pytest.raises(DocumentError):
        parse(bad)


def test_shipped_corpus_parses():
    d = fixture_dir()
    files = sorted(os.listdir(d))
    assert len(files) >= 20
    for name in files:
        with open(os.path.join(d, name)) as fh:
            doc = json.load(fh)
        obj = parse(doc)
        assert json.loads(json.dumps(serialize(obj))) == serialize(obj)
