import json
from pathlib import Path

import pytest
from hypothesis import given

from catlab import io
from catlab.constructions import add_final, grothendieck, pullback, slice
from catlab.core import (
    CatDiagram, InvalidCategory, NatTrans, identity_functor, point, product, simplex, terminal,
)
from catlab.io import DocumentSyntaxError, UnknownKind, VersionUnsupported
from catlab.kan import Theta

from conftest import categories, functors

GOLDEN = Path(__file__).parent / "golden"


def round_trip(obj):
    text = io.serialize(obj)
    env = io.parse(text)
    assert env.payload == obj
    assert io.serialize(env) == text
    return text


# -- golden files ---------------------------------------------------------------

@pytest.mark.parametrize("name, build", [
    ("e", terminal), ("simplex1", lambda: simplex(1)), ("simplex2", lambda: simplex(2)),
])
def test_golden_categories(name, build):
    raw = (GOLDEN / f"{name}.json").read_bytes()
    assert io.serialize(build()).encode("utf-8") == raw
    assert io.serialize(io.parse(raw.decode("utf-8"))).encode("utf-8") == raw


def test_golden_grothendieck():
    F = io.read(str(GOLDEN / "grothendieck_input.json")).payload
    text = io.serialize(grothendieck(F).category)
    assert text.encode("utf-8") == (GOLDEN / "grothendieck.json").read_bytes()
    assert '"1#0"' in text and '"0->1#0#id_0"' in text


def test_serialize_is_stable():
    C = product(simplex(1), simplex(2))
    assert io.serialize(C) == io.serialize(C)
    assert "\r" not in io.serialize(C) and io.serialize(C).endswith("}\n")


# -- round trips ------------------------------------------------------------------

@given(categories())
def test_category_round_trip(C):
    round_trip(C)


@given(functors())
def test_functor_round_trip(u):
    round_trip(u)


def test_construction_round_trips(d1, d0):
    round_trip(slice(identity_functor(d1), "1").category)
    round_trip(add_final(d1)[0])
    round_trip(product(d1, d1))
    round_trip(pullback(d0, identity_functor(d1)).apex)
    F = CatDiagram.from_maps(d1, {"0": terminal(), "1": d1}, {"0->1": d0})
    round_trip(F)
    round_trip(grothendieck(F).category)
    round_trip(Theta(identity_functor(d1)).diagram)


def test_square_and_nat_trans_round_trip(d1, d0):
    sq = pullback(d0, identity_functor(d1))
    env = io.parse(io.serialize(sq))
    assert env.kind == "square"
    assert env.payload.u == d0 and env.payload.v == sq.v
    d1_end = point(d1, "1")
    alpha = NatTrans(d0, d1_end, [d1.mor_index("0->1")])
    round_trip(alpha)


def test_non_canonical_identities_survive():
    raw = {"kind": "category", "format_version": 1, "objects": ["a"], "identity": {"a": "one"},
           "morphisms": [{"id": "one", "src": "a", "tgt": "a"}],
           "compose": [{"after": "one", "before": "one", "equals": "one"}]}
    C = io.parse(json.dumps(raw)).payload
    assert C.mor_ids == ("one",)
    round_trip(C)


# -- errors -------------------------------------------------------------------------

def test_syntax_error_position():
    text = '{\n  "kind": "category",\n  "objects" ["0"]\n}\n'
    with pytest.raises(DocumentSyntaxError) as err:
        io.parse(text)
    assert (err.value.line, err.value.column) == (3, 13)
    assert ":" in err.value.expected


def test_duplicate_morphism_id_is_a_syntax_error():
    text = io.serialize(simplex(2)).replace('"id": "1->2"', '"id": "0->1"')
    with pytest.raises(DocumentSyntaxError) as err:
        io.parse(text)
    assert "0->1" in str(err.value) and err.value.line > 0


def test_duplicate_object_and_key():
    with pytest.raises(DocumentSyntaxError, match="duplicate object"):
        io.parse('{"kind": "category", "format_version": 1, "objects": ["0", "0"], "morphisms": [], "compose": []}')
    with pytest.raises(DocumentSyntaxError, match="duplicate key"):
        io.parse('{"kind": "category", "kind": "category"}')


def test_unknown_kind_and_version():
    with pytest.raises(UnknownKind):
        io.parse('{"kind": "monad", "format_version": 1}')
    with pytest.raises(VersionUnsupported):
        io.parse('{"kind": "category", "format_version": 2, "objects": [], "morphisms": [], "compose": []}')


def test_semantic_errors_come_from_validation():
    text = io.serialize(simplex(2)).replace('"equals": "0->2"', '"equals": "0->1"')
    with pytest.raises(InvalidCategory):
        io.parse(text)


# -- file references ----------------------------------------------------------------

def test_functor_document_with_file_references(tmp_path, d1):
    io.write(str(tmp_path / "e.json"), terminal())
    io.write(str(tmp_path / "d1.json"), d1)
    doc = {"kind": "functor", "format_version": 1, "source": "e.json", "target": "d1.json",
           "object_map": {"0": "1"}, "morphism_map": {}}
    (tmp_path / "u.json").write_text(json.dumps(doc), encoding="utf-8")
    env = io.read(str(tmp_path / "u.json"))
    assert env.payload == point(d1, "1")
    out = json.loads(io.serialize(env))
    assert out["source"] == "e.json" and out["target"] == "d1.json"


def test_missing_reference(tmp_path):
    doc = {"kind": "functor", "format_version": 1, "source": "nope.json", "target": "nope.json",
           "object_map": {}, "morphism_map": {}}
    (tmp_path / "u.json").write_text(json.dumps(doc), encoding="utf-8")
    with pytest.raises(OSError):
        io.read(str(tmp_path / "u.json"))
