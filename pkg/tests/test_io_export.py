import json

import pytest
from hypothesis import given, settings, strategies as st

from dendro import io
from dendro.dendroidal.presheaves import representable
from dendro.elements import ElementsOperad
from dendro.export import ExportError, export
from dendro.operads import CommutativeOperad, TableOperad, TreeOperad
from dendro.trees import Tree, corolla, enumerate_trees, eta, linear, parse_tree


def test_eta_json_is_compact():
    assert export(eta("e"), "json") == b'{"root":"e","vertices":[]}'


def test_corolla_dot_has_a_node_per_edge_and_vertex():
    text = export(corolla(2), "dot").decode()
    assert text.startswith("digraph")
    assert text.count("shape=ellipse") == 3
    assert text.count("shape=diamond") == 1
    assert text.count("->") == 3


def test_operad_dot_and_json():
    P = TreeOperad(linear(1))
    dot = export(P, "dot").decode()
    assert dot.startswith("digraph")
    doc = json.loads(export(P, "json"))
    assert doc["schema"] == io.SCHEMA


def test_elements_export_counts_objects():
    E = ElementsOperad(representable(corolla(2)), 2)
    doc = json.loads(export(E, "json"))
    assert doc["kind"] == "elements" and len(doc["objects"]) == len(E.objects) == 15
    with_ops = json.loads(export(E, "json", max_arity=2))
    assert len(with_ops["operations"]) == sum(1 for _ in E.iter_operations(2))


def test_unknown_format():
    with pytest.raises(ExportError):
        export(corolla(1), "svg")
    with pytest.raises(ExportError):
        export(object(), "json")


@given(st.sampled_from(enumerate_trees(4, 3)))
@settings(max_examples=50, deadline=None)
def test_tree_json_round_trip(t):
    doc = json.loads(export(t, "json"))
    assert io.tree_from_json(doc) == t
    assert Tree.from_json(t.to_json()) == t


def test_tree_from_grammar_string():
    assert io.tree_from_json("r[a,b]") == parse_tree("r[a,b]")


def test_table_operad_round_trip():
    P = TableOperad(["x", "y"], [("f", ["x"], "y")])
    Q = io.operad_from_json({"schema": io.SCHEMA, **P.to_json()})
    assert Q.to_json() == P.to_json()


def test_operad_document_kinds():
    P = io.operad_from_json({"schema": io.SCHEMA, "tree": "r[a,b]"})
    assert isinstance(P, TreeOperad) and len(P.objects) == 3
    assert isinstance(io.operad_from_json({"schema": io.SCHEMA, "commutative": "*"}), CommutativeOperad)


def test_schema_is_checked():
    with pytest.raises(io.SchemaError):
        io.operad_from_json({"tree": "r[a]"})
    with pytest.raises(io.SchemaError):
        io.unwrap({"schema": io.SCHEMA, "kind": "operad"}, "decalage")
    with pytest.raises(io.SchemaError):
        io.presheaf_from_json({"schema": io.SCHEMA}, 1)


def test_presheaf_documents():
    X = io.presheaf_from_json({"schema": io.SCHEMA, "representable": "r[a]"}, 1)
    Y = io.presheaf_from_json({"schema": io.SCHEMA, "nerve_of": {"tree": "r[a]"}}, 1)
    for t in enumerate_trees(1, 1):
        assert len(X.dendrices(t)) == len(Y.dendrices(t))


def test_dumps_is_deterministic(tmp_path):
    doc = io.envelope("thing", {"b": 1, "a": [1, 2]})
    assert io.dumps(doc) == io.dumps(dict(reversed(list(doc.items()))))
    path = tmp_path / "doc.json"
    path.write_text(io.dumps(doc))
    assert io.load(path) == doc


def test_decalage_document_needs_every_operad_map():
    doc = {
        "schema": io.SCHEMA, "kind": "decalage",
        "category": {"objects": ["a", "b"], "arrows": [{"name": "f", "source": "a", "target": "b"}],
                     "composition": []},
        "omega": {"a": {"objects": ["x"]}, "b": {"objects": ["y"]}},
        "root": {"a": "x", "b": "y"}, "base": "a", "shift": {"a": "b", "b": "b"},
        "shift_map": {"f": "id_b"}, "iota": {"a": "f", "b": "id_b"}, "gamma": {"a": "f", "b": "f"},
    }
    d = io.decalage_from_json(doc)
    with pytest.raises(io.SchemaError):
        d.omega_map("f")
    doc["omega_maps"] = {"f": {"objects": {"x": "y"}}}
    assert io.decalage_from_json(doc).omega_map("f").on_objects("x") == "y"
