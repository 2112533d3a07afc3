import json

import pytest

from errors import GraphValidationError
from graphs.graph_io import dump_json, graph_from_dict, load_graph, morphism_from_dict, morphism_to_dict
from graphs.multigraph import DIRECTED, UNDIRECTED, GraphMorphism, edge_graph, graph_from_edges
from rewriting.rule_io import load_rule, rule_from_dict, rule_to_dict
from rewriting.rules import edge_creation_rule, rules_isomorphic


def test_directed_graph_from_dict():
    g = graph_from_dict({"kind": "directed",
                         "vertices": ["a", "b"],
                         "edges": [{"id": "x", "src": "b", "tgt": "a"}]})
    assert g.kind == DIRECTED
    assert g.ends("x") == ("b", "a")


def test_undirected_graph_from_dict_with_loop():
    g = graph_from_dict({"kind": "undirected", "vertices": [1, 2], "edges": [{"id": 0, "ends": [1, 1]}]})
    assert g.vertices == ("1", "2")
    assert g.ends("0") == ("1",)


@pytest.mark.parametrize("data", [
    [],
    {"kind": "hyper", "vertices": []},
    {"kind": "directed", "vertices": ["a"], "edges": [{"id": "x", "ends": ["a", "a"]}]},
    {"kind": "undirected", "vertices": ["a"], "edges": [{"ends": ["a"]}]},
    {"kind": "undirected", "vertices": ["a"], "edges": [{"id": "x", "ends": ["a"]}, {"id": "x", "ends": ["a"]}]},
    {"kind": "undirected", "vertices": ["a"], "edges": [{"id": "x", "ends": ["a", "b"]}]},
])
def test_malformed_graphs_are_rejected(data):
    with pytest.raises(GraphValidationError):
        graph_from_dict(data)


def test_to_dict_is_read_back(kind):
    g = graph_from_edges([("a", "b"), ("b", "b")], kind=kind, extra_vertices=["c"])
    assert graph_from_dict(g.to_dict()) == g


def test_morphism_maps():
    source, target = edge_graph(UNDIRECTED), graph_from_edges([("a", "b")])
    morphism = morphism_from_dict({"vmap": {"v0": "a", "v1": "b"}, "emap": {"e0": "e0"}}, source, target)

    assert morphism_to_dict(morphism) == {"vmap": {"v0": "a", "v1": "b"}, "emap": {"e0": "e0"}}
    with pytest.raises(GraphValidationError):
        morphism_from_dict({"vmap": {"v0": "a"}}, source, target)


def test_load_graph(tmp_path):
    path = tmp_path / "graph.json"
    path.write_text(json.dumps(edge_graph().to_dict()), encoding="utf-8")
    assert load_graph(path) == edge_graph()

    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    with pytest.raises(GraphValidationError):
        load_graph(broken)


def test_dump_json_is_sorted_with_trailing_newline():
    text = dump_json({"b": 1, "a": [1, 2]})
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"')


def test_rule_is_read_back(tmp_path):
    rule = edge_creation_rule()
    path = tmp_path / "rule.json"
    path.write_text(dump_json(rule_to_dict(rule)), encoding="utf-8")

    assert load_rule(path) == rule
    assert rules_isomorphic(rule_from_dict(rule_to_dict(rule)), rule)


def test_rule_needs_every_field():
    data = rule_to_dict(edge_creation_rule())
    del data["i"]
    with pytest.raises(GraphValidationError, match="missing"):
        rule_from_dict(data)


def test_rule_legs_must_be_monic():
    data = rule_to_dict(edge_creation_rule())
    data["context"] = {"kind": "undirected", "vertices": ["v0", "v1"], "edges": []}
    data["o"] = {"vmap": {"v0": "v0", "v1": "v0"}, "emap": {}}
    with pytest.raises(GraphValidationError):
        rule_from_dict(data)


def test_rule_morphism_targets_are_checked():
    data = rule_to_dict(edge_creation_rule())
    data["i"] = {"vmap": {"v0": "nowhere", "v1": "v1"}, "emap": {}}
    with pytest.raises(GraphValidationError):
        rule_from_dict(data)


def test_identity_morphism_dict(triangle):
    identity = GraphMorphism.identity(triangle)
    assert morphism_from_dict(morphism_to_dict(identity), triangle, triangle) == identity
