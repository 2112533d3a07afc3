import networkx as nx
import numpy as np
import pytest

from graphs.canonical import canonical_form, canonical_key, colored_canonical_form, find_isomorphism, is_isomorphic
from graphs.monomorphisms import to_networkx
from graphs.multigraph import DIRECTED, UNDIRECTED, Multigraph, discrete_graph, edge_graph, graph_from_edges


def random_multigraph(rng: np.random.Generator, kind: str, max_vertices: int = 5, max_edges: int = 6) -> Multigraph:
    vertices = [f"n{i}" for i in range(int(rng.integers(1, max_vertices + 1)))]
    edges = [(vertices[int(rng.integers(len(vertices)))], vertices[int(rng.integers(len(vertices)))])
             for _ in range(int(rng.integers(max_edges + 1)))]
    return graph_from_edges(edges, kind=kind, extra_vertices=vertices)


def shuffled(graph: Multigraph, rng: np.random.Generator) -> Multigraph:
    vertices = list(rng.permutation(graph.vertices))
    edges = list(rng.permutation(graph.edges))
    return graph.relabel({v: f"s{vertices.index(v)}" for v in graph.vertices},
                         {e: f"f{edges.index(e)}" for e in graph.edges})


@pytest.mark.parametrize("kind", [UNDIRECTED, DIRECTED])
def test_keys_agree_with_networkx(kind):
    rng = np.random.default_rng(20)
    for _ in range(150):
        g, h = random_multigraph(rng, kind), random_multigraph(rng, kind)
        assert is_isomorphic(g, h) == nx.is_isomorphic(to_networkx(g), to_networkx(h))


@pytest.mark.parametrize("kind", [UNDIRECTED, DIRECTED])
def test_keys_are_invariant_under_relabeling(kind):
    rng = np.random.default_rng(7)
    for _ in range(100):
        g = random_multigraph(rng, kind)
        assert canonical_key(shuffled(g, rng)) == canonical_key(g)


def test_regular_graphs_are_separated():
    # two 2-regular graphs on 6 vertices, refinement alone cannot tell them apart
    hexagon = graph_from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "f"), ("f", "a")])
    triangles = graph_from_edges([("a", "b"), ("b", "c"), ("c", "a"), ("d", "e"), ("e", "f"), ("f", "d")])
    assert not is_isomorphic(hexagon, triangles)


def test_representative_and_relabeling(triangle):
    form = canonical_form(triangle)

    assert form.representative.vertices == ("v0", "v1", "v2")
    assert form.representative.edges == ("e0", "e1", "e2")
    assert form.relabeling.source == triangle
    assert form.relabeling.target == form.representative
    assert form.relabeling.is_iso()


def test_kind_is_part_of_the_key():
    assert canonical_key(discrete_graph(2, DIRECTED)) != canonical_key(discrete_graph(2, UNDIRECTED))


def test_direction_matters():
    forth = graph_from_edges([("a", "b"), ("b", "c")], kind=DIRECTED)
    back = graph_from_edges([("a", "b"), ("c", "b")], kind=DIRECTED)
    assert not is_isomorphic(forth, back)


def test_multiplicity_matters():
    assert not is_isomorphic(edge_graph(multiplicity=2), graph_from_edges([("a", "b")], extra_vertices=[]))
    assert is_isomorphic(edge_graph(multiplicity=2), graph_from_edges([("x", "y"), ("y", "x")]))


def test_find_isomorphism(triangle):
    rng = np.random.default_rng(3)
    other = shuffled(triangle, rng)
    iso = find_isomorphism(triangle, other)

    assert iso is not None and iso.is_iso()
    assert iso.source == triangle and iso.target == other
    assert find_isomorphism(triangle, edge_graph()) is None


def test_colours_restrict_isomorphisms():
    path = graph_from_edges([("a", "b"), ("b", "c")])
    mirrored = {"a": "red", "b": "blue", "c": "blue"}
    flipped = {"a": "blue", "b": "blue", "c": "red"}
    middle = {"a": "blue", "b": "red", "c": "blue"}
    edges = {"e0": "x", "e1": "x"}

    assert (colored_canonical_form(path, mirrored, edges).key
            == colored_canonical_form(path, flipped, edges).key)
    assert (colored_canonical_form(path, mirrored, edges).key
            != colored_canonical_form(path, middle, edges).key)
