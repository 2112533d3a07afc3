import pytest

from category.constructions import (Span, align_spans, compose_spans, coproduct, pullback, pushout, pushout_complement,
                                    pushout_mediator, satisfies_gluing_condition)
from errors import CategoryError
from graphs.canonical import is_isomorphic
from graphs.multigraph import GraphMorphism, discrete_graph, edge_graph, graph_from_edges


def inclusion(source, target):
    return GraphMorphism(source, target, {v: v for v in source.vertices}, {e: e for e in source.edges})


def test_pushout_glues_two_edges_into_a_path():
    point, edge = discrete_graph(1), edge_graph()
    b = GraphMorphism(point, edge, {"v0": "v1"})
    c = GraphMorphism(point, edge, {"v0": "v0"})
    square = pushout(b, c)

    assert is_isomorphic(square.obj, graph_from_edges([("a", "b"), ("b", "c")]))
    assert square.in_b.after(b) == square.in_c.after(c)
    assert square.in_b.is_mono() and square.in_c.is_mono()


def test_pushout_along_identity_is_the_other_leg(triangle):
    sub = graph_from_edges([("a", "b")])
    square = pushout(GraphMorphism.identity(sub), inclusion(sub, triangle))
    assert is_isomorphic(square.obj, triangle)


def test_pushout_is_deterministic():
    point, edge = discrete_graph(1), edge_graph()
    b = GraphMorphism(point, edge, {"v0": "v1"})
    c = GraphMorphism(point, edge, {"v0": "v0"})
    assert pushout(b, c) == pushout(b, c)


def test_pushout_needs_a_common_source():
    with pytest.raises(CategoryError):
        pushout(GraphMorphism.identity(discrete_graph(1)), GraphMorphism.identity(discrete_graph(2)))


def test_coproduct(triangle):
    square = coproduct(triangle, edge_graph())
    assert square.obj.n_vertices == 5
    assert square.obj.n_edges == 4


def test_pushout_mediator(triangle):
    point, edge = discrete_graph(1), edge_graph()
    b = GraphMorphism(point, edge, {"v0": "v1"})
    c = GraphMorphism(point, edge, {"v0": "v0"})
    square = pushout(b, c)

    f = GraphMorphism(edge, triangle, {"v0": "a", "v1": "b"}, {"e0": "e0"})
    g = GraphMorphism(edge, triangle, {"v0": "b", "v1": "c"}, {"e0": "e1"})
    mediator = pushout_mediator(square, f, g)

    assert mediator.after(square.in_b) == f
    assert mediator.after(square.in_c) == g


def test_pushout_mediator_rejects_a_non_commuting_cocone(triangle):
    point, edge = discrete_graph(1), edge_graph()
    square = pushout(GraphMorphism(point, edge, {"v0": "v1"}), GraphMorphism(point, edge, {"v0": "v0"}))
    f = GraphMorphism(edge, triangle, {"v0": "a", "v1": "b"}, {"e0": "e0"})
    g = GraphMorphism(edge, triangle, {"v0": "a", "v1": "c"}, {"e0": "e2"})
    with pytest.raises(CategoryError):
        pushout_mediator(square, f, g)


def test_pullback_of_two_edges_of_a_triangle(triangle):
    left = triangle.subgraph(["a", "b"], ["e0"])
    right = triangle.subgraph(["b", "c"], ["e1"])
    square = pullback(inclusion(left, triangle), inclusion(right, triangle))

    assert square.obj.n_vertices == 1 and square.obj.n_edges == 0
    assert square.f.after(square.p_b) == square.g.after(square.p_c)


def test_pullback_of_an_edge_along_its_vertices():
    edge, pair = edge_graph(), discrete_graph(2)
    square = pullback(GraphMorphism.identity(edge), inclusion(pair, edge))
    assert square.obj.n_vertices == 2 and square.obj.n_edges == 0
    assert square.span.is_mono()


def test_pullback_keeps_parallel_edges():
    double = edge_graph(multiplicity=2)
    square = pullback(GraphMorphism.identity(double), GraphMorphism.identity(double))
    assert is_isomorphic(square.obj, double)


def test_pushout_complement_deletes_an_edge(triangle):
    pair, edge = discrete_graph(2), edge_graph()
    i = inclusion(pair, edge)
    m = GraphMorphism(edge, triangle, {"v0": "a", "v1": "b"}, {"e0": "e0"})
    complement = pushout_complement(i, m)

    assert complement is not None
    assert is_isomorphic(complement.obj, graph_from_edges([("a", "c"), ("c", "b")]))
    assert complement.x.after(complement.k) == m.after(i)
    assert is_isomorphic(pushout(i, complement.k).obj, triangle)


def test_dangling_edge_blocks_vertex_deletion():
    empty, point, edge = discrete_graph(0), discrete_graph(1), edge_graph()
    i = GraphMorphism(empty, point)
    m = GraphMorphism(point, edge, {"v0": "v0"})

    assert not satisfies_gluing_condition(i, m)
    assert pushout_complement(i, m) is None


def test_isolated_vertex_may_be_deleted():
    empty, point = discrete_graph(0), discrete_graph(1)
    i = GraphMorphism(empty, point)
    m = GraphMorphism(point, discrete_graph(2), {"v0": "v1"})
    complement = pushout_complement(i, m)

    assert complement is not None
    assert complement.obj.vertices == ("v0",)


def test_pushout_complement_needs_monomorphisms():
    pair, point = discrete_graph(2), discrete_graph(1)
    collapse = GraphMorphism(pair, point, {"v0": "v0", "v1": "v0"})
    with pytest.raises(CategoryError):
        pushout_complement(collapse, GraphMorphism.identity(point))


def test_compose_spans_intersects_the_middle_legs():
    # (•• <- •• -> E) after (E <- •• -> ••): the middle legs meet in ••
    pair, edge = discrete_graph(2), edge_graph()
    deletion = Span(pair, GraphMorphism.identity(pair), inclusion(pair, edge))
    creation = Span(pair, inclusion(pair, edge), GraphMorphism.identity(pair))
    composite = compose_spans(deletion, creation)

    assert composite.apex.n_vertices == 2 and composite.apex.n_edges == 0
    assert composite.left_foot == pair and composite.right_foot == pair
    assert composite.is_mono()


def test_align_spans_through_an_isomorphism():
    pair, edge = discrete_graph(2), edge_graph()
    other_edge = graph_from_edges([("x", "y")])
    other_pair = discrete_graph(2, prefix="w")
    s = Span(pair, GraphMorphism.identity(pair), inclusion(pair, edge))
    r = Span(other_pair, GraphMorphism(other_pair, other_edge, {"w0": "x", "w1": "y"}),
             GraphMorphism.identity(other_pair))

    with pytest.raises(CategoryError):
        compose_spans(s, r)
    composite = compose_spans(s, align_spans(s, r))
    assert composite.apex.n_vertices == 2


def test_align_spans_rejects_different_middles():
    pair, edge = discrete_graph(2), edge_graph()
    s = Span(pair, GraphMorphism.identity(pair), inclusion(pair, edge))
    with pytest.raises(CategoryError):
        align_spans(s, Span(pair, GraphMorphism.identity(pair), GraphMorphism.identity(pair)))
