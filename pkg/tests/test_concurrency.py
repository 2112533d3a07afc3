import pytest

from errors import InadmissibleMatchError
from graphs.canonical import canonical_key, is_isomorphic
from graphs.multigraph import GraphMorphism, discrete_graph, edge_graph, graph_from_edges
from rewriting.concurrency import analyze, synthesize
from rewriting.derivations import derive, find_matches
from rewriting.overlaps import compose_rules, enumerate_rule_overlaps
from rewriting.rules import edge_creation_rule, edge_deletion_rule, vertex_creation_rule, vertex_deletion_rule
from verification.invariant_checks import check_concurrency_corpus


def two_step(p2, p1, x0):
    for m1 in find_matches(p1, x0):
        x1 = derive(p1, m1, x0)
        for m2 in find_matches(p2, x1):
            yield m1, m2, derive(p2, m2, x1)


def test_vertex_then_edge_creation():
    p2, p1, x0 = edge_creation_rule(), vertex_creation_rule(), discrete_graph(1)
    steps = list(two_step(p2, p1, x0))

    assert len(steps) == 2
    for m1, m2, x2 in steps:
        synthesis = synthesize(p2, m2, p1, m1, x0)
        assert is_isomorphic(x2, edge_graph())
        assert not synthesis.overlap.is_trivial()
        assert synthesis.rule.output.n_edges == 1
        assert is_isomorphic(derive(synthesis.rule, synthesis.match, x0), x2)
        assert analyze(p2, synthesis.overlap, p1, synthesis.match, x0) == (m1, m2)


def test_deleting_the_old_or_the_new_vertex():
    p2, p1 = vertex_deletion_rule(), vertex_creation_rule()
    x0 = discrete_graph(1)
    m1 = find_matches(p1, x0)[0]
    x1 = derive(p1, m1, x0)

    trivial = 0
    for m2 in find_matches(p2, x1):
        synthesis = synthesize(p2, m2, p1, m1, x0)
        trivial += synthesis.overlap.is_trivial()
        assert canonical_key(derive(synthesis.rule, synthesis.match, x0)) == canonical_key(derive(p2, m2, x1))
    assert trivial == 1


def test_every_composite_match_splits_into_two_steps(triangle):
    p2, p1 = edge_deletion_rule(), edge_creation_rule()
    x0 = triangle
    for overlap in enumerate_rule_overlaps(p2, p1):
        composite = compose_rules(p2, overlap, p1)
        for n in find_matches(composite, x0):
            m1, m2 = analyze(p2, overlap, p1, n, x0)
            x1 = derive(p1, m1, x0)
            assert canonical_key(derive(p2, m2, x1)) == canonical_key(derive(composite, n, x0))
            assert synthesize(p2, m2, p1, m1, x0).overlap.class_key() == overlap.class_key()


def test_second_match_must_land_in_the_intermediate_graph():
    p2, p1, x0 = edge_creation_rule(), vertex_creation_rule(), discrete_graph(1)
    m1 = find_matches(p1, x0)[0]
    elsewhere = graph_from_edges([("a", "b")])
    m2 = GraphMorphism(p2.input, elsewhere, {"v0": "a", "v1": "b"})
    with pytest.raises(InadmissibleMatchError):
        synthesize(p2, m2, p1, m1, x0)


def test_concurrency_corpus():
    result = check_concurrency_corpus(seed=0, samples=15)
    assert result.checked > 0
    assert result.passed, result.failures
