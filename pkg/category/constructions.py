from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from errors import CategoryError
from graphs.canonical import find_isomorphism
from graphs.multigraph import GraphMorphism, Multigraph, check_same_kind


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Span:
    """
    Span leftFoot <-left- apex -right-> rightFoot. A linear rule O <- K -> I is the span with apex K.
    """

    apex: Multigraph
    left: GraphMorphism
    right: GraphMorphism

    def __post_init__(self):
        if self.left.source != self.apex or self.right.source != self.apex:
            raise CategoryError("Both legs of a span must start at its apex")

    @property
    def left_foot(self) -> Multigraph:
        return self.left.target

    @property
    def right_foot(self) -> Multigraph:
        return self.right.target

    def is_mono(self) -> bool:
        return self.left.is_mono() and self.right.is_mono()


@dataclass(frozen=True)
class Cospan:
    """
    Cospan leftFoot -left-> target <-right- rightFoot.
    """

    target: Multigraph
    left: GraphMorphism
    right: GraphMorphism

    def __post_init__(self):
        if self.left.target != self.target or self.right.target != self.target:
            raise CategoryError("Both legs of a cospan must end at its target")

    @property
    def left_foot(self) -> Multigraph:
        return self.left.source

    @property
    def right_foot(self) -> Multigraph:
        return self.right.source


@dataclass(frozen=True)
class Pushout:
    """
    Pushout square of b: A -> B and c: A -> C with injections in_b: B -> D and in_c: C -> D.
    """

    b: GraphMorphism
    c: GraphMorphism
    obj: Multigraph
    in_b: GraphMorphism
    in_c: GraphMorphism

    @property
    def cospan(self) -> Cospan:
        return Cospan(self.obj, self.in_b, self.in_c)


@dataclass(frozen=True)
class Pullback:
    """
    Pullback square of f: B -> D and g: C -> D with projections p_b: A -> B and p_c: A -> C.
    """

    f: GraphMorphism
    g: GraphMorphism
    obj: Multigraph
    p_b: GraphMorphism
    p_c: GraphMorphism

    @property
    def span(self) -> Span:
        return Span(self.obj, self.p_b, self.p_c)


@dataclass(frozen=True)
class PushoutComplement:
    """
    Pushout complement of (i: K -> I, m: I -> X): the object K̄ with k: K -> K̄ and x: K̄ -> X such that
    (m, x) is a pushout of (i, k).
    """

    obj: Multigraph
    k: GraphMorphism
    x: GraphMorphism


class _UnionFind:
    def __init__(self, labels):
        self._parent = {label: label for label in labels}

    def find(self, label: str) -> str:
        while self._parent[label] != label:
            self._parent[label] = self._parent[self._parent[label]]
            label = self._parent[label]
        return label

    def union(self, a: str, b: str) -> None:
        # the lexicographically least label stays the representative
        ra, rb = sorted((self.find(a), self.find(b)))
        if ra != rb:
            self._parent[rb] = ra


def _disjoint_labels(b_ids, c_ids) -> Tuple[Dict[str, str], Dict[str, str]]:
    """
    Labels for the disjoint union B ⊎ C. B ids are kept; a C id that clashes with a B id is primed until unique.
    """

    taken = set(b_ids)
    b_labels = {x: x for x in b_ids}
    c_labels = {}
    for x in c_ids:
        label = x
        while label in taken:
            label += "'"
        taken.add(label)
        c_labels[x] = label
    return b_labels, c_labels


def pushout(b: GraphMorphism, c: GraphMorphism) -> Pushout:
    """
    Computes the pushout of the span B <-b- A -c-> C as the quotient of the disjoint union B ⊎ C by the identifications
    b(a) ~ c(a). Class representatives are the lexicographically least labels, so the output is deterministic.

    :param b: Morphism A -> B.
    :param c: Morphism A -> C.

    :return: Pushout with the object D and the injections B -> D, C -> D.
    """

    if b.source != c.source:
        raise CategoryError("Pushout legs must share their source")
    if not (b.is_mono() or c.is_mono()):
        raise CategoryError("Pushouts are only computed along monomorphisms")
    kind = check_same_kind(b.target, c.target)
    left, right = b.target, c.target

    b_vertices, c_vertices = _disjoint_labels(left.vertices, right.vertices)
    b_edges, c_edges = _disjoint_labels(left.edges, right.edges)

    vertex_classes = _UnionFind(list(b_vertices.values()) + list(c_vertices.values()))
    edge_classes = _UnionFind(list(b_edges.values()) + list(c_edges.values()))
    for v in b.source.vertices:
        vertex_classes.union(b_vertices[b.v(v)], c_vertices[c.v(v)])
    for e in b.source.edges:
        edge_classes.union(b_edges[b.e(e)], c_edges[c.e(e)])

    in_b_v = {x: vertex_classes.find(label) for x, label in b_vertices.items()}
    in_c_v = {x: vertex_classes.find(label) for x, label in c_vertices.items()}
    in_b_e = {x: edge_classes.find(label) for x, label in b_edges.items()}
    in_c_e = {x: edge_classes.find(label) for x, label in c_edges.items()}

    incidence = {}
    for graph, edge_map, vertex_map in ((left, in_b_e, in_b_v), (right, in_c_e, in_c_v)):
        for edge_id, ends in graph.incidence:
            incidence.setdefault(edge_map[edge_id], [vertex_map[v] for v in ends])

    obj = Multigraph(kind=kind, vertices=set(in_b_v.values()) | set(in_c_v.values()), incidence=incidence)
    return Pushout(b=b, c=c, obj=obj,
                   in_b=GraphMorphism(left, obj, in_b_v, in_b_e),
                   in_c=GraphMorphism(right, obj, in_c_v, in_c_e))


def coproduct(a: Multigraph, b: Multigraph) -> Pushout:
    """Binary coproduct a + b, i.e. the pushout over the empty (initial) graph."""
    kind = check_same_kind(a, b)
    empty = Multigraph(kind=kind)
    return pushout(GraphMorphism(empty, a), GraphMorphism(empty, b))


def pushout_mediator(square: Pushout, f: GraphMorphism, g: GraphMorphism) -> GraphMorphism:
    """
    The unique comparison morphism u: D -> X out of a pushout with u ∘ in_b = f and u ∘ in_c = g.

    :param square: Pushout of (b, c).
    :param f: Morphism B -> X.
    :param g: Morphism C -> X, with f ∘ b = g ∘ c.

    :return: The mediating morphism D -> X.
    """

    if f.target != g.target:
        raise CategoryError("Cocone legs must share their target")

    vertex_map, edge_map = {}, {}
    for injection, leg in ((square.in_b, f), (square.in_c, g)):
        for x, d in injection.vertex_map:
            if vertex_map.setdefault(d, leg.v(x)) != leg.v(x):
                raise CategoryError("Cocone does not commute with the pushout square")
        for x, d in injection.edge_map:
            if edge_map.setdefault(d, leg.e(x)) != leg.e(x):
                raise CategoryError("Cocone does not commute with the pushout square")
    return GraphMorphism(square.obj, f.target, vertex_map, edge_map)


def _pair_id(x: str, y: str) -> str:
    return json.dumps([x, y], separators=(",", ":"))


def pullback(f: GraphMorphism, g: GraphMorphism) -> Pullback:
    """
    Computes the pullback of the cospan B -f-> D <-g- C as the agreement subobject {(x, y) : f(x) = g(y)} of B × C on
    vertices and edges, with the induced incidence.

    :param f: Morphism B -> D.
    :param g: Morphism C -> D.

    :return: Pullback with the object A and the projections A -> B, A -> C.
    """

    if f.target != g.target:
        raise CategoryError("Pullback legs must share their target")
    left, right = f.source, g.source
    kind = check_same_kind(left, right)

    vertices = {}
    for x in left.vertices:
        for y in right.vertices:
            if f.v(x) == g.v(y):
                vertices[_pair_id(x, y)] = (x, y)

    incidence, edges = {}, {}
    for e in left.edges:
        for e2 in right.edges:
            if f.e(e) != g.e(e2):
                continue
            ends_left, ends_right = left.ends(e), right.ends(e2)
            if left.is_directed:
                ends = [_pair_id(a, b) for a, b in zip(ends_left, ends_right)]
            else:
                ends = sorted({_pair_id(a, b) for a in ends_left for b in ends_right if f.v(a) == g.v(b)})
                if len(ends) > 2:
                    raise CategoryError("Undirected pullback along legs that collapse an edge is not supported")
            edge_id = _pair_id(e, e2)
            incidence[edge_id] = ends
            edges[edge_id] = (e, e2)

    obj = Multigraph(kind=kind, vertices=vertices, incidence=incidence)
    return Pullback(f=f, g=g, obj=obj,
                    p_b=GraphMorphism(obj, left, {p: x for p, (x, _) in vertices.items()},
                                      {p: x for p, (x, _) in edges.items()}),
                    p_c=GraphMorphism(obj, right, {p: y for p, (_, y) in vertices.items()},
                                      {p: y for p, (_, y) in edges.items()}))


def satisfies_gluing_condition(i: GraphMorphism, m: GraphMorphism) -> bool:
    """
    Dangling condition for monic i and m: no edge of X outside the image of m may touch a vertex that is deleted, i.e.
    the m-image of a vertex of I outside i(K). The identification condition is vacuous for monic matches.
    """

    kept_vertices = i.image()[0]
    deleted_vertices = {m.v(v) for v in m.source.vertices if v not in kept_vertices}
    matched_edges = m.image()[1]

    return not any(deleted_vertices.intersection(ends) for edge_id, ends in m.target.incidence
                   if edge_id not in matched_edges)


def pushout_complement(i: GraphMorphism, m: GraphMorphism) -> Optional[PushoutComplement]:
    """
    Computes the pushout complement of K -i-> I -m-> X. K̄ is X without the m-images of the items of I outside i(K);
    the result is re-checked by recomputing pushout(i, k) and verifying that its mediator to X is an isomorphism.

    :param i: Monomorphism K -> I.
    :param m: Monomorphism I -> X.

    :return: The complement, or None if the gluing condition fails.
    """

    if i.target != m.source:
        raise CategoryError("Pushout complement needs composable morphisms K -> I -> X")
    if not (i.is_mono() and m.is_mono()):
        raise CategoryError("Pushout complements are only computed for monomorphisms")
    if not satisfies_gluing_condition(i, m):
        return None

    kept_vertices, kept_edges = i.image()
    deleted_vertices = {m.v(v) for v in m.source.vertices if v not in kept_vertices}
    deleted_edges = {m.e(e) for e in m.source.edges if e not in kept_edges}
    x_graph = m.target
    obj = x_graph.without(deleted_vertices, deleted_edges)

    k = GraphMorphism(i.source, obj,
                      {v: m.v(i.v(v)) for v in i.source.vertices},
                      {e: m.e(i.e(e)) for e in i.source.edges})
    x = GraphMorphism(obj, x_graph, {v: v for v in obj.vertices}, {e: e for e in obj.edges})

    square = pushout(i, k)
    if not pushout_mediator(square, m, x).is_iso():
        raise CategoryError("Pushout complement failed its pushout re-check")
    return PushoutComplement(obj=obj, k=k, x=x)


def compose_spans(s: Span, r: Span) -> Span:
    """
    Composes s = (E <- D -> C) after r = (C <- B -> A) by pulling back D -> C <- B.

    :param s: Span whose right foot is the shared middle object.
    :param r: Span whose left foot is the shared middle object.

    :return: Span E <- F -> A.
    """

    if s.right_foot != r.left_foot:
        raise CategoryError("Spans do not share their middle object, align them first")
    square = pullback(s.right, r.left)
    return Span(square.obj, s.left.after(square.p_b), r.right.after(square.p_c))


def align_spans(s: Span, r: Span) -> Span:
    """
    Re-targets the left leg of r through an explicit isomorphism onto the right foot of s, so that
    compose_spans(s, align_spans(s, r)) is defined whenever the middle objects are isomorphic.

    :return: The realigned copy of r.
    """

    if s.right_foot == r.left_foot:
        return r
    iso = find_isomorphism(r.left_foot, s.right_foot)
    if iso is None:
        raise CategoryError("Middle objects of the spans are not isomorphic")
    logger.debug("Realigned span middle object through %s", iso)
    return Span(r.apex, iso.after(r.left), r.right)
