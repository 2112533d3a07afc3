from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Tuple

from category.constructions import Span
from errors import GraphValidationError
from graphs.canonical import colored_canonical_form
from graphs.multigraph import (UNDIRECTED, GraphMorphism, Multigraph, check_same_kind, discrete_graph, edge_graph,
                               empty_graph)


@dataclass(frozen=True, order=True)
class RuleKey:
    """Exact key of a rule isomorphism class (isomorphisms of O, K, I commuting with o and i)."""

    kind: str
    code: bytes


@dataclass(frozen=True)
class LinearRule:
    """
    Linear rule O <-o- K -i-> I with monic legs: the items of I outside i(K) are deleted, the items of O outside o(K)
    are created.

    :param output: Output graph O.
    :param context: Context graph K.
    :param input: Input graph I.
    :param o: Monomorphism K -> O.
    :param i: Monomorphism K -> I.
    """

    output: Multigraph
    context: Multigraph
    input: Multigraph
    o: GraphMorphism
    i: GraphMorphism

    def __post_init__(self):
        check_same_kind(self.output, self.context, self.input)
        if self.o.source != self.context or self.i.source != self.context:
            raise GraphValidationError("Rule legs must start at the context graph")
        if self.o.target != self.output or self.i.target != self.input:
            raise GraphValidationError("Rule legs must end at the output and input graphs")
        if not (self.o.is_mono() and self.i.is_mono()):
            raise GraphValidationError("Linear rules need monic legs")

    @property
    def kind(self) -> str:
        return self.context.kind

    @property
    def span(self) -> Span:
        return Span(self.context, self.o, self.i)

    @classmethod
    def from_span(cls, span: Span) -> LinearRule:
        return cls(output=span.left_foot, context=span.apex, input=span.right_foot, o=span.left, i=span.right)

    def vertex_delta(self) -> int:
        return self.output.n_vertices - self.input.n_vertices

    def edge_delta(self) -> int:
        return self.output.n_edges - self.input.n_edges

    def input_rule(self) -> LinearRule:
        """The rule I <-i- K -i-> I whose representation is the observable of the input motif."""
        return LinearRule(output=self.input, context=self.context, input=self.input, o=self.i, i=self.i)

    def reversed(self) -> LinearRule:
        return LinearRule(output=self.input, context=self.context, input=self.output, o=self.i, i=self.o)

    def key(self) -> RuleKey:
        return canonical_rule(self).key

    def to_canonical(self) -> LinearRule:
        return canonical_rule(self).rule

    def __str__(self):
        return f"({self.output} <- {self.context} -> {self.input})"


@dataclass(frozen=True)
class CanonicalRule:
    """
    :param key: Rule class key.
    :param rule: Canonically labeled representative; o and i are identity-named inclusions.
    :param output_iso: Isomorphism from the original output onto rule.output.
    :param context_iso: Isomorphism from the original context onto rule.context.
    :param input_iso: Isomorphism from the original input onto rule.input.
    """

    key: RuleKey
    rule: LinearRule
    output_iso: GraphMorphism
    context_iso: GraphMorphism
    input_iso: GraphMorphism


def _glued_labels(rule: LinearRule) -> Tuple[Dict[str, str], Dict[str, str], Dict[str, str], Dict[str, str],
                                               Dict[str, str], Dict[str, str]]:
    o_inverse_v = {w: v for v, w in rule.o.vertex_map}
    o_inverse_e = {w: v for v, w in rule.o.edge_map}
    i_inverse_v = {w: v for v, w in rule.i.vertex_map}
    i_inverse_e = {w: v for v, w in rule.i.edge_map}

    output_v = {v: f"k/{o_inverse_v[v]}" if v in o_inverse_v else f"o/{v}" for v in rule.output.vertices}
    output_e = {e: f"k/{o_inverse_e[e]}" if e in o_inverse_e else f"o/{e}" for e in rule.output.edges}
    input_v = {v: f"k/{i_inverse_v[v]}" if v in i_inverse_v else f"i/{v}" for v in rule.input.vertices}
    input_e = {e: f"k/{i_inverse_e[e]}" if e in i_inverse_e else f"i/{e}" for e in rule.input.edges}
    return output_v, output_e, input_v, input_e, o_inverse_v, o_inverse_e


@lru_cache(maxsize=65536)
def canonical_rule(rule: LinearRule) -> CanonicalRule:
    """
    Canonicalises a rule through its glued graph O +_K I, colouring every item by where it lives (K, only O, only I).
    Because both legs are monic, the span is recovered from the coloured glued graph, so coloured isomorphism of glued
    graphs is exactly rule isomorphism.

    :param rule: Linear rule.

    :return: CanonicalRule with key, canonical representative and the three comparison isomorphisms.
    """

    output_v, output_e, input_v, input_e, _, _ = _glued_labels(rule)

    incidence, vertex_colors, edge_colors = {}, {}, {}
    for graph, vertex_labels, edge_labels in ((rule.output, output_v, output_e), (rule.input, input_v, input_e)):
        for v in graph.vertices:
            vertex_colors[vertex_labels[v]] = vertex_labels[v][0]
        for edge_id, ends in graph.incidence:
            incidence[edge_labels[edge_id]] = [vertex_labels[v] for v in ends]
            edge_colors[edge_labels[edge_id]] = edge_labels[edge_id][0]

    glued = Multigraph(kind=rule.kind, vertices=vertex_colors, incidence=incidence)
    form = colored_canonical_form(glued, vertex_colors, edge_colors)
    names_v, names_e = form.relabeling.vmap, form.relabeling.emap

    output_iso_v = {v: names_v[output_v[v]] for v in rule.output.vertices}
    output_iso_e = {e: names_e[output_e[e]] for e in rule.output.edges}
    input_iso_v = {v: names_v[input_v[v]] for v in rule.input.vertices}
    input_iso_e = {e: names_e[input_e[e]] for e in rule.input.edges}
    context_iso_v = {v: names_v[f"k/{v}"] for v in rule.context.vertices}
    context_iso_e = {e: names_e[f"k/{e}"] for e in rule.context.edges}

    output = rule.output.relabel(output_iso_v, output_iso_e)
    context = rule.context.relabel(context_iso_v, context_iso_e)
    input_graph = rule.input.relabel(input_iso_v, input_iso_e)
    inclusion_o = GraphMorphism(context, output, {v: v for v in context.vertices}, {e: e for e in context.edges})
    inclusion_i = GraphMorphism(context, input_graph, {v: v for v in context.vertices}, {e: e for e in context.edges})

    canonical = LinearRule(output=output, context=context, input=input_graph, o=inclusion_o, i=inclusion_i)
    return CanonicalRule(key=RuleKey(kind=rule.kind, code=form.key.code),
                         rule=canonical,
                         output_iso=GraphMorphism(rule.output, output, output_iso_v, output_iso_e),
                         context_iso=GraphMorphism(rule.context, context, context_iso_v, context_iso_e),
                         input_iso=GraphMorphism(rule.input, input_graph, input_iso_v, input_iso_e))


def rules_isomorphic(p: LinearRule, q: LinearRule) -> bool:
    return p.kind == q.kind and p.key() == q.key()


def identity_rule(graph: Multigraph) -> LinearRule:
    identity = GraphMorphism.identity(graph)
    return LinearRule(output=graph, context=graph, input=graph, o=identity, i=identity)


def empty_rule(kind: str = UNDIRECTED) -> LinearRule:
    """The rule ∅ <- ∅ -> ∅, whose class is the unit of the rule algebra."""
    return identity_rule(empty_graph(kind))


def discrete_rule(n_output: int, n_input: int, kind: str = UNDIRECTED) -> LinearRule:
    """
    The rule •^n_output <- ∅ -> •^n_input: deletes n_input vertices and creates n_output fresh ones.
    """

    output = discrete_graph(n_output, kind, prefix="o")
    input_graph = discrete_graph(n_input, kind, prefix="i")
    context = empty_graph(kind)
    return LinearRule(output=output, context=context, input=input_graph,
                      o=GraphMorphism(context, output), i=GraphMorphism(context, input_graph))


def vertex_creation_rule(kind: str = UNDIRECTED) -> LinearRule:
    return discrete_rule(1, 0, kind)


def vertex_deletion_rule(kind: str = UNDIRECTED) -> LinearRule:
    return discrete_rule(0, 1, kind)


def edge_creation_rule(kind: str = UNDIRECTED) -> LinearRule:
    """The rule E <- •• -> ••: keeps two vertices and creates one edge between them."""
    pair = discrete_graph(2, kind)
    edge = edge_graph(kind)
    inclusion = GraphMorphism(pair, edge, {"v0": "v0", "v1": "v1"})
    return LinearRule(output=edge, context=pair, input=pair, o=inclusion, i=GraphMorphism.identity(pair))


def edge_deletion_rule(kind: str = UNDIRECTED) -> LinearRule:
    """The rule •• <- •• -> E: deletes one edge, keeps its end vertices."""
    return edge_creation_rule(kind).reversed()
