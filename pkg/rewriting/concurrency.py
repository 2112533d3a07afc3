from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from category.constructions import pullback, pushout_mediator, satisfies_gluing_condition
from errors import InadmissibleMatchError
from graphs.multigraph import GraphMorphism, Multigraph
from rewriting.derivations import derivation
from rewriting.overlaps import RuleComposition, RuleOverlap, compose_rules_detailed
from rewriting.rules import LinearRule


@dataclass(frozen=True)
class Synthesis:
    """
    One-step counterpart of a two-step derivation.

    :param overlap: Overlap of p₂ into p₁ read off the two matches.
    :param match: Match of the composite rule into X₀.
    :param rule: Composite rule (canonical labeling).
    :param composition: Full composition diagram.
    """

    overlap: RuleOverlap
    match: GraphMorphism
    rule: LinearRule
    composition: RuleComposition


def _check_match(p: LinearRule, m: GraphMorphism, x: Multigraph) -> None:
    if m.source != p.input or m.target != x or not m.is_mono() or not satisfies_gluing_condition(p.i, m):
        raise InadmissibleMatchError("Match is not admissible for the rule on the given graph")


def _map_items(graph: Multigraph, vertex, edge) -> Tuple[Dict[str, str], Dict[str, str]]:
    return {v: vertex(v) for v in graph.vertices}, {e: edge(e) for e in graph.edges}


def synthesize(p2: LinearRule,
               m2: GraphMorphism,
               p1: LinearRule,
               m1: GraphMorphism,
               x0: Multigraph) -> Synthesis:
    """
    Synthesis half of the concurrency theorem. The overlap is the pullback of I₂ -m₂-> X₁ <-m₁*- O₁, and the match of
    the composite rule is the mediator out of I₂₁ = I₁ +_K₁ K̄₁ built from m₁ and the context of the first step.

    :param p2: Rule applied second.
    :param m2: Admissible match of p₂ into X₁ = derive(p₁, m₁, X₀).
    :param p1: Rule applied first.
    :param m1: Admissible match of p₁ into X₀.
    :param x0: Initial graph.

    :return: Synthesis with overlap, composite rule and its match into X₀.
    """

    _check_match(p1, m1, x0)
    first = derivation(p1, m1, x0)
    _check_match(p2, m2, first.result)

    square = pullback(m2, first.comatch)
    overlap = RuleOverlap(square.obj, square.p_b, square.p_c)
    composition = compose_rules_detailed(p2, overlap, p1)

    into_x1 = pushout_mediator(composition.glued, m2, first.comatch)
    back_v, back_e = first.backward()
    context = composition.right_complement

    def vertex(z: str) -> str:
        image = into_x1.v(context.x.v(z))
        if image not in back_v:
            raise InadmissibleMatchError("Composite context reaches an item created by the first step")
        return back_v[image]

    def edge(z: str) -> str:
        image = into_x1.e(context.x.e(z))
        if image not in back_e:
            raise InadmissibleMatchError("Composite context reaches an item created by the first step")
        return back_e[image]

    context_to_x0 = GraphMorphism(context.obj, x0, *_map_items(context.obj, vertex, edge))
    raw_match = pushout_mediator(composition.input_square, m1, context_to_x0)
    match = raw_match.after(composition.canonical.input_iso.inverse())
    return Synthesis(overlap=overlap, match=match, rule=composition.rule, composition=composition)


def analyze(p2: LinearRule,
            overlap: RuleOverlap,
            p1: LinearRule,
            n: GraphMorphism,
            x0: Multigraph) -> Tuple[GraphMorphism, GraphMorphism]:
    """
    Analysis half of the concurrency theorem: splits a match of the composite rule into the two matches of the
    sequential derivation.

    :param p2: Rule applied second.
    :param overlap: Admissible overlap of p₂ into p₁.
    :param p1: Rule applied first.
    :param n: Admissible match of compose_rules(p₂, overlap, p₁) into X₀.
    :param x0: Initial graph.

    :return: (m₁, m₂) with m₁: I₁ -> X₀ and m₂: I₂ -> X₁.
    """

    composition = compose_rules_detailed(p2, overlap, p1)
    _check_match(composition.rule, n, x0)
    raw_match = n.after(composition.canonical.input_iso)

    m1 = raw_match.after(composition.input_square.in_b)
    first = derivation(p1, m1, x0)
    forward_v, forward_e = first.forward()

    glued = composition.glued
    context = composition.right_complement
    from_output_v = {d: o for o, d in glued.in_c.vertex_map}
    from_output_e = {d: o for o, d in glued.in_c.edge_map}
    from_context_v = {d: z for z, d in context.x.vertex_map}
    from_context_e = {d: z for z, d in context.x.edge_map}

    def vertex(y: str) -> str:
        d = glued.in_b.v(y)
        if d in from_output_v:
            return first.comatch.v(from_output_v[d])
        return forward_v[raw_match.v(composition.input_square.in_c.v(from_context_v[d]))]

    def edge(y: str) -> str:
        d = glued.in_b.e(y)
        if d in from_output_e:
            return first.comatch.e(from_output_e[d])
        return forward_e[raw_match.e(composition.input_square.in_c.e(from_context_e[d]))]

    m2 = GraphMorphism(p2.input, first.result, *_map_items(p2.input, vertex, edge))
    _check_match(p2, m2, first.result)
    return m1, m2
