from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

from category.constructions import (Pushout, PushoutComplement, Span, compose_spans, pushout,
                                    pushout_complement, satisfies_gluing_condition)
from errors import CategoryError, InadmissibleMatchError
from graphs.monomorphisms import enumerate_monos
from graphs.multigraph import GraphMorphism, Multigraph, check_same_kind
from rewriting.rules import CanonicalRule, LinearRule, canonical_rule


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RuleOverlap:
    """
    Mono-legged span I₂ <- M -> O₁ along which p₂ is composed after p₁.

    Two overlaps are the same class when an isomorphism of apexes commutes with both legs; with monic legs this means
    they induce the same partial injection I₂ ⇀ O₁, which is what class_key() records.
    """

    apex: Multigraph
    into_input2: GraphMorphism
    into_output1: GraphMorphism

    def __post_init__(self):
        if self.into_input2.source != self.apex or self.into_output1.source != self.apex:
            raise CategoryError("Overlap legs must start at the overlap apex")
        if not (self.into_input2.is_mono() and self.into_output1.is_mono()):
            raise CategoryError("Overlap legs must be monomorphisms")

    def class_key(self) -> Tuple[Tuple[str, str, str], ...]:
        pairs = [("v", self.into_input2.v(x), self.into_output1.v(x)) for x in self.apex.vertices]
        pairs += [("e", self.into_input2.e(x), self.into_output1.e(x)) for x in self.apex.edges]
        return tuple(sorted(pairs))

    def is_trivial(self) -> bool:
        return self.apex.is_empty()

    def to_dict(self) -> dict:
        return {"apex": self.apex.to_dict(),
                "into_input2": {"vmap": dict(self.into_input2.vertex_map), "emap": dict(self.into_input2.edge_map)},
                "into_output1": {"vmap": dict(self.into_output1.vertex_map),
                                 "emap": dict(self.into_output1.edge_map)}}


@dataclass(frozen=True)
class RuleComposition:
    """
    Every object of the composition diagram of p₂ after p₁ along an overlap.

    :param glued: N = I₂ +_M O₁, in_b: I₂ -> N, in_c: O₁ -> N.
    :param left_complement: K̄₂, pushout complement of K₂ -> I₂ -> N.
    :param right_complement: K̄₁, pushout complement of K₁ -> O₁ -> N.
    :param output_square: O₂₁ = O₂ +_K₂ K̄₂.
    :param input_square: I₂₁ = I₁ +_K₁ K̄₁.
    :param span: Raw composite span O₂₁ <- K₂₁ -> I₂₁.
    :param canonical: The composite rule in canonical labeling with its comparison isomorphisms.
    """

    p2: LinearRule
    overlap: RuleOverlap
    p1: LinearRule
    glued: Pushout
    left_complement: PushoutComplement
    right_complement: PushoutComplement
    output_square: Pushout
    input_square: Pushout
    span: Span
    canonical: CanonicalRule

    @property
    def rule(self) -> LinearRule:
        return self.canonical.rule


def empty_overlap(p2: LinearRule, p1: LinearRule) -> RuleOverlap:
    kind = check_same_kind(p2.input, p1.output)
    empty = Multigraph(kind=kind)
    return RuleOverlap(empty, GraphMorphism(empty, p2.input), GraphMorphism(empty, p1.output))


def _subgraphs(graph: Multigraph) -> Iterator[Multigraph]:
    """Every subgraph of the graph, as an actual subset of its items (ids are kept)."""
    vertices = graph.vertices
    for size in range(len(vertices) + 1):
        for chosen in itertools.combinations(vertices, size):
            chosen_set = set(chosen)
            available = [e for e, ends in graph.incidence if set(ends) <= chosen_set]
            for edge_count in range(len(available) + 1):
                for edges in itertools.combinations(available, edge_count):
                    yield graph.subgraph(chosen, edges)


def _glue(p2: LinearRule, overlap: RuleOverlap, p1: LinearRule) -> Pushout:
    if overlap.into_input2.target != p2.input or overlap.into_output1.target != p1.output:
        raise InadmissibleMatchError("Overlap legs do not land in I₂ and O₁")
    return pushout(overlap.into_input2, overlap.into_output1)


def is_admissible_overlap(p2: LinearRule, overlap: RuleOverlap, p1: LinearRule) -> bool:
    """
    An overlap is admissible when N = I₂ +_M O₁ admits the pushout complements of K₂ -> I₂ -> N and of K₁ -> O₁ -> N.
    """

    glued = _glue(p2, overlap, p1)
    return satisfies_gluing_condition(p2.i, glued.in_b) and satisfies_gluing_condition(p1.o, glued.in_c)


@lru_cache(maxsize=4096)
def _rule_overlaps(p2: LinearRule, p1: LinearRule) -> Tuple[RuleOverlap, ...]:
    overlaps, seen = [], set()
    for apex in _subgraphs(p2.input):
        into_input2 = GraphMorphism(apex, p2.input, {v: v for v in apex.vertices}, {e: e for e in apex.edges})
        for into_output1 in enumerate_monos(apex, p1.output):
            overlap = RuleOverlap(apex, into_input2, into_output1)
            key = overlap.class_key()
            if key in seen:
                continue
            seen.add(key)
            if is_admissible_overlap(p2, overlap, p1):
                overlaps.append(overlap)
    logger.debug("%d admissible overlaps of %s after %s", len(overlaps), p2, p1)
    return tuple(overlaps)


def enumerate_rule_overlaps(p2: LinearRule, p1: LinearRule) -> List[RuleOverlap]:
    """
    Enumerates one representative per class of admissible overlaps I₂ <- M -> O₁. Apexes are the subgraphs of I₂
    (legs into I₂ are inclusions), paired with every monomorphism into O₁.

    :param p2: Rule applied second.
    :param p1: Rule applied first.

    :return: Admissible overlaps, the trivial overlap M = ∅ first.
    """

    check_same_kind(p2.input, p1.output)
    return list(_rule_overlaps(p2, p1))


@lru_cache(maxsize=65536)
def compose_rules_detailed(p2: LinearRule, overlap: RuleOverlap, p1: LinearRule) -> RuleComposition:
    """
    Builds the composition diagram: N by pushout, K̄₂ and K̄₁ by pushout complements, O₂₁ and I₂₁ by pushouts, and the
    composite context K₂₁ by composing the spans O₂₁ <- K̄₂ -> N and N <- K̄₁ -> I₂₁.

    :param p2: Rule applied second.
    :param overlap: Admissible overlap of p₂ into p₁.
    :param p1: Rule applied first.

    :return: RuleComposition with every intermediate object.
    """

    glued = _glue(p2, overlap, p1)
    left_complement = pushout_complement(p2.i, glued.in_b)
    right_complement = pushout_complement(p1.o, glued.in_c)
    if left_complement is None or right_complement is None:
        raise InadmissibleMatchError("Overlap is not admissible: a pushout complement does not exist")

    output_square = pushout(p2.o, left_complement.k)
    input_square = pushout(p1.i, right_complement.k)
    span = compose_spans(Span(left_complement.obj, output_square.in_c, left_complement.x),
                         Span(right_complement.obj, right_complement.x, input_square.in_c))
    return RuleComposition(p2=p2, overlap=overlap, p1=p1,
                           glued=glued,
                           left_complement=left_complement,
                           right_complement=right_complement,
                           output_square=output_square,
                           input_square=input_square,
                           span=span,
                           canonical=canonical_rule(LinearRule.from_span(span)))


def compose_rules(p2: LinearRule, overlap: RuleOverlap, p1: LinearRule) -> LinearRule:
    """
    :return: The composite rule p₂ ⋖_M p₁ in canonical labeling.
    """

    return compose_rules_detailed(p2, overlap, p1).rule


def disjoint_union(p2: LinearRule, p1: LinearRule) -> LinearRule:
    """Composite along the trivial overlap, p₂ ⊎ p₁."""
    return compose_rules(p2, empty_overlap(p2, p1), p1)


def find_overlap(p2: LinearRule, p1: LinearRule, class_key) -> Optional[RuleOverlap]:
    for overlap in enumerate_rule_overlaps(p2, p1):
        if overlap.class_key() == class_key:
            return overlap
    return None

