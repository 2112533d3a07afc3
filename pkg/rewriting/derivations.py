from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from category.constructions import pushout, pushout_complement, satisfies_gluing_condition
from errors import InadmissibleMatchError
from graphs.canonical import canonical_form
from graphs.monomorphisms import enumerate_monos
from graphs.multigraph import GraphMorphism, Multigraph, check_same_kind
from rewriting.rules import LinearRule


@dataclass(frozen=True)
class Derivation:
    """
    One DPO step X -> p_m(X), with the result in canonical labeling.

    :param rule: Applied rule.
    :param match: Admissible match I -> X.
    :param host: The rewritten graph X.
    :param context: Pushout complement K̄.
    :param context_to_host: Inclusion K̄ -> X.
    :param context_to_result: K̄ -> p_m(X).
    :param comatch: O -> p_m(X).
    :param result: p_m(X), canonically labeled.
    """

    rule: LinearRule
    match: GraphMorphism
    host: Multigraph
    context: Multigraph
    context_to_host: GraphMorphism
    context_to_result: GraphMorphism
    comatch: GraphMorphism
    result: Multigraph

    def forward(self) -> Tuple[Dict[str, str], Dict[str, str]]:
        """
        :return: Vertex and edge maps host -> result for the items that survive the step.
        """

        return ({self.context_to_host.v(v): self.context_to_result.v(v) for v in self.context.vertices},
                {self.context_to_host.e(e): self.context_to_result.e(e) for e in self.context.edges})

    def backward(self) -> Tuple[Dict[str, str], Dict[str, str]]:
        """
        :return: Vertex and edge maps result -> host for the items that were not created by the step.
        """

        forward_v, forward_e = self.forward()
        return {w: v for v, w in forward_v.items()}, {f: e for e, f in forward_e.items()}


def find_matches(p: LinearRule, x: Multigraph) -> List[GraphMorphism]:
    """
    Finds the set of admissible matches of a rule: monomorphisms I -> X satisfying the gluing condition.

    :param p: Linear rule.
    :param x: Host graph of the same kind.

    :return: Distinct match morphisms in deterministic order.
    """

    check_same_kind(p.input, x)
    return [m for m in enumerate_monos(p.input, x) if satisfies_gluing_condition(p.i, m)]


def count_matches(p: LinearRule, x: Multigraph) -> int:
    return len(find_matches(p, x))


def derivation(p: LinearRule, m: GraphMorphism, x: Multigraph) -> Derivation:
    """
    Performs the double pushout: pushout complement of (i, m) gives K̄, then the pushout of (o, k) gives the result.

    :param p: Linear rule.
    :param m: Admissible match I -> X.
    :param x: Host graph.

    :return: Derivation record, result canonically labeled.
    """

    if m.source != p.input or m.target != x:
        raise InadmissibleMatchError("Match does not go from the rule input to the host graph")
    if not m.is_mono():
        raise InadmissibleMatchError("Matches must be monomorphisms")

    complement = pushout_complement(p.i, m)
    if complement is None:
        raise InadmissibleMatchError("Match violates the gluing condition")

    square = pushout(p.o, complement.k)
    relabeling = canonical_form(square.obj).relabeling
    return Derivation(rule=p,
                      match=m,
                      host=x,
                      context=complement.obj,
                      context_to_host=complement.x,
                      context_to_result=relabeling.after(square.in_c),
                      comatch=relabeling.after(square.in_b),
                      result=relabeling.target)


def derive(p: LinearRule, m: GraphMorphism, x: Multigraph) -> Multigraph:
    """
    :return: p_m(X) in canonical labeling.
    """

    return derivation(p, m, x).result
