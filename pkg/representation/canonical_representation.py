import logging
from collections import defaultdict
from functools import lru_cache
from typing import Tuple, TypeVar

from algebra.rule_vector import RuleVector
from errors import KindMismatchError
from graphs.canonical import CanonicalKey, canonical_form
from graphs.multigraph import Multigraph
from representation.state_vector import GraphVector
from rewriting.derivations import derive, find_matches
from rewriting.rules import LinearRule


logger = logging.getLogger(__name__)

State = TypeVar("State", bound=GraphVector)


@lru_cache(maxsize=65536)
def basis_action(rule: LinearRule, graph: Multigraph) -> Tuple[Tuple[CanonicalKey, int, Multigraph], ...]:
    """
    ρ(δ(p))|G⟩ as (class key, multiplicity, representative) triples: one derivation per admissible match.

    :param rule: Linear rule.
    :param graph: Basis graph.

    :return: Successor classes sorted by key; empty when the rule has no admissible match.
    """

    counts, registry = defaultdict(int), {}
    for match in find_matches(rule, graph):
        result = derive(rule, match, graph)
        key = canonical_form(result).key
        counts[key] += 1
        registry.setdefault(key, result)
    return tuple((key, counts[key], registry[key]) for key in sorted(counts))


def apply_rep(r: RuleVector, psi: State) -> State:
    """
    Canonical representation: the bilinear extension of ρ(δ(p))|G⟩ = Σ_{m admissible} |p_m(G)⟩.

    :param r: Rule vector.
    :param psi: Exact or floating-point state; the result has the same type.

    :return: ρ(r)ψ.
    """

    if r.kind and psi.kind and r.kind != psi.kind:
        raise KindMismatchError(f"Cannot apply {r.kind} rules to a {psi.kind} state")

    cls = type(psi)
    terms, registry = defaultdict(cls._coerce_zero), {}
    for rule_coefficient, rule in r:
        factor = cls._coerce(rule_coefficient)
        for key, coefficient in psi.items():
            for successor, count, graph in basis_action(rule, psi.graph(key)):
                terms[successor] += factor * coefficient * count
                registry.setdefault(successor, graph)
    return cls(terms, registry, psi.kind or r.kind)


def apply_power(r: RuleVector, psi: State, n: int) -> State:
    for step in range(n):
        psi = apply_rep(r, psi)
        logger.debug("step %d: %d basis graphs", step + 1, len(psi))
    return psi
