from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from errors import GraphValidationError, KindMismatchError, SimulationError
from graphs.canonical import CanonicalKey, canonical_form
from graphs.graph_io import graph_from_dict, read_json
from graphs.multigraph import UNDIRECTED, Multigraph, discrete_graph
from representation.canonical_representation import basis_action
from representation.state_vector import FloatStateVector
from rewriting.derivations import count_matches
from rewriting.rule_io import rule_from_dict, rule_to_dict
from rewriting.rules import LinearRule, edge_creation_rule, edge_deletion_rule, rules_isomorphic


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Transition:
    """
    :param rule: Linear rule.
    :param rate: Base rate κ > 0 per unit time.
    :param weight: Rule-vector coefficient carried by the transition (½ for e±); the Hamiltonian term is
                   rate · weight · (ρ(δ(rule)) - O_I).
    """

    rule: LinearRule
    rate: float
    weight: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "rate", float(self.rate))
        object.__setattr__(self, "weight", Fraction(self.weight))
        if not math.isfinite(self.rate):
            raise SimulationError(f"Base rate {self.rate} is not finite")
        if self.rate <= 0 or self.weight <= 0:
            raise SimulationError(f"Base rates and weights must be positive, got {self.rate} and {self.weight}")

    @property
    def intensity(self) -> float:
        return self.rate * float(self.weight)


@dataclass(frozen=True)
class CTMCSpec:
    """
    :param transitions: Transitions of the chain.
    :param initial: Initial graph X₀, the chain starts in |X₀⟩.
    """

    transitions: Tuple[Transition, ...]
    initial: Multigraph
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "transitions", tuple(self.transitions))
        for transition in self.transitions:
            if transition.rule.kind != self.initial.kind:
                raise KindMismatchError(f"A {transition.rule.kind} rule cannot act on a {self.initial.kind} graph")

    @property
    def kind(self) -> str:
        return self.initial.kind

    def to_dict(self) -> dict:
        return {"transitions": [{"rule": rule_to_dict(t.rule), "rate": t.rate, "weight": str(t.weight)}
                                for t in self.transitions],
                "initial": self.initial.to_dict()}


@dataclass(frozen=True)
class Jump:
    """One aggregated transition out of a state: every match of one rule leading to the same class."""

    transition: int
    target: CanonicalKey
    graph: Multigraph
    propensity: float


@lru_cache(maxsize=65536)
def state_jumps(spec: CTMCSpec, graph: Multigraph) -> Tuple[Jump, ...]:
    """
    Jumps out of a basis state; the propensity of transition j is κ_j · weight_j · |M(p_j, X)| split over the classes
    reached by its matches.
    """

    jumps = []
    for index, transition in enumerate(spec.transitions):
        for target, count, result in basis_action(transition.rule, graph):
            jumps.append(Jump(index, target, result, transition.intensity * count))
    return tuple(jumps)


def exit_rate(spec: CTMCSpec, graph: Multigraph) -> float:
    """-h_XX = Σ_j κ_j · weight_j · |M(p_j, X)|, the diagonal given by jump-closure."""
    total = sum(t.intensity * count_matches(t.rule, graph) for t in spec.transitions)
    if not math.isfinite(total):
        raise SimulationError(f"Total propensity overflowed in state {graph}")
    return total


def hamiltonian_action(spec: CTMCSpec, psi: FloatStateVector) -> FloatStateVector:
    """
    H|ψ⟩ = Σ_j κ_j · weight_j · (ρ(δ(p_j)) - O_{I_j}) |ψ⟩.

    :param spec: Chain.
    :param psi: Floating-point state.

    :return: Floating-point state whose projection is 0.
    """

    if not isinstance(psi, FloatStateVector):
        raise TypeError("The Hamiltonian acts on floating-point states")
    if psi.kind and psi.kind != spec.kind:
        raise KindMismatchError(f"Cannot apply a {spec.kind} Hamiltonian to a {psi.kind} state")

    terms, registry = defaultdict(float), {}
    for key, coefficient in psi.items():
        graph = psi.graph(key)
        registry[key] = graph
        for jump in state_jumps(spec, graph):
            terms[jump.target] += coefficient * jump.propensity
            terms[key] -= coefficient * jump.propensity
            registry.setdefault(jump.target, jump.graph)
    return FloatStateVector(terms, registry, spec.kind)


@dataclass(frozen=True)
class GeneratorReport:
    """
    :param states: Canonical representatives indexing rows and columns.
    :param matrix: Dense generator Q, Q[a, b] = rate a -> b, Q[a, a] = -(total exit rate of a).
    :param leakage: Row index -> rate flowing to states outside the set.
    """

    states: Tuple[Multigraph, ...]
    matrix: np.ndarray
    leakage: Dict[int, float]
    diagonal_nonpositive: bool
    off_diagonal_nonnegative: bool
    rows_sum_to_zero: bool

    @property
    def closed(self) -> bool:
        return not self.leakage

    @property
    def holds(self) -> bool:
        return self.diagonal_nonpositive and self.off_diagonal_nonnegative and self.rows_sum_to_zero

    def to_dict(self) -> dict:
        return {"states": len(self.states),
                "diagonal_nonpositive": self.diagonal_nonpositive,
                "off_diagonal_nonnegative": self.off_diagonal_nonnegative,
                "rows_sum_to_zero": self.rows_sum_to_zero,
                "leakage_rows": {str(row): rate for row, rate in sorted(self.leakage.items())}}


def generator_entries(spec: CTMCSpec,
                      states: Sequence[Multigraph]) -> Tuple[List[Tuple[int, int, float]], Dict[int, float]]:
    """
    Sparse generator entries over a finite state set. Rates into states outside the set are collected as leakage but
    still count in the diagonal, so truncation boundaries lose probability mass instead of creating it.
    """

    index = {canonical_form(graph).key: i for i, graph in enumerate(states)}
    entries, leakage = [], defaultdict(float)
    for row, graph in enumerate(states):
        exit_total = 0.0
        for jump in state_jumps(spec, graph):
            exit_total += jump.propensity
            column = index.get(jump.target)
            if column is None:
                leakage[row] += jump.propensity
            else:
                entries.append((row, column, jump.propensity))
        entries.append((row, row, -exit_total))
    return entries, dict(leakage)


def infinitesimal_generator_check(spec: CTMCSpec,
                                  states: Sequence[Multigraph],
                                  tolerance: float = 1e-12) -> GeneratorReport:
    """
    Builds the explicit generator over a state set and checks h_XX <= 0, h_XY >= 0 for X != Y and zero row sums. Rows
    that leak out of the set are reported and exempt from the row-sum condition.

    :param spec: Chain.
    :param states: Finite state set, one graph per class.
    :param tolerance: Absolute tolerance of the row-sum test.

    :return: GeneratorReport.
    """

    states = tuple(canonical_form(graph).representative for graph in states)
    if len({canonical_form(graph).key for graph in states}) != len(states):
        raise GraphValidationError("State set lists an isomorphism class twice")

    entries, leakage = generator_entries(spec, states)
    matrix = np.zeros((len(states), len(states)))
    for row, column, rate in entries:
        matrix[row, column] += rate

    off_diagonal = matrix - np.diag(np.diag(matrix))
    row_sums = matrix.sum(axis=1)
    closed_rows = [row for row in range(len(states)) if row not in leakage]
    report = GeneratorReport(states=states,
                             matrix=matrix,
                             leakage=leakage,
                             diagonal_nonpositive=bool(np.all(np.diag(matrix) <= 0)),
                             off_diagonal_nonnegative=bool(np.all(off_diagonal >= 0)),
                             rows_sum_to_zero=bool(np.all(np.abs(row_sums[closed_rows]) <= tolerance)))
    if leakage:
        logger.info("Generator over %d states leaks from %d boundary rows", len(states), len(leakage))
    return report


def edge_birth_death_spec(n_vertices: int,
                          n_edges: int,
                          k_plus: float,
                          k_minus: float) -> CTMCSpec:
    """
    H = κ₊ (ρ(e+) - O) + κ₋ (ρ(e-) - O) on undirected multigraphs with N_V vertices. The initial N_E edges are spread
    over the vertex pairs in order; the edge-count dynamics does not depend on where they sit.
    """

    if n_vertices < 2 and n_edges > 0:
        raise GraphValidationError("Edges need at least two vertices")
    if k_plus < 0 or k_minus < 0:
        raise SimulationError("Rates must be non-negative")

    pairs = [(f"v{a}", f"v{b}") for a in range(n_vertices) for b in range(a + 1, n_vertices)]
    initial = Multigraph(kind=UNDIRECTED,
                         vertices=discrete_graph(n_vertices).vertices,
                         incidence={f"e{i}": pairs[i % len(pairs)] for i in range(n_edges)})

    transitions = []
    if k_plus > 0:
        transitions.append(Transition(edge_creation_rule(UNDIRECTED), k_plus, Fraction(1, 2)))
    if k_minus > 0:
        transitions.append(Transition(edge_deletion_rule(UNDIRECTED), k_minus, Fraction(1, 2)))
    return CTMCSpec(tuple(transitions), initial, name="edge birth-death")


@dataclass(frozen=True)
class EdgeBirthDeathParameters:
    n_vertices: int
    n_edges: int
    k_plus: float
    k_minus: float


def detect_edge_birth_death(spec: CTMCSpec) -> Optional[EdgeBirthDeathParameters]:
    """
    Recognises an undirected chain built only from edge creation and edge deletion between two kept vertices and
    returns its parameters in the closed-form convention (rate per vertex pair, rate per edge).
    """

    if spec.kind != UNDIRECTED:
        return None
    creation, deletion = edge_creation_rule(UNDIRECTED), edge_deletion_rule(UNDIRECTED)
    k_plus = k_minus = 0.0
    for transition in spec.transitions:
        # an unordered pair or an edge has two matches of the rule input
        if rules_isomorphic(transition.rule, creation):
            k_plus += 2 * transition.intensity
        elif rules_isomorphic(transition.rule, deletion):
            k_minus += 2 * transition.intensity
        else:
            return None
    return EdgeBirthDeathParameters(n_vertices=spec.initial.n_vertices,
                                    n_edges=spec.initial.n_edges,
                                    k_plus=k_plus,
                                    k_minus=k_minus)


def ctmc_spec_from_dict(data) -> CTMCSpec:
    """
    Parses {"transitions": [{"rule": <rule>, "rate": 1.0, "weight": "1/2"}], "initial": <graph>}; weight is optional.
    """

    if not isinstance(data, dict) or "initial" not in data:
        raise GraphValidationError("A CTMC spec must be a JSON object with 'transitions' and 'initial'")
    transitions = []
    for entry in data.get("transitions", []):
        try:
            rate = float(entry["rate"])
            weight = Fraction(str(entry.get("weight", 1)))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as error:
            raise GraphValidationError(f"Malformed transition {entry!r}") from error
        transitions.append(Transition(rule_from_dict(entry.get("rule")), rate, weight))
    return CTMCSpec(tuple(transitions), graph_from_dict(data["initial"]))


def load_ctmc_spec(path) -> CTMCSpec:
    return ctmc_spec_from_dict(read_json(path))
