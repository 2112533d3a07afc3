"""
Invariant suites run by the `verify` command. Every check_* function returns a CheckResult; a suite passes when every
one of its checks passes.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List

from algebra.combinatorics import d, e_minus, e_plus
from algebra.heisenberg_weyl import engine_normal_order, hw_normal_order, x, x_dagger, x_dagger_power, x_power
from algebra.rule_vector import check_associativity, commutator, delta, product, unit
from graphs.canonical import canonical_key
from graphs.multigraph import DIRECTED, UNDIRECTED, Multigraph, discrete_graph
from representation.canonical_representation import apply_rep
from representation.observables import vertex_pair_identity_holds
from representation.sequence import hw_sequence
from representation.state_vector import StateVector
from rewriting.concurrency import analyze, synthesize
from rewriting.derivations import derive, find_matches
from rewriting.overlaps import compose_rules, disjoint_union, enumerate_rule_overlaps
from rewriting.rules import LinearRule, vertex_creation_rule, vertex_deletion_rule
from stochastic.ctmc import CTMCSpec, Transition, hamiltonian_action
from verification.corpus import corpus_rng, random_host, rule_pairs_with_hosts, rule_triples, rules_with_hosts


logger = logging.getLogger(__name__)

SUITES = ("associativity", "homomorphism", "jump-closure", "hw", "concurrency")
MAX_MATCHES_PER_STEP = 3
CORPUS_KINDS = (UNDIRECTED, DIRECTED)


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def expect(self, condition: bool, description: str) -> None:
        self.checked += 1
        if not condition:
            self.failures.append(description)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked, "failures": self.failures}


@dataclass
class SuiteReport:
    suite: str
    seed: int
    samples: int
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_dict(self) -> dict:
        return {"suite": self.suite,
                "seed": self.seed,
                "samples": self.samples,
                "passed": self.passed,
                "checks": [check.to_dict() for check in self.checks]}


def check_associativity_corpus(seed: int, samples: int) -> CheckResult:
    result = CheckResult("associativity")
    for kind in CORPUS_KINDS:
        for index, (p1, p2, p3) in enumerate(rule_triples(seed, samples, kind)):
            result.expect(check_associativity(p1, p2, p3), f"{kind} triple {index}: {p3} * {p2} * {p1}")
    return result


def check_unitality_corpus(seed: int, samples: int) -> CheckResult:
    result = CheckResult("unitality")
    for kind in CORPUS_KINDS:
        identity = unit(kind)
        for index, (p1, _, _) in enumerate(rule_triples(seed, samples, kind)):
            r = delta(p1)
            result.expect(product(identity, r) == r and product(r, identity) == r, f"{kind} rule {index}: {p1}")
    return result


def check_homomorphism_corpus(seed: int, samples: int) -> CheckResult:
    """ρ(R₂ * R₁)|X⟩ = ρ(R₂)ρ(R₁)|X⟩."""
    result = CheckResult("homomorphism")
    for kind in CORPUS_KINDS:
        for index, (p2, p1, host) in enumerate(rule_pairs_with_hosts(seed, samples, kind)):
            r2, r1, psi = delta(p2), delta(p1), StateVector.basis(host)
            result.expect(apply_rep(product(r2, r1), psi) == apply_rep(r2, apply_rep(r1, psi)),
                          f"{kind} sample {index}: {p2} after {p1} on {host}")
    return result


def check_jump_closure_corpus(seed: int, samples: int) -> CheckResult:
    """⟨|ρ(δ(O <- K -> I)) = ⟨|ρ(δ(I <- K -> I)) on basis states."""
    result = CheckResult("jump-closure")
    for kind in CORPUS_KINDS:
        for index, (p, host) in enumerate(rules_with_hosts(seed, samples, kind)):
            psi = StateVector.basis(host)
            left = apply_rep(delta(p), psi).projection()
            right = apply_rep(delta(p.input_rule()), psi).projection()
            result.expect(left == right, f"{kind} sample {index}: {p} on {host} gives {left} != {right}")
    return result


def check_hamiltonian_projection_corpus(seed: int, samples: int) -> CheckResult:
    """⟨|H|X⟩ = 0 for Hamiltonians built from corpus rules with integer rates."""
    result = CheckResult("hamiltonian-projection")
    for kind in CORPUS_KINDS:
        rng = corpus_rng(seed, 3, kind)
        for index, (p, host) in enumerate(rules_with_hosts(seed, samples, kind)):
            spec = CTMCSpec((Transition(p, float(rng.integers(1, 4))),), host)
            value = hamiltonian_action(spec, StateVector.basis(host).to_float()).projection()
            result.expect(value == 0, f"{kind} sample {index}: ⟨|H|X⟩ = {value}")
    return result


def check_hw_ladder(max_n: int = 10) -> CheckResult:
    """ρ(x†)|n⟩ = |n+1⟩ and ρ(x)|n⟩ = n|n-1⟩."""
    result = CheckResult("hw-ladder")
    for n in range(max_n + 1):
        state = StateVector.basis(discrete_graph(n))
        result.expect(apply_rep(x_dagger(), state) == StateVector.basis(discrete_graph(n + 1)), f"x† on |{n}⟩")
        lowered = StateVector.from_graphs([(n, discrete_graph(n - 1))]) if n > 0 else StateVector()
        result.expect(apply_rep(x(), state) == lowered, f"x on |{n}⟩")
    return result


def check_hw_commutator() -> CheckResult:
    result = CheckResult("hw-commutator")
    result.expect(commutator(x(), x_dagger()) == unit(UNDIRECTED), "[x, x†] = R_∅")
    result.expect(product(x(), x_dagger()) == delta(disjoint_union(vertex_deletion_rule(), vertex_creation_rule()))
                  + unit(UNDIRECTED), "x * x† = x ⊎ x† + R_∅")
    return result


def check_hw_normal_order(max_exponent: int = 2) -> CheckResult:
    result = CheckResult("hw-normal-order")
    for r, s, k, l in itertools.product(range(max_exponent + 1), repeat=4):
        result.expect(engine_normal_order(r, s, k, l) == hw_normal_order(r, s, k, l),
                      f"(r, s, k, l) = {(r, s, k, l)}")
    return result


def check_hw_powers(max_m: int = 4) -> CheckResult:
    """x†^m and x^m are m-fold disjoint unions."""
    result = CheckResult("hw-powers")
    creation, deletion = vertex_creation_rule(), vertex_deletion_rule()
    union_creation, union_deletion = creation, deletion
    for m in range(1, max_m + 1):
        result.expect(x_dagger_power(m) == delta(union_creation), f"x†^{m}")
        result.expect(x_power(m) == delta(union_deletion), f"x^{m}")
        union_creation = disjoint_union(creation, union_creation)
        union_deletion = disjoint_union(deletion, union_deletion)
    return result


def check_combinatorics_commutators() -> CheckResult:
    result = CheckResult("combinatorics-commutators")
    result.expect(commutator(e_minus(), e_plus()) == d(), "[e-, e+] = d")
    result.expect(commutator(e_plus(), d()).is_zero(), "[e+, d] = 0")
    result.expect(commutator(e_minus(), d()).is_zero(), "[e-, d] = 0")
    return result


def check_vertex_sectors(seed: int, samples: int) -> CheckResult:
    """e+, e- and d preserve the vertex count of every basis graph; D = ½(O_• O_• - O_•)."""
    result = CheckResult("vertex-sectors")
    for kind in CORPUS_KINDS:
        rng = corpus_rng(seed, 4, kind)
        generators = (("e+", e_plus(kind)), ("e-", e_minus(kind)), ("d", d(kind)))
        for index in range(samples):
            host = random_host(rng, kind)
            psi = StateVector.basis(host)
            for name, generator in generators:
                image = apply_rep(generator, psi)
                result.expect(all(graph.n_vertices == host.n_vertices for _, graph in image),
                              f"{kind} sample {index}: {name} changes the vertex count of {host}")
            result.expect(vertex_pair_identity_holds(psi), f"{kind} sample {index}: D identity fails on {host}")
    return result


def check_sequence_normalization(max_n: int = 6) -> CheckResult:
    """3 Σ_k T(n, k) = 3ⁿ."""
    result = CheckResult("sequence-normalization")
    for n in range(1, max_n + 1):
        total = 3 * sum(coefficient for _, coefficient in hw_sequence(n))
        result.expect(total == 3 ** n, f"n = {n}: 3 Σ T = {total}")
    return result


def check_concurrency_corpus(seed: int, samples: int) -> CheckResult:
    """
    Two-step derivations synthesize to one-step derivations of the composite rule with an isomorphic result, and
    analysis of that one-step derivation gives back the original matches; conversely every match of a composite rule
    analyses to a two-step derivation that synthesizes back to the same overlap class.
    """

    result = CheckResult("concurrency")
    for kind in CORPUS_KINDS:
        for index, (p2, p1, x0) in enumerate(rule_pairs_with_hosts(seed, samples, kind)):
            _check_concurrency_sample(result, f"{kind} sample {index}", p2, p1, x0)
    return result


def _check_concurrency_sample(result: CheckResult, label: str, p2: LinearRule, p1: LinearRule, x0: Multigraph) -> None:
    for m1 in find_matches(p1, x0)[:MAX_MATCHES_PER_STEP]:
        x1 = derive(p1, m1, x0)
        for m2 in find_matches(p2, x1)[:MAX_MATCHES_PER_STEP]:
            synthesis = synthesize(p2, m2, p1, m1, x0)
            x2 = derive(p2, m2, x1)
            result.expect(canonical_key(derive(synthesis.rule, synthesis.match, x0)) == canonical_key(x2),
                          f"{label}: composite derivation differs from the sequential one")
            result.expect(analyze(p2, synthesis.overlap, p1, synthesis.match, x0) == (m1, m2),
                          f"{label}: analysis does not return the original matches")

    for overlap in enumerate_rule_overlaps(p2, p1):
        synthesis_rule = compose_rules(p2, overlap, p1)
        for n in find_matches(synthesis_rule, x0)[:MAX_MATCHES_PER_STEP]:
            m1, m2 = analyze(p2, overlap, p1, n, x0)
            synthesis = synthesize(p2, m2, p1, m1, x0)
            result.expect(synthesis.overlap.class_key() == overlap.class_key(),
                          f"{label}: synthesis returns a different overlap class")
            result.expect(canonical_key(derive(synthesis_rule, n, x0))
                          == canonical_key(derive(p2, m2, derive(p1, m1, x0))),
                          f"{label}: analysed derivation differs from the composite one")


def run_suite(suite: str, seed: int, samples: int) -> SuiteReport:
    """
    Runs one named suite.

    :param suite: One of SUITES.
    :param seed: Corpus seed.
    :param samples: Corpus size; 0 gives a vacuous pass for the corpus-driven checks.

    :return: SuiteReport.
    """

    suites: Dict[str, Callable[[], List[CheckResult]]] = {
        "associativity": lambda: [check_associativity_corpus(seed, samples), check_unitality_corpus(seed, samples)],
        "homomorphism": lambda: [check_homomorphism_corpus(seed, samples)],
        "jump-closure": lambda: [check_jump_closure_corpus(seed, samples),
                                 check_hamiltonian_projection_corpus(seed, samples)],
        "hw": lambda: [check_hw_ladder(), check_hw_commutator(), check_hw_normal_order(), check_hw_powers(),
                       check_combinatorics_commutators(), check_vertex_sectors(seed, samples),
                       check_sequence_normalization()],
        "concurrency": lambda: [check_concurrency_corpus(seed, samples)],
    }

    try:
        checks = suites[suite]
    except KeyError:
        raise KeyError(f"Wrong Suite Name: {suite}")

    if samples == 0:
        logger.warning("Suite %s runs with 0 samples: corpus checks pass vacuously", suite)
    report = SuiteReport(suite=suite, seed=seed, samples=samples, checks=checks())
    for check in report.checks:
        logger.info("%s: %d checked, %d failed", check.name, check.checked, len(check.failures))
    return report
