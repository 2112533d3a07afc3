import json
from fractions import Fraction

import pytest

from algebra.combinatorics import e_minus, e_plus
from errors import GraphValidationError, KindMismatchError, SimulationError
from graphs.multigraph import DIRECTED, UNDIRECTED, discrete_graph, edge_graph, graph_from_edges
from representation.canonical_representation import apply_rep
from representation.observables import apply_observable, input_observable
from representation.state_vector import FloatStateVector, StateVector
from rewriting.rule_io import rule_to_dict
from rewriting.rules import edge_creation_rule, edge_deletion_rule, vertex_creation_rule
from stochastic.ctmc import (CTMCSpec, Transition, ctmc_spec_from_dict, detect_edge_birth_death,
                             edge_birth_death_spec, exit_rate, hamiltonian_action, infinitesimal_generator_check,
                             load_ctmc_spec, state_jumps)
from verification.invariant_checks import check_hamiltonian_projection_corpus


def test_transitions_need_positive_finite_rates():
    for rate in (0.0, -1.0, float("inf"), float("nan")):
        with pytest.raises(SimulationError):
            Transition(edge_creation_rule(), rate)
    assert Transition(edge_creation_rule(), 2.0, Fraction(1, 2)).intensity == 1.0


def test_spec_kinds_must_agree():
    with pytest.raises(KindMismatchError):
        CTMCSpec((Transition(edge_creation_rule(DIRECTED), 1.0),), discrete_graph(2))


def test_hamiltonian_on_two_vertices(edge_spec):
    h_psi = hamiltonian_action(edge_spec, StateVector.basis(discrete_graph(2)).to_float())

    assert h_psi.coefficient(edge_graph()) == pytest.approx(1.0)
    assert h_psi.coefficient(discrete_graph(2)) == pytest.approx(-1.0)
    assert h_psi.projection() == pytest.approx(0.0, abs=1e-15)


def test_hamiltonian_matches_the_rule_algebra(triangle):
    # H = κ₊(ρ(e+) - O_I(e+)) + κ₋(ρ(e-) - O_I(e-)) with the ½ of e± carried by the transition weights
    spec = edge_birth_death_spec(3, 0, 2.0, 3.0)
    psi = StateVector.from_graphs([(Fraction(1, 4), triangle), (Fraction(3, 4), discrete_graph(3))])

    expected = StateVector()
    for rate, generator, rule in ((2, e_plus(), edge_creation_rule()), (3, e_minus(), edge_deletion_rule())):
        diagonal = apply_observable(input_observable(rule), psi).scale(Fraction(1, 2))
        expected = expected + (apply_rep(generator, psi) - diagonal).scale(rate)

    h_psi = hamiltonian_action(spec, psi.to_float())
    for coefficient, graph in expected:
        assert h_psi.coefficient(graph) == pytest.approx(float(coefficient))
    assert len(h_psi) == len(expected)


def test_hamiltonian_needs_float_states(edge_spec):
    with pytest.raises(TypeError):
        hamiltonian_action(edge_spec, StateVector.basis(discrete_graph(2)))


def test_projection_of_the_hamiltonian_vanishes_on_a_seeded_corpus():
    result = check_hamiltonian_projection_corpus(seed=5, samples=25)
    assert result.passed, result.failures


def test_exit_rate_and_jumps(triangle):
    spec = edge_birth_death_spec(3, 0, 1.0, 2.0)
    jumps = state_jumps(spec, triangle)

    assert exit_rate(spec, triangle) == pytest.approx(3 * 1.0 + 3 * 2.0)
    assert sum(jump.propensity for jump in jumps) == pytest.approx(exit_rate(spec, triangle))
    assert {jump.transition for jump in jumps} == {0, 1}


def test_generator_check_on_three_states():
    spec = CTMCSpec((Transition(edge_creation_rule(), 1.0, Fraction(1, 2)),
                     Transition(edge_deletion_rule(), 1.0, Fraction(1, 2))), discrete_graph(2))
    states = [discrete_graph(2), edge_graph(), edge_graph(multiplicity=2)]
    report = infinitesimal_generator_check(spec, states)

    assert report.holds
    assert not report.closed
    assert set(report.leakage) == {2}
    assert report.matrix[0, 1] == pytest.approx(1.0)
    assert report.matrix[1, 0] == pytest.approx(1.0)
    assert report.matrix[1, 1] == pytest.approx(-2.0)
    assert report.to_dict()["states"] == 3


def test_generator_check_on_a_closed_chain():
    spec = CTMCSpec((Transition(edge_deletion_rule(), 1.5),), edge_graph(multiplicity=2))
    states = [edge_graph(multiplicity=2), edge_graph(), discrete_graph(2)]
    report = infinitesimal_generator_check(spec, states)

    assert report.closed and report.holds
    assert report.matrix[0, 0] == pytest.approx(-2 * 2 * 1.5)


def test_truncated_edge_chain_leaks_from_the_boundary():
    spec = edge_birth_death_spec(2, 0, 1.0, 1.0)
    states = [graph_from_edges([("a", "b")] * n, extra_vertices=["a", "b"]) for n in range(6)]
    report = infinitesimal_generator_check(spec, states)

    assert report.holds
    assert set(report.leakage) == {5}
    assert report.leakage[5] == pytest.approx(1.0)


def test_duplicate_states_are_rejected():
    spec = edge_birth_death_spec(2, 0, 1.0, 1.0)
    with pytest.raises(GraphValidationError):
        infinitesimal_generator_check(spec, [edge_graph(), graph_from_edges([("x", "y")])])


def test_edge_birth_death_spec():
    spec = edge_birth_death_spec(4, 5, 1.0, 0.0)

    assert spec.initial.n_vertices == 4 and spec.initial.n_edges == 5
    assert len(spec.transitions) == 1
    with pytest.raises(GraphValidationError):
        edge_birth_death_spec(1, 1, 1.0, 1.0)


@pytest.mark.parametrize("n_vertices, n_edges, k_plus, k_minus", [(2, 0, 1.0, 1.0), (4, 3, 0.5, 2.0), (3, 1, 1.0, 0.0)])
def test_detection_recovers_the_parameters(n_vertices, n_edges, k_plus, k_minus):
    parameters = detect_edge_birth_death(edge_birth_death_spec(n_vertices, n_edges, k_plus, k_minus))
    assert (parameters.n_vertices, parameters.n_edges) == (n_vertices, n_edges)
    assert parameters.k_plus == pytest.approx(k_plus)
    assert parameters.k_minus == pytest.approx(k_minus)


def test_detection_rejects_other_chains():
    assert detect_edge_birth_death(CTMCSpec((Transition(vertex_creation_rule(), 1.0),), discrete_graph(2))) is None
    assert detect_edge_birth_death(CTMCSpec((Transition(edge_creation_rule(DIRECTED), 1.0),),
                                            discrete_graph(2, DIRECTED))) is None


def test_spec_file(tmp_path):
    path = tmp_path / "spec.json"
    spec = edge_birth_death_spec(3, 1, 1.0, 2.0)
    path.write_text(json.dumps(spec.to_dict()), encoding="utf-8")

    loaded = load_ctmc_spec(path)
    assert loaded == spec
    assert detect_edge_birth_death(loaded).k_minus == pytest.approx(2.0)


def test_spec_weight_is_optional():
    spec = ctmc_spec_from_dict({"transitions": [{"rule": rule_to_dict(edge_creation_rule()), "rate": 3}],
                                "initial": discrete_graph(2).to_dict()})
    assert spec.transitions[0].weight == 1
    assert spec.kind == UNDIRECTED


@pytest.mark.parametrize("data", [
    [],
    {"transitions": []},
    {"transitions": [{"rule": rule_to_dict(edge_creation_rule())}], "initial": discrete_graph(2).to_dict()},
    {"transitions": [{"rule": rule_to_dict(edge_creation_rule()), "rate": 1, "weight": "1/0"}],
     "initial": discrete_graph(2).to_dict()},
])
def test_malformed_spec_files(data):
    with pytest.raises(GraphValidationError):
        ctmc_spec_from_dict(data)


def test_float_state_hamiltonian_is_a_float_state(edge_spec):
    assert isinstance(hamiltonian_action(edge_spec, FloatStateVector.basis(discrete_graph(2))), FloatStateVector)
