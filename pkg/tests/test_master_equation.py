import numpy as np
import pytest

from errors import SimulationError
from graphs.multigraph import discrete_graph
from mathematics.edge_birth_death import (edge_distribution_closed_form, edge_moment_closed_form,
                                          total_variation_distance)
from rewriting.rules import edge_deletion_rule
from stochastic.ctmc import CTMCSpec, Transition, edge_birth_death_spec
from stochastic.master_equation import (default_edge_truncation, edge_count_truncation, generator_matrix,
                                        master_equation_integrate, reachable_states)


TIMES = [0.25, 0.5, 1.0, 2.0, 4.0]


def edge_count_probabilities(result, index):
    counts = np.array([graph.n_edges for graph in result.states])
    return np.bincount(counts, weights=result.probabilities[index])


@pytest.fixture(scope="module")
def two_vertex_run():
    return master_equation_integrate(edge_birth_death_spec(2, 0, 1.0, 1.0), edge_count_truncation(40), TIMES)


def test_mean_edge_count_matches_the_closed_form(two_vertex_run):
    means = two_vertex_run.expectation([graph.n_edges for graph in two_vertex_run.states])
    for t, mean in zip(TIMES, means):
        assert abs(mean - edge_moment_closed_form(2, 0, 1.0, 1.0, t)) < 1e-6


def test_distribution_matches_the_closed_form(two_vertex_run):
    for index, t in enumerate(TIMES):
        closed = edge_distribution_closed_form(2, 0, 1.0, 1.0, t)
        assert total_variation_distance(edge_count_probabilities(two_vertex_run, index), closed.probabilities) < 1e-6


def test_leakage_is_negligible(two_vertex_run):
    assert len(two_vertex_run.states) == 41
    assert two_vertex_run.boundary_rows == (40,)
    assert two_vertex_run.leakage_bound < 1e-8
    assert not two_vertex_run.leakage_exceeded


def test_state_vectors_keep_the_mass(two_vertex_run):
    psi = two_vertex_run.state_vector(2)
    assert psi.projection() == pytest.approx(1.0, abs=1e-8)
    assert len(two_vertex_run.state_vectors()) == len(TIMES)


def test_tight_truncation_leaks():
    result = master_equation_integrate(edge_birth_death_spec(2, 0, 1.0, 1.0), edge_count_truncation(1), [2.0],
                                       leakage_threshold=1e-3)
    assert result.leakage_exceeded
    assert result.leakage[0] > 0


def test_finite_chain_needs_no_truncation():
    # two parallel edges deleted one by one at rate 1 each
    spec = CTMCSpec((Transition(edge_deletion_rule(), 0.5),), edge_birth_death_spec(2, 2, 1.0, 1.0).initial)
    result = master_equation_integrate(spec, None, [0.0, 1.0])

    survival = np.exp(-1.0)
    probabilities = edge_count_probabilities(result, 1)
    assert probabilities == pytest.approx([(1 - survival) ** 2, 2 * survival * (1 - survival), survival ** 2],
                                          abs=1e-9)
    assert result.leakage == pytest.approx([0.0, 0.0], abs=1e-9)


def test_zero_time_grid_is_the_point_mass():
    result = master_equation_integrate(edge_birth_death_spec(3, 1, 1.0, 1.0), edge_count_truncation(3), [0.0, 0.0])
    assert result.probabilities[:, 0] == pytest.approx([1.0, 1.0])
    assert result.probabilities[:, 1:].sum() == 0.0


def test_reachable_states_are_in_discovery_order():
    states = reachable_states(edge_birth_death_spec(3, 0, 1.0, 1.0), edge_count_truncation(2))

    assert states[0].n_edges == 0
    assert [graph.n_edges for graph in states] == sorted(graph.n_edges for graph in states)
    # no edge, one edge, two parallel edges, a path
    assert len(states) == 4


def test_initial_state_outside_the_truncation():
    with pytest.raises(SimulationError):
        reachable_states(edge_birth_death_spec(2, 3, 1.0, 1.0), edge_count_truncation(2))


def test_state_limit():
    with pytest.raises(SimulationError):
        reachable_states(edge_birth_death_spec(4, 0, 1.0, 1.0), edge_count_truncation(6), max_states=10)


def test_generator_rows_sum_to_zero_inside():
    spec = edge_birth_death_spec(2, 0, 1.0, 1.0)
    states = reachable_states(spec, edge_count_truncation(5))
    matrix, boundary = generator_matrix(spec, states)

    row_sums = np.asarray(matrix.sum(axis=1)).ravel()
    assert boundary == (5,)
    assert np.allclose(row_sums[:5], 0.0)
    assert row_sums[5] == pytest.approx(-1.0)


@pytest.mark.parametrize("times", [[], [-1.0, 1.0], [2.0, 1.0]])
def test_bad_time_grids(times):
    with pytest.raises(SimulationError):
        master_equation_integrate(edge_birth_death_spec(2, 0, 1.0, 1.0), edge_count_truncation(5), times)


def test_default_edge_truncation():
    assert default_edge_truncation(2, 0, 1.0, 1.0) == 11
    assert default_edge_truncation(4, 0, 1.0, 1.0) == 31
    assert default_edge_truncation(2, 50, 1.0, 1.0) >= 50
    assert default_edge_truncation(2, 0, 1.0, 0.0, t_max=4.0) == 24
    with pytest.raises(SimulationError):
        edge_count_truncation(-1)


def test_discrete_start_without_transitions():
    spec = CTMCSpec((), discrete_graph(3))
    result = master_equation_integrate(spec, None, [0.5, 1.0])
    assert result.probabilities == pytest.approx(np.ones((2, 1)))
