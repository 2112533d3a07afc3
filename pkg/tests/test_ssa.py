import math

import numpy as np
import pytest
from scipy import stats

from errors import SimulationError
from graphs.multigraph import discrete_graph
from representation.observables import vertex_pair_observable
from stochastic.ctmc import CTMCSpec, edge_birth_death_spec
from stochastic.ssa import sample_matrix, sample_statistics, ssa_simulate, trajectory_rng


SAMPLE_TIMES = [0.5, 1.0, 2.0]


def test_same_seed_same_trajectories(edge_spec):
    first = ssa_simulate(edge_spec, 2.0, 5, seed=42, sample_times=SAMPLE_TIMES)
    second = ssa_simulate(edge_spec, 2.0, 5, seed=42, sample_times=SAMPLE_TIMES)

    assert [t.events for t in first] == [t.events for t in second]
    assert all(np.array_equal(a.samples, b.samples) for a, b in zip(first, second))


def test_other_seed_other_trajectories(edge_spec):
    first = ssa_simulate(edge_spec, 5.0, 5, seed=1, sample_times=[5.0])
    second = ssa_simulate(edge_spec, 5.0, 5, seed=2, sample_times=[5.0])
    assert [t.events for t in first] != [t.events for t in second]


def test_workers_do_not_change_the_result():
    spec = edge_birth_death_spec(3, 1, 1.0, 1.0)
    serial = ssa_simulate(spec, 2.0, 6, seed=7, sample_times=SAMPLE_TIMES)
    parallel = ssa_simulate(spec, 2.0, 6, seed=7, sample_times=SAMPLE_TIMES, workers=2)

    assert [t.index for t in parallel] == list(range(6))
    assert [t.events for t in serial] == [t.events for t in parallel]


def test_trajectory_streams_are_fixed_by_seed_and_index():
    assert trajectory_rng(3, 0).random() == trajectory_rng(3, 0).random()
    assert trajectory_rng(3, 0).random() != trajectory_rng(3, 1).random()


def test_state_without_transitions_stays_put():
    spec = CTMCSpec((), discrete_graph(3))
    (trajectory,) = ssa_simulate(spec, 10.0, 1, seed=0, sample_times=[0.0, 10.0])

    assert trajectory.events == ()
    assert trajectory.samples.tolist() == [[3.0, 0.0], [3.0, 0.0]]
    assert trajectory.observables == ("O_V", "O_E")


def test_events_are_ordered_and_within_the_horizon(edge_spec):
    for trajectory in ssa_simulate(edge_spec, 3.0, 10, seed=11, sample_times=[3.0]):
        times = [event.time for event in trajectory.events]
        assert times == sorted(times)
        assert all(0 < t <= 3.0 for t in times)
        assert {event.transition for event in trajectory.events} <= {0, 1}


def test_vertex_count_is_conserved():
    trajectories = ssa_simulate(edge_birth_death_spec(4, 2, 1.0, 1.0), 2.0, 20, seed=5, sample_times=SAMPLE_TIMES)
    assert np.all(sample_matrix(trajectories, 0) == 4)


def test_mean_edge_count_from_four_vertices():
    trajectories = ssa_simulate(edge_birth_death_spec(4, 0, 1.0, 1.0), 2.0, 400, seed=2024,
                                sample_times=SAMPLE_TIMES)
    means, errors = sample_statistics(trajectories, 1)

    for t, mean, error in zip(SAMPLE_TIMES, means, errors):
        assert abs(mean - 6 * (1 - math.exp(-t))) < 4 * error


def test_custom_observables():
    (trajectory,) = ssa_simulate(CTMCSpec((), discrete_graph(4)), 1.0, 1, seed=0, sample_times=[1.0],
                                 observables=[vertex_pair_observable()])
    assert trajectory.samples.tolist() == [[6.0]]
    assert trajectory.observables == ("D",)


def test_single_trajectory_statistics(edge_spec):
    trajectories = ssa_simulate(edge_spec, 1.0, 1, seed=0, sample_times=[0.0, 1.0])
    means, errors = sample_statistics(trajectories, 1)

    assert means[0] == 0.0
    assert errors.tolist() == [0.0, 0.0]


@pytest.mark.parametrize("t_max, n_trajectories, sample_times", [
    (-1.0, 1, []),
    (1.0, 0, []),
    (1.0, 1, [2.0]),
    (1.0, 1, [-0.5]),
    (1.0, 1, [0.8, 0.2]),
])
def test_bad_arguments(edge_spec, t_max, n_trajectories, sample_times):
    with pytest.raises(SimulationError):
        ssa_simulate(edge_spec, t_max, n_trajectories, seed=0, sample_times=sample_times)


@pytest.mark.slow
def test_stationary_edge_count_is_poisson():
    trajectories = ssa_simulate(edge_birth_death_spec(4, 0, 1.0, 1.0), 10.0, 2_000, seed=99,
                                sample_times=[10.0])
    counts = sample_matrix(trajectories, 1)[:, 0].astype(int)
    means, errors = sample_statistics(trajectories, 1)
    assert abs(means[0] - 6 * (1 - math.exp(-10))) < 3 * errors[0]

    # pool the upper tail so every bin expects a reasonable count
    top = 13
    observed = np.bincount(np.minimum(counts, top), minlength=top + 1)
    rate = 6 * (1 - math.exp(-10))
    expected = np.append(stats.poisson.pmf(np.arange(top), rate), stats.poisson.sf(top - 1, rate)) * len(counts)
    assert stats.chisquare(observed, expected).pvalue > 1e-3


def test_mean_is_flat_at_the_fixed_point():
    # κ₊ = κ₋ with every vertex pair covered once
    trajectories = ssa_simulate(edge_birth_death_spec(3, 3, 1.0, 1.0), 2.0, 300, seed=8, sample_times=SAMPLE_TIMES)
    means, errors = sample_statistics(trajectories, 1)
    assert np.all(np.abs(means - 3) < 4 * errors)
