from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from errors import SimulationError
from graphs.canonical import CanonicalKey, canonical_form
from representation.observables import Observable, edge_observable, observable_eigenvalue, vertex_observable
from stochastic.ctmc import CTMCSpec, state_jumps


logger = logging.getLogger(__name__)

RNG_NAME = "numpy.random.Philox"


@dataclass(frozen=True)
class Event:
    time: float
    transition: int
    state: CanonicalKey


@dataclass(frozen=True)
class Trajectory:
    """
    :param seed: Master seed of the run.
    :param index: Trajectory index; together with the seed it fixes the random stream.
    :param events: Jumps in increasing time order.
    :param sample_times: Requested sample times.
    :param samples: samples[i, j] = value of observable j in the state X(sample_times[i]-).
    :param observables: Column labels of samples.
    """

    seed: int
    index: int
    events: Tuple[Event, ...]
    sample_times: Tuple[float, ...]
    samples: np.ndarray
    observables: Tuple[str, ...]


def trajectory_rng(seed: int, index: int) -> np.random.Generator:
    """Independent counter-based stream for (seed, trajectory index)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))


def default_observables(kind: str) -> List[Observable]:
    return [vertex_observable(kind), edge_observable(kind)]


def _simulate_one(index: int,
                  spec: CTMCSpec,
                  t_max: float,
                  seed: int,
                  sample_times: Tuple[float, ...],
                  observables: Tuple[Observable, ...]) -> Trajectory:
    rng = trajectory_rng(seed, index)
    values: Dict[CanonicalKey, List[float]] = {}
    samples = np.zeros((len(sample_times), len(observables)))

    graph = canonical_form(spec.initial).representative
    key = canonical_form(graph).key
    t, next_sample, events = 0.0, 0, []

    def record_until(limit: float) -> None:
        nonlocal next_sample
        if key not in values:
            values[key] = [float(observable_eigenvalue(o, graph)) for o in observables]
        while next_sample < len(sample_times) and sample_times[next_sample] <= limit:
            samples[next_sample] = values[key]
            next_sample += 1

    while True:
        jumps = state_jumps(spec, graph)
        propensities = np.array([jump.propensity for jump in jumps])
        total = float(propensities.sum()) if len(jumps) else 0.0
        if not math.isfinite(total):
            raise SimulationError(f"Total propensity overflowed in state {graph}")
        if total == 0:
            record_until(math.inf)
            break

        t_next = t + rng.exponential(1 / total)
        if t_next > t_max:
            record_until(math.inf)
            break
        # left limit: the current state holds at a sample time equal to the jump time
        record_until(t_next)

        chosen = int(np.searchsorted(np.cumsum(propensities), rng.random() * total, side="right"))
        jump = jumps[min(chosen, len(jumps) - 1)]
        t, graph, key = t_next, jump.graph, jump.target
        events.append(Event(time=t, transition=jump.transition, state=key))

    return Trajectory(seed=seed,
                      index=index,
                      events=tuple(events),
                      sample_times=sample_times,
                      samples=samples,
                      observables=tuple(str(o) for o in observables))


def ssa_simulate(spec: CTMCSpec,
                 t_max: float,
                 n_trajectories: int,
                 seed: int,
                 sample_times: Sequence[float],
                 observables: Optional[Sequence[Observable]] = None,
                 workers: int = 1) -> List[Trajectory]:
    """
    Gillespie direct method: exponential waiting times with the total propensity, then a jump chosen with probability
    proportional to its propensity κ_j · weight_j · (number of matches leading to that class).

    :param spec: Chain.
    :param t_max: Simulation horizon, t_max >= 0.
    :param n_trajectories: Number of independent trajectories, >= 1.
    :param seed: 64-bit master seed.
    :param sample_times: Times in [0, t_max] at which observables are recorded (left limits).
    :param observables: Recorded observables; vertex and edge counts by default.
    :param workers: Process pool size; 1 runs in this process.

    :return: Trajectories ordered by index.
    """

    if t_max < 0:
        raise SimulationError("t_max must be non-negative")
    if n_trajectories < 1:
        raise SimulationError("At least one trajectory is needed")
    sample_times = tuple(float(s) for s in sample_times)
    if any(s < 0 or s > t_max for s in sample_times) or list(sample_times) != sorted(sample_times):
        raise SimulationError("Sample times must be sorted and lie in [0, t_max]")

    observables = tuple(observables if observables is not None else default_observables(spec.kind))
    run = partial(_simulate_one, spec=spec, t_max=t_max, seed=seed,
                  sample_times=sample_times, observables=observables)

    logger.info("Simulating %d trajectories up to t=%g with %d worker(s)", n_trajectories, t_max, workers)
    if workers <= 1 or n_trajectories == 1:
        return [run(index) for index in range(n_trajectories)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, range(n_trajectories), chunksize=max(1, n_trajectories // (4 * workers))))


def sample_matrix(trajectories: Sequence[Trajectory], column: int) -> np.ndarray:
    """samples of one observable, shape (trajectories, sample times)."""
    return np.array([trajectory.samples[:, column] for trajectory in trajectories])


def sample_statistics(trajectories: Sequence[Trajectory], column: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    :return: Empirical mean and its standard error per sample time.
    """

    matrix = sample_matrix(trajectories, column)
    if len(matrix) < 2:
        return matrix.mean(axis=0), np.zeros(matrix.shape[1])
    return matrix.mean(axis=0), matrix.std(axis=0, ddof=1) / math.sqrt(len(matrix))
