import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.integrate import solve_ivp

from errors import SimulationError
from graphs.canonical import canonical_form
from graphs.multigraph import Multigraph
from representation.state_vector import FloatStateVector
from stochastic.ctmc import CTMCSpec, generator_entries, state_jumps


logger = logging.getLogger(__name__)

ODE_TOLERANCE = 1e-10
DEFAULT_LEAKAGE_THRESHOLD = 1e-8
MAX_STATES = 200_000

Truncation = Callable[[Multigraph], bool]


@dataclass(frozen=True)
class EdgeCountTruncation:
    """Keeps graphs with at most max_edges edges."""

    max_edges: int

    def __call__(self, graph: Multigraph) -> bool:
        return graph.n_edges <= self.max_edges


def edge_count_truncation(max_edges: int) -> EdgeCountTruncation:
    if max_edges < 0:
        raise SimulationError("The edge bound must be non-negative")
    return EdgeCountTruncation(max_edges)


def default_edge_truncation(n_vertices: int,
                            n_edges: int,
                            k_plus: float,
                            k_minus: float,
                            t_max: float = 0.0) -> int:
    """
    Edge bound mean + 10·√mean for the edge birth-death system, the mean being the stationary one (or the mean at t_max
    for creation-only chains), and never below the initial edge count.
    """

    pairs = math.comb(n_vertices, 2)
    mean = k_plus * pairs * t_max + n_edges if k_minus == 0 else max(k_plus / k_minus * pairs, n_edges)
    return max(n_edges, math.ceil(mean + 10 * math.sqrt(mean)))


def reachable_states(spec: CTMCSpec,
                     truncation: Optional[Truncation] = None,
                     max_states: int = MAX_STATES) -> List[Multigraph]:
    """
    Breadth-first closure of the initial state under the jumps of the chain, restricted to graphs accepted by the
    truncation predicate. Order is discovery order, the initial state first.
    """

    initial = canonical_form(spec.initial).representative
    if truncation is not None and not truncation(initial):
        raise SimulationError("The truncation rejects the initial state")

    seen = {canonical_form(initial).key}
    states, queue = [initial], deque([initial])
    while queue:
        graph = queue.popleft()
        for jump in state_jumps(spec, graph):
            if jump.target in seen or (truncation is not None and not truncation(jump.graph)):
                continue
            seen.add(jump.target)
            states.append(jump.graph)
            queue.append(jump.graph)
            if len(states) > max_states:
                raise SimulationError(f"More than {max_states} reachable states; tighten the truncation")
    return states


@dataclass(frozen=True)
class MasterEquationResult:
    """
    :param times: Grid times.
    :param states: State set indexing the columns of probabilities.
    :param probabilities: probabilities[i, a] = P(X(times[i]) = states[a]).
    :param leakage: 1 - Σ_a probabilities[i, a], the mass lost through the truncation boundary.
    :param boundary_rows: Indices of states with jumps leaving the set.
    """

    times: np.ndarray
    states: Tuple[Multigraph, ...]
    probabilities: np.ndarray
    leakage: np.ndarray
    boundary_rows: Tuple[int, ...]
    leakage_threshold: float

    @property
    def leakage_bound(self) -> float:
        return float(self.leakage.max()) if len(self.leakage) else 0.0

    @property
    def leakage_exceeded(self) -> bool:
        return self.leakage_bound > self.leakage_threshold

    def state_vector(self, index: int) -> FloatStateVector:
        return FloatStateVector.from_graphs(zip(self.probabilities[index], self.states))

    def state_vectors(self) -> List[FloatStateVector]:
        return [self.state_vector(i) for i in range(len(self.times))]

    def expectation(self, values: Sequence[float]) -> np.ndarray:
        """Σ_a P(states[a]) · values[a] at every grid time."""
        return self.probabilities @ np.asarray(values, dtype=float)


def generator_matrix(spec: CTMCSpec, states: Sequence[Multigraph]) -> Tuple[sparse.csr_matrix, Tuple[int, ...]]:
    entries, leakage = generator_entries(spec, states)
    rows, columns, values = zip(*entries) if entries else ((), (), ())
    matrix = sparse.coo_matrix((values, (rows, columns)), shape=(len(states), len(states))).tocsr()
    return matrix, tuple(sorted(leakage))


def master_equation_integrate(spec: CTMCSpec,
                              truncation: Optional[Truncation],
                              times: Sequence[float],
                              tolerance: float = ODE_TOLERANCE,
                              leakage_threshold: float = DEFAULT_LEAKAGE_THRESHOLD) -> MasterEquationResult:
    """
    Integrates the master equation dψ/dt = Qᵀψ over the truncated state set with an adaptive Runge-Kutta 4(5) scheme.

    :param spec: Chain; ψ(0) is the point mass on the initial graph.
    :param truncation: State predicate bounding the reachable set, None for a finite chain.
    :param times: Non-decreasing, non-negative output grid.
    :param tolerance: Absolute and relative tolerance of the integrator.
    :param leakage_threshold: Mass deficit above which the run is flagged.

    :return: MasterEquationResult.
    """

    times = np.asarray(times, dtype=float)
    if len(times) == 0:
        raise SimulationError("The time grid is empty")
    if np.any(times < 0) or np.any(np.diff(times) < 0):
        raise SimulationError("The time grid must be non-negative and non-decreasing")

    states = reachable_states(spec, truncation)
    generator, boundary = generator_matrix(spec, states)
    transposed = generator.transpose().tocsr()
    logger.info("Master equation over %d states (%d boundary rows)", len(states), len(boundary))

    psi0 = np.zeros(len(states))
    psi0[0] = 1.0
    t_end = float(times[-1])
    if t_end == 0:
        probabilities = np.tile(psi0, (len(times), 1))
    else:
        solution = solve_ivp(lambda t, y: transposed @ y, (0.0, t_end), psi0,
                             method="RK45", t_eval=times, rtol=tolerance, atol=tolerance)
        if not solution.success:
            raise SimulationError(f"Master equation integration failed: {solution.message}")
        probabilities = solution.y.T

    leakage = 1.0 - probabilities.sum(axis=1)
    result = MasterEquationResult(times=times,
                                  states=tuple(states),
                                  probabilities=probabilities,
                                  leakage=leakage,
                                  boundary_rows=boundary,
                                  leakage_threshold=leakage_threshold)
    if result.leakage_exceeded:
        logger.warning("Truncation leakage %.3e exceeds %.1e", result.leakage_bound, leakage_threshold)
    return result
