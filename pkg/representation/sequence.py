import itertools
from collections import Counter
from fractions import Fraction
from typing import List, Tuple

from algebra.combinatorics import e_plus
from graphs.multigraph import UNDIRECTED, Multigraph, discrete_graph
from representation.canonical_representation import apply_power
from representation.state_vector import StateVector


Partition = Tuple[int, int, int]


def edge_multiplicities(graph: Multigraph) -> Partition:
    """
    Decodes a 3-vertex multigraph into the multiplicities of its three vertex pairs, largest first. Loops are not
    produced by e+ (its two vertices are matched injectively), so every edge joins a pair.
    """

    if graph.n_vertices != 3:
        raise ValueError(f"Expected a 3-vertex graph, got {graph.n_vertices} vertices")
    multiplicity = Counter(tuple(sorted(ends)) for _, ends in graph.incidence)
    pairs = itertools.combinations(graph.vertices, 2)
    return tuple(sorted((multiplicity[pair] for pair in pairs), reverse=True))


def hw_sequence(n: int) -> List[Tuple[Partition, Fraction]]:
    """
    Applies ρ(e+) n times to |•••⟩ and reads off E₊ⁿ|•••⟩ = 3 Σ_k T(n, k)|S(n, k)⟩.

    :param n: Number of applications, n >= 0.

    :return: (S(n, k), T(n, k)) rows in reverse-lexicographic partition order. For n = 0 the single row carries the raw
             coefficient 1 of the identity.
    """

    if n < 0:
        raise ValueError("The sequence index must be non-negative")

    psi = apply_power(e_plus(UNDIRECTED), StateVector.basis(discrete_graph(3, UNDIRECTED)), n)
    rows = Counter()
    for coefficient, graph in psi:
        rows[edge_multiplicities(graph)] += coefficient

    normalization = 1 if n == 0 else 3
    return [(partition, Fraction(rows[partition]) / normalization) for partition in sorted(rows, reverse=True)]
