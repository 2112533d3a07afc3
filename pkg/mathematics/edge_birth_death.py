"""
Closed forms for the edge birth-death system on N_V vertices: edges are created between any pair of distinct vertices
with rate κ₊ per pair and each edge is deleted with rate κ₋. The moment generating function of the edge count is

    E(t; ε) = exp[(κ₊/κ₋) C(N_V, 2) (e^ε - 1)(1 - e^{-κ₋ t})] · ((e^ε - 1) e^{-κ₋ t} + 1)^{N_E}

and its limit κ₋ -> 0 is exp[κ₊ C(N_V, 2) t (e^ε - 1)] · e^{ε N_E}.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import comb, exp
from typing import Callable

import numpy as np
import sympy
from scipy import stats

from mathematics.general import get_derivative, get_numeric_function, get_symbol_value_mapping


DISTRIBUTION_COVERAGE = 1 - 1e-12
MAX_EPS_ORDER = 2

t_symbol, eps_symbol = sympy.symbols("t epsilon", real=True)
k_plus_symbol, k_minus_symbol = sympy.symbols("k_plus k_minus", positive=True)
pairs_symbol, n_edges_symbol = sympy.symbols("C N_E", nonnegative=True)


def generating_function(creation_only: bool = False) -> sympy.Expr:
    """
    E(t; ε) with symbolic parameters k_plus, k_minus, C = C(N_V, 2) and N_E.

    :param creation_only: Build the κ₋ -> 0 limit instead.
    """

    growth = sympy.exp(eps_symbol) - 1
    if creation_only:
        return sympy.exp(k_plus_symbol * pairs_symbol * t_symbol * growth) * sympy.exp(eps_symbol * n_edges_symbol)
    survival = sympy.exp(-k_minus_symbol * t_symbol)
    return (sympy.exp(k_plus_symbol / k_minus_symbol * pairs_symbol * growth * (1 - survival))
            * (growth * survival + 1) ** n_edges_symbol)


def _check(n_vertices: int, n_edges: int, k_plus: float, k_minus: float) -> None:
    if n_vertices < 0 or n_edges < 0:
        raise ValueError("Vertex and edge counts must be non-negative")
    if k_plus < 0 or k_minus < 0:
        raise ValueError("Rates must be non-negative")


@lru_cache(maxsize=256)
def moment_function(n_vertices: int, n_edges: int, k_plus: float, k_minus: float, eps_order: int) -> Callable:
    """
    The eps_order-th ε-derivative of E(t; ε) at ε = 0 as a numeric function of t: order 0 is 1, order 1 the mean
    ⟨O_E⟩(t), order 2 the raw second moment ⟨O_E²⟩(t).
    """

    if not 0 <= eps_order <= MAX_EPS_ORDER:
        raise ValueError(f"eps_order must be in 0..{MAX_EPS_ORDER}, got {eps_order}")
    _check(n_vertices, n_edges, k_plus, k_minus)

    creation_only = k_minus == 0
    mapping = get_symbol_value_mapping([k_plus_symbol, k_minus_symbol, pairs_symbol, n_edges_symbol],
                                       [k_plus, k_minus if not creation_only else 1, comb(n_vertices, 2), n_edges])
    function = generating_function(creation_only).subs(mapping)
    derivative = get_derivative(function, eps_symbol, eps_order).subs(eps_symbol, 0)
    return get_numeric_function(derivative, t_symbol)


def edge_moment_closed_form(n_vertices: int,
                            n_edges: int,
                            k_plus: float,
                            k_minus: float,
                            t: float,
                            eps_order: int = 1) -> float:
    """
    :param n_vertices: N_V, constant along the dynamics.
    :param n_edges: N_E at t = 0.
    :param k_plus: Creation rate per vertex pair.
    :param k_minus: Deletion rate per edge; 0 selects the creation-only limit κ₊ C(N_V, 2) t + N_E.
    :param t: Time, t >= 0.
    :param eps_order: 0, 1 or 2.

    :return: ∂^eps_order E(t; ε) at ε = 0.
    """

    return float(moment_function(n_vertices, n_edges, k_plus, k_minus, eps_order)(t))


def edge_variance_closed_form(n_vertices: int, n_edges: int, k_plus: float, k_minus: float, t: float) -> float:
    mean = edge_moment_closed_form(n_vertices, n_edges, k_plus, k_minus, t, 1)
    return edge_moment_closed_form(n_vertices, n_edges, k_plus, k_minus, t, 2) - mean ** 2


def edge_moment_finite_difference(n_vertices: int,
                                  n_edges: int,
                                  k_plus: float,
                                  k_minus: float,
                                  t: float,
                                  eps_order: int,
                                  step: float = 1e-3) -> float:
    """
    Central finite difference of E(t; ε) in ε at 0; cross-checks the symbolic derivatives.
    """

    creation_only = k_minus == 0
    mapping = get_symbol_value_mapping([k_plus_symbol, k_minus_symbol, pairs_symbol, n_edges_symbol, t_symbol],
                                       [k_plus, k_minus if not creation_only else 1, comb(n_vertices, 2), n_edges, t])
    mgf = get_numeric_function(generating_function(creation_only).subs(mapping), eps_symbol)
    if eps_order == 0:
        return float(mgf(0.0))
    if eps_order == 1:
        return float((mgf(step) - mgf(-step)) / (2 * step))
    if eps_order == 2:
        return float((mgf(step) - 2 * mgf(0.0) + mgf(-step)) / step ** 2)
    raise ValueError(f"eps_order must be in 0..{MAX_EPS_ORDER}, got {eps_order}")


@dataclass(frozen=True)
class EdgeCountDistribution:
    """
    :param probabilities: probabilities[n] = P(edge count = n), n = 0 .. len - 1.
    """

    probabilities: np.ndarray

    @property
    def support(self) -> np.ndarray:
        return np.arange(len(self.probabilities))

    def mean(self) -> float:
        return float(np.dot(self.support, self.probabilities))

    def pmf(self, n: int) -> float:
        return float(self.probabilities[n]) if 0 <= n < len(self.probabilities) else 0.0


def poisson_parameter(n_vertices: int, k_plus: float, k_minus: float, t: float) -> float:
    if k_minus == 0:
        return k_plus * comb(n_vertices, 2) * t
    return k_plus / k_minus * comb(n_vertices, 2) * (1 - exp(-k_minus * t))


def edge_distribution_closed_form(n_vertices: int,
                                  n_edges: int,
                                  k_plus: float,
                                  k_minus: float,
                                  t: float,
                                  coverage: float = DISTRIBUTION_COVERAGE) -> EdgeCountDistribution:
    """
    Edge count distribution at time t: newly created edges still alive are Poisson distributed and surviving initial
    edges are Binomial(N_E, e^{-κ₋ t}); the count is their sum, so the law is the convolution of the two.

    :param coverage: Probability mass the returned support must hold, at least 1 - 1e-12.

    :return: Explicit probabilities on 0 .. n_max.
    """

    _check(n_vertices, n_edges, k_plus, k_minus)
    rate = poisson_parameter(n_vertices, k_plus, k_minus, t)
    survival = exp(-k_minus * t)

    poisson_max = int(stats.poisson.ppf(coverage, rate)) + 1 if rate > 0 else 0
    poisson_pmf = stats.poisson.pmf(np.arange(poisson_max + 1), rate) if rate > 0 else np.ones(1)
    binomial_pmf = stats.binom.pmf(np.arange(n_edges + 1), n_edges, survival)
    return EdgeCountDistribution(probabilities=np.convolve(poisson_pmf, binomial_pmf))


def total_variation_distance(p: np.ndarray, q: np.ndarray) -> float:
    size = max(len(p), len(q))
    p = np.pad(np.asarray(p, dtype=float), (0, size - len(p)))
    q = np.pad(np.asarray(q, dtype=float), (0, size - len(q)))
    return 0.5 * float(np.abs(p - q).sum())
