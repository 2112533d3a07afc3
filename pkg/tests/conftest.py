import pytest

from algebra.combinatorics import generators
from algebra.heisenberg_weyl import x, x_dagger
from graphs.multigraph import DIRECTED, UNDIRECTED, discrete_graph, graph_from_edges
from stochastic.ctmc import edge_birth_death_spec


@pytest.fixture(params=[UNDIRECTED, DIRECTED])
def kind(request):
    return request.param


@pytest.fixture
def dots():
    """|n⟩ as a function of n."""
    return lambda n, kind=UNDIRECTED: discrete_graph(n, kind)


@pytest.fixture
def triangle():
    return graph_from_edges([("a", "b"), ("b", "c"), ("a", "c")])


@pytest.fixture
def hw_generators():
    return x_dagger(), x()


@pytest.fixture
def combinatorics_generators():
    return tuple(generators().values())


@pytest.fixture
def edge_spec():
    """N_V = 2, N_E = 0, κ₊ = κ₋ = 1."""
    return edge_birth_death_spec(2, 0, 1.0, 1.0)
