import itertools
from typing import Dict, List, Tuple

import numpy as np

from graphs.multigraph import DIRECTED, KINDS, UNDIRECTED, GraphMorphism, Multigraph
from rewriting.rules import LinearRule


MAX_RULE_VERTICES = 3
MAX_RULE_EDGES = 2
MAX_HOST_VERTICES = 4
MAX_HOST_EDGES = 3


def corpus_rng(seed: int, stream: int = 0, kind: str = UNDIRECTED) -> np.random.Generator:
    """Independent Philox stream per (seed, stream, kind)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(stream, KINDS.index(kind)))))


def _random_edges(rng: np.random.Generator,
                  kind: str,
                  vertices: List[str],
                  count: int,
                  prefix: str) -> Dict[str, Tuple[str, str]]:
    # loops included; directed pairs come in both orientations
    if kind == DIRECTED:
        pairs = list(itertools.product(vertices, repeat=2))
    else:
        pairs = list(itertools.combinations_with_replacement(vertices, 2))
    if not pairs:
        return {}
    return {f"{prefix}{i}": pairs[int(rng.integers(len(pairs)))] for i in range(count)}


def random_rule(rng: np.random.Generator,
                kind: str = UNDIRECTED,
                max_vertices: int = MAX_RULE_VERTICES,
                max_edges: int = MAX_RULE_EDGES) -> LinearRule:
    """
    Random linear rule whose output and input each have at most max_vertices vertices and max_edges edges. The context
    is drawn first; output and input extend it with fresh vertices and edges, so both legs are inclusions.
    """

    context_vertices = [f"k{i}" for i in range(int(rng.integers(max_vertices + 1)))]
    context_edges = _random_edges(rng, kind, context_vertices, int(rng.integers(max_edges + 1)), "ke")
    context = Multigraph(kind=kind, vertices=context_vertices, incidence=context_edges)

    def extend(prefix: str) -> Multigraph:
        vertices = context_vertices + [f"{prefix}{i}" for i in
                                       range(int(rng.integers(max_vertices - len(context_vertices) + 1)))]
        extra = int(rng.integers(max_edges - len(context_edges) + 1))
        edges = {**context_edges, **_random_edges(rng, kind, vertices, extra, f"{prefix}e")}
        return Multigraph(kind=kind, vertices=vertices, incidence=edges)

    output, input_graph = extend("o"), extend("i")
    inclusion = ({v: v for v in context.vertices}, {e: e for e in context.edges})
    return LinearRule(output=output, context=context, input=input_graph,
                      o=GraphMorphism(context, output, *inclusion),
                      i=GraphMorphism(context, input_graph, *inclusion))


def random_host(rng: np.random.Generator,
                kind: str = UNDIRECTED,
                max_vertices: int = MAX_HOST_VERTICES,
                max_edges: int = MAX_HOST_EDGES) -> Multigraph:
    vertices = [f"x{i}" for i in range(int(rng.integers(max_vertices + 1)))]
    edges = _random_edges(rng, kind, vertices, int(rng.integers(max_edges + 1)), "h")
    return Multigraph(kind=kind, vertices=vertices, incidence=edges)


def rule_triples(seed: int, samples: int, kind: str = UNDIRECTED) -> List[Tuple[LinearRule, LinearRule, LinearRule]]:
    rng = corpus_rng(seed, 0, kind)
    return [(random_rule(rng, kind), random_rule(rng, kind), random_rule(rng, kind)) for _ in range(samples)]


def rule_pairs_with_hosts(seed: int,
                          samples: int,
                          kind: str = UNDIRECTED) -> List[Tuple[LinearRule, LinearRule, Multigraph]]:
    """(p2, p1, X) samples; p1 acts first on X."""
    rng = corpus_rng(seed, 1, kind)
    return [(random_rule(rng, kind), random_rule(rng, kind), random_host(rng, kind)) for _ in range(samples)]


def rules_with_hosts(seed: int, samples: int, kind: str = UNDIRECTED) -> List[Tuple[LinearRule, Multigraph]]:
    rng = corpus_rng(seed, 2, kind)
    return [(random_rule(rng, kind), random_host(rng, kind)) for _ in range(samples)]
