from __future__ import annotations

import itertools
from collections import defaultdict
from functools import lru_cache
from typing import Dict, Iterator, List, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import MultiDiGraphMatcher, MultiGraphMatcher

from graphs.multigraph import GraphMorphism, Multigraph, check_same_kind


def to_networkx(graph: Multigraph) -> nx.MultiGraph | nx.MultiDiGraph:
    """Vertex ids become nodes (in sorted order) and every edge one parallel networkx edge keyed by its id."""
    result = nx.MultiDiGraph() if graph.is_directed else nx.MultiGraph()
    result.add_nodes_from(graph.vertices)
    for edge_id, ends in graph.incidence:
        result.add_edge(ends[0], ends[-1], key=edge_id)
    return result


def _edges_by_ends(graph: Multigraph) -> Dict[Tuple[str, ...], List[str]]:
    grouped = defaultdict(list)
    for edge_id, ends in graph.incidence:
        grouped[ends].append(edge_id)
    return grouped


def _image_ends(graph: Multigraph, ends: Tuple[str, ...], assignment: Dict[str, str]) -> Tuple[str, ...]:
    image = tuple(assignment[v] for v in ends)
    return image if graph.is_directed else tuple(sorted(set(image)))


def _edge_assignments(pattern: Multigraph,
                      assignment: Dict[str, str],
                      host_edges: Dict[Tuple[str, ...], List[str]]) -> Iterator[Dict[str, str]]:
    """
    Yields every injective edge map compatible with an injective vertex assignment. Pattern edges are grouped by the
    host incidence they must land on, and each group is mapped by a partial permutation of the host's parallel edges.
    """

    groups = defaultdict(list)
    for edge_id, ends in pattern.incidence:
        groups[_image_ends(pattern, ends, assignment)].append(edge_id)

    keys = sorted(groups)
    choices = []
    for key in keys:
        candidates = host_edges.get(key, [])
        if len(candidates) < len(groups[key]):
            return
        choices.append(list(itertools.permutations(candidates, len(groups[key]))))

    for selection in itertools.product(*choices):
        edge_map = {}
        for key, images in zip(keys, selection):
            edge_map.update(zip(groups[key], images))
        yield edge_map


@lru_cache(maxsize=8192)
def _monos(pattern: Multigraph, host: Multigraph) -> Tuple[GraphMorphism, ...]:
    matcher_class = MultiDiGraphMatcher if host.is_directed else MultiGraphMatcher
    # VF2 mono mode checks adjacency and edge multiplicities (loops included); edges are placed afterwards
    matcher = matcher_class(to_networkx(host), to_networkx(pattern))
    host_edges = _edges_by_ends(host)

    results = []
    for host_to_pattern in matcher.subgraph_monomorphisms_iter():
        assignment = {p: h for h, p in host_to_pattern.items()}
        for edge_map in _edge_assignments(pattern, assignment, host_edges):
            results.append(GraphMorphism(pattern, host, assignment, edge_map))
    results.sort(key=lambda m: (m.vertex_map, m.edge_map))
    return tuple(results)


def enumerate_monos(pattern: Multigraph, host: Multigraph) -> List[GraphMorphism]:
    """
    Enumerates every injective structure-preserving morphism pattern -> host. Morphisms are concrete maps, not classes
    up to automorphism: the vertex-deletion operator needs n distinct matches of a single vertex into n vertices.

    :param pattern: Graph to embed.
    :param host: Graph to embed into, of the same kind.

    :return: List of monomorphisms sorted by their vertex and edge maps.
    """

    check_same_kind(pattern, host)
    if pattern.n_vertices > host.n_vertices or pattern.n_edges > host.n_edges:
        return []
    return list(_monos(pattern, host))


def count_monos(pattern: Multigraph, host: Multigraph) -> int:
    return len(enumerate_monos(pattern, host))
