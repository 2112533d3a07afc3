from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Tuple

from graphs.multigraph import GraphMorphism, Multigraph


@dataclass(frozen=True, order=True)
class CanonicalKey:
    """Exact invariant of an isomorphism class: equal keys <=> isomorphic graphs."""

    kind: str
    code: bytes


@dataclass(frozen=True)
class CanonicalForm:
    """
    :param key: Isomorphism-class key.
    :param representative: Canonically labeled member of the class (vertices v0.., edges e0..).
    :param relabeling: Isomorphism from the input graph onto the representative.
    """

    key: CanonicalKey
    representative: Multigraph
    relabeling: GraphMorphism


Code = Tuple[Tuple[str, ...], Tuple[Tuple[str, int, int], ...]]


def _adjacency(graph: Multigraph, edge_colors: Mapping[str, str]) -> Dict[str, List[Tuple[str, str, str]]]:
    adjacency = defaultdict(list)
    for edge_id, ends in graph.incidence:
        color = edge_colors.get(edge_id, "")
        if len(set(ends)) == 1:
            adjacency[ends[0]].append(("loop", color, ends[0]))
        elif graph.is_directed:
            adjacency[ends[0]].append(("out", color, ends[1]))
            adjacency[ends[1]].append(("in", color, ends[0]))
        else:
            adjacency[ends[0]].append(("edge", color, ends[1]))
            adjacency[ends[1]].append(("edge", color, ends[0]))
    return adjacency


def _refine(vertices: List[str], colors: Dict[str, int], adjacency) -> Dict[str, int]:
    """
    Colour refinement: splits colour classes by the multiset of (edge kind, edge colour, neighbour colour) until the
    partition is stable. New colours are ranks of sorted signatures, so the ordered partition is isomorphism-invariant.
    """

    while True:
        signatures = {v: (colors[v], tuple(sorted((tag, color, colors[u]) for tag, color, u in adjacency[v])))
                      for v in vertices}
        ranks = {signature: rank for rank, signature in enumerate(sorted(set(signatures.values())))}
        refined = {v: ranks[signatures[v]] for v in vertices}
        if len(ranks) == len(set(colors[v] for v in vertices)):
            return refined
        colors = refined


def _code(graph: Multigraph,
          order: List[str],
          edges: List[str],
          vertex_colors: Mapping[str, str],
          edge_colors: Mapping[str, str]) -> Code:
    position = {v: i for i, v in enumerate(order)}
    entries = []
    for edge_id in edges:
        ends = graph.ends(edge_id)
        if graph.is_directed:
            a, b = position[ends[0]], position[ends[1]]
        else:
            a, b = sorted(position[v] for v in ends) if len(ends) == 2 else (position[ends[0]],) * 2
        entries.append((edge_colors.get(edge_id, ""), a, b))
    return tuple(vertex_colors.get(v, "") for v in order), tuple(sorted(entries))


def _search(graph: Multigraph,
            vertices: List[str],
            edges: List[str],
            colors: Dict[str, int],
            adjacency,
            vertex_colors: Mapping[str, str],
            edge_colors: Mapping[str, str]) -> Tuple[Code, List[str]]:
    """
    Individualisation-refinement search for the lexicographically least code of one connected component. Every leaf is
    a vertex ordering compatible with the refined ordered partition; the minimum over all leaves is exact.
    """

    colors = _refine(vertices, colors, adjacency)
    cells = defaultdict(list)
    for v in vertices:
        cells[colors[v]].append(v)

    if len(cells) == len(vertices):
        order = sorted(vertices, key=colors.get)
        return _code(graph, order, edges, vertex_colors, edge_colors), order

    target = min(c for c, members in cells.items() if len(members) > 1)
    best: Optional[Tuple[Code, List[str]]] = None
    for chosen in sorted(cells[target]):
        individualized = {u: 2 * c + (1 if c == target and u != chosen else 0) for u, c in colors.items()}
        candidate = _search(graph, vertices, edges, individualized, adjacency, vertex_colors, edge_colors)
        if best is None or candidate[0] < best[0]:
            best = candidate
    return best


def _components(graph: Multigraph) -> List[Tuple[List[str], List[str]]]:
    parent = {v: v for v in graph.vertices}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for _, ends in graph.incidence:
        roots = sorted({find(v) for v in ends})
        for root in roots[1:]:
            parent[root] = roots[0]

    vertices, edges = defaultdict(list), defaultdict(list)
    for v in graph.vertices:
        vertices[find(v)].append(v)
    for edge_id, ends in graph.incidence:
        edges[find(ends[0])].append(edge_id)
    return [(vertices[root], edges[root]) for root in sorted(vertices)]


def _canonical_form(graph: Multigraph,
                    vertex_colors: Mapping[str, str],
                    edge_colors: Mapping[str, str]) -> CanonicalForm:
    adjacency = _adjacency(graph, edge_colors)

    solved = []
    for vertices, edges in _components(graph):
        initial_ranks = {c: i for i, c in enumerate(sorted({vertex_colors.get(v, "") for v in vertices}))}
        colors = {v: initial_ranks[vertex_colors.get(v, "")] for v in vertices}
        solved.append(_search(graph, vertices, edges, colors, adjacency, vertex_colors, edge_colors))
    solved.sort(key=lambda item: item[0])

    order = [v for _, component_order in solved for v in component_order]
    position = {v: i for i, v in enumerate(order)}

    def edge_entry(edge_id: str):
        ends = graph.ends(edge_id)
        indices = [position[v] for v in ends]
        if not graph.is_directed:
            indices = sorted(indices) * (2 if len(indices) == 1 else 1)
        elif len(indices) == 1:
            indices = indices * 2
        return edge_colors.get(edge_id, ""), indices[0], indices[1], edge_id

    edge_order = sorted(graph.edges, key=edge_entry)
    vertex_map = {v: f"v{i}" for i, v in enumerate(order)}
    edge_map = {e: f"e{i}" for i, e in enumerate(edge_order)}
    representative = graph.relabel(vertex_map, edge_map)

    code = tuple(component_code for component_code, _ in solved)
    key = CanonicalKey(kind=graph.kind, code=repr(code).encode())
    return CanonicalForm(key=key,
                         representative=representative,
                         relabeling=GraphMorphism(graph, representative, vertex_map, edge_map))


@lru_cache(maxsize=65536)
def canonical_form(graph: Multigraph) -> CanonicalForm:
    """
    Computes the canonical form of a graph. The graph is split into connected components, each component is labeled by
    the least code over an individualisation-refinement search, and components are sorted by their codes.

    :param graph: Well-formed multigraph.

    :return: CanonicalForm with the exact class key, the canonical representative and the relabeling isomorphism.
    """

    return _canonical_form(graph, {}, {})


@lru_cache(maxsize=65536)
def _colored_canonical_form(graph: Multigraph,
                            vertex_colors: Tuple[Tuple[str, str], ...],
                            edge_colors: Tuple[Tuple[str, str], ...]) -> CanonicalForm:
    return _canonical_form(graph, dict(vertex_colors), dict(edge_colors))


def colored_canonical_form(graph: Multigraph,
                           vertex_colors: Mapping[str, str],
                           edge_colors: Mapping[str, str]) -> CanonicalForm:
    """
    Canonical form of a graph whose vertices and edges carry string colours; isomorphisms must preserve colours. Rule
    spans are keyed through this function (see rewriting.rules).
    """

    return _colored_canonical_form(graph, tuple(sorted(vertex_colors.items())), tuple(sorted(edge_colors.items())))


def canonical_key(graph: Multigraph) -> CanonicalKey:
    return canonical_form(graph).key


def is_isomorphic(g: Multigraph, h: Multigraph) -> bool:
    if g.kind != h.kind or g.n_vertices != h.n_vertices or g.n_edges != h.n_edges:
        return False
    return canonical_key(g) == canonical_key(h)


def find_isomorphism(g: Multigraph, h: Multigraph) -> Optional[GraphMorphism]:
    """
    :return: Some isomorphism g -> h, or None when the graphs are not isomorphic.
    """

    if not is_isomorphic(g, h):
        return None
    return canonical_form(h).relabeling.inverse().after(canonical_form(g).relabeling)
