from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from errors import GraphValidationError, KindMismatchError


DIRECTED = "directed"
UNDIRECTED = "undirected"
KINDS = (DIRECTED, UNDIRECTED)


def _normalize_ends(kind: str, edge_id: str, ends: Sequence[str]) -> Tuple[str, ...]:
    """
    Brings the incidence of a single edge to its stored form. Directed edges keep the ordered pair (src, tgt),
    undirected edges are stored as the sorted tuple of their 1 (self-loop) or 2 distinct end vertices.

    :param kind: Graph kind, "directed" or "undirected".
    :param edge_id: Edge id, only used in error messages.
    :param ends: Incidence as given by the caller.

    :return: Normalized incidence tuple.
    """

    ends = tuple(ends)
    if kind == DIRECTED:
        if len(ends) != 2:
            raise GraphValidationError(f"Directed edge {edge_id!r} needs exactly (src, tgt), got {ends!r}")
        return ends

    distinct = tuple(sorted(set(ends)))
    if len(distinct) not in (1, 2) or len(ends) > 2:
        raise GraphValidationError(f"Undirected edge {edge_id!r} needs 1 or 2 end vertices, got {ends!r}")
    return distinct


@dataclass(frozen=True)
class Multigraph:
    """
    Finite directed or undirected multigraph with opaque string ids. Vertices and edges are kept sorted by id, so two
    graphs built from the same data compare (and hash) equal regardless of insertion order.

    :param kind: "directed" or "undirected".
    :param vertices: Vertex ids.
    :param incidence: Mapping (or sequence of pairs) edge id -> end vertices.
    """

    kind: str
    vertices: Tuple[str, ...] = ()
    incidence: Tuple[Tuple[str, Tuple[str, ...]], ...] = ()
    _ends: Dict[str, Tuple[str, ...]] = field(init=False, repr=False, compare=False, hash=False)
    _vertex_set: frozenset = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GraphValidationError(f"Wrong Graph Kind: {self.kind}")

        vertices = tuple(sorted(self.vertices))
        if len(set(vertices)) != len(vertices):
            raise GraphValidationError(f"Duplicate vertex ids in {vertices!r}")
        vertex_set = frozenset(vertices)

        pairs = self.incidence.items() if isinstance(self.incidence, Mapping) else self.incidence
        ends: Dict[str, Tuple[str, ...]] = {}
        for edge_id, edge_ends in pairs:
            if edge_id in ends:
                raise GraphValidationError(f"Duplicate edge id {edge_id!r}")
            normalized = _normalize_ends(self.kind, edge_id, edge_ends)
            missing = [v for v in normalized if v not in vertex_set]
            if missing:
                raise GraphValidationError(f"Edge {edge_id!r} is incident to undeclared vertices {missing!r}")
            ends[edge_id] = normalized

        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "incidence", tuple(sorted(ends.items())))
        object.__setattr__(self, "_ends", ends)
        object.__setattr__(self, "_vertex_set", vertex_set)

    @property
    def edges(self) -> Tuple[str, ...]:
        return tuple(edge_id for edge_id, _ in self.incidence)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.incidence)

    @property
    def is_directed(self) -> bool:
        return self.kind == DIRECTED

    def is_empty(self) -> bool:
        return not self.vertices and not self.incidence

    def has_vertex(self, vertex: str) -> bool:
        return vertex in self._vertex_set

    def has_edge(self, edge: str) -> bool:
        return edge in self._ends

    def ends(self, edge: str) -> Tuple[str, ...]:
        return self._ends[edge]

    def incident_edges(self, vertex: str) -> Tuple[str, ...]:
        return tuple(edge_id for edge_id, ends in self.incidence if vertex in ends)

    def parallel_edges(self, ends: Tuple[str, ...]) -> Tuple[str, ...]:
        """
        :param ends: Normalized incidence tuple.

        :return: Ids of all edges with exactly this incidence.
        """
        return tuple(edge_id for edge_id, edge_ends in self.incidence if edge_ends == ends)

    def relabel(self, vertex_map: Mapping[str, str], edge_map: Mapping[str, str]) -> Multigraph:
        """
        Renames ids with two bijections. The result is isomorphic to self.

        :param vertex_map: Old vertex id -> new vertex id.
        :param edge_map: Old edge id -> new edge id.

        :return: Relabeled graph.
        """

        return Multigraph(kind=self.kind,
                          vertices=[vertex_map[v] for v in self.vertices],
                          incidence={edge_map[e]: [vertex_map[v] for v in ends] for e, ends in self.incidence})

    def subgraph(self, vertices: Iterable[str], edges: Iterable[str]) -> Multigraph:
        vertices = set(vertices)
        return Multigraph(kind=self.kind,
                          vertices=vertices,
                          incidence={e: self._ends[e] for e in edges})

    def without(self, vertices: Iterable[str], edges: Iterable[str]) -> Multigraph:
        vertices, edges = set(vertices), set(edges)
        return self.subgraph([v for v in self.vertices if v not in vertices],
                             [e for e in self.edges if e not in edges])

    def to_dict(self) -> dict:
        if self.is_directed:
            edge_list = [{"id": e, "src": ends[0], "tgt": ends[1]} for e, ends in self.incidence]
        else:
            edge_list = [{"id": e, "ends": list(ends)} for e, ends in self.incidence]
        return {"kind": self.kind, "vertices": list(self.vertices), "edges": edge_list}

    def __str__(self):
        arrow = "->" if self.is_directed else "--"
        edges = ", ".join(f"{e}:{arrow.join(ends)}" for e, ends in self.incidence)
        return f"{self.kind[0].upper()}({len(self.vertices)} | {edges})"


def _as_pairs(mapping: Mapping[str, str] | Iterable[Tuple[str, str]]) -> Tuple[Tuple[str, str], ...]:
    items = mapping.items() if isinstance(mapping, Mapping) else mapping
    return tuple(sorted(items))


@dataclass(frozen=True)
class GraphMorphism:
    """
    Structure-preserving map between two multigraphs of the same kind. The maps are checked on construction: they must
    be total on the source and commute with the incidence.
    """

    source: Multigraph
    target: Multigraph
    vertex_map: Tuple[Tuple[str, str], ...] = ()
    edge_map: Tuple[Tuple[str, str], ...] = ()
    _v: Dict[str, str] = field(init=False, repr=False, compare=False, hash=False)
    _e: Dict[str, str] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        vertex_map = _as_pairs(self.vertex_map)
        edge_map = _as_pairs(self.edge_map)
        object.__setattr__(self, "vertex_map", vertex_map)
        object.__setattr__(self, "edge_map", edge_map)
        object.__setattr__(self, "_v", dict(vertex_map))
        object.__setattr__(self, "_e", dict(edge_map))
        self._check()

    def _check(self) -> None:
        source, target = self.source, self.target
        if source.kind != target.kind:
            raise KindMismatchError(f"Morphism between {source.kind} and {target.kind} graphs")
        if set(self._v) != set(source.vertices) or set(self._e) != set(source.edges):
            raise GraphValidationError("Morphism is not total on its source")
        if any(not target.has_vertex(v) for v in self._v.values()):
            raise GraphValidationError("Morphism maps a vertex outside of its target")
        if any(not target.has_edge(e) for e in self._e.values()):
            raise GraphValidationError("Morphism maps an edge outside of its target")

        for edge_id, ends in source.incidence:
            image = tuple(self._v[v] for v in ends)
            if not source.is_directed:
                image = tuple(sorted(set(image)))
            if image != target.ends(self._e[edge_id]):
                raise GraphValidationError(f"Morphism does not preserve the incidence of edge {edge_id!r}")

    @classmethod
    def identity(cls, graph: Multigraph) -> GraphMorphism:
        return cls(graph, graph, {v: v for v in graph.vertices}, {e: e for e in graph.edges})

    @classmethod
    def empty(cls, target: Multigraph) -> GraphMorphism:
        return cls(Multigraph(kind=target.kind), target)

    @property
    def vmap(self) -> Dict[str, str]:
        return dict(self._v)

    @property
    def emap(self) -> Dict[str, str]:
        return dict(self._e)

    def v(self, vertex: str) -> str:
        return self._v[vertex]

    def e(self, edge: str) -> str:
        return self._e[edge]

    def is_mono(self) -> bool:
        return len(set(self._v.values())) == len(self._v) and len(set(self._e.values())) == len(self._e)

    def is_iso(self) -> bool:
        return (self.is_mono()
                and len(self._v) == self.target.n_vertices
                and len(self._e) == self.target.n_edges)

    def after(self, first: GraphMorphism) -> GraphMorphism:
        """
        Composition self ∘ first.

        :param first: Morphism applied first, its target must equal the source of self.

        :return: Composite morphism first.source -> self.target.
        """

        if first.target != self.source:
            raise GraphValidationError("Morphisms are not composable")
        return GraphMorphism(first.source, self.target,
                             {v: self._v[w] for v, w in first.vertex_map},
                             {e: self._e[f] for e, f in first.edge_map})

    def inverse(self) -> GraphMorphism:
        if not self.is_iso():
            raise GraphValidationError("Only isomorphisms can be inverted")
        return GraphMorphism(self.target, self.source,
                             {w: v for v, w in self.vertex_map},
                             {f: e for e, f in self.edge_map})

    def image(self) -> Tuple[frozenset, frozenset]:
        return frozenset(self._v.values()), frozenset(self._e.values())

    def __str__(self):
        vertices = ", ".join(f"{a}->{b}" for a, b in self.vertex_map)
        edges = ", ".join(f"{a}->{b}" for a, b in self.edge_map)
        return f"[{vertices} | {edges}]"


def check_same_kind(*graphs: Multigraph) -> str:
    """
    :return: The common kind of all given graphs.
    """

    kinds = {g.kind for g in graphs}
    if len(kinds) != 1:
        raise KindMismatchError(f"Graphs of different kinds were combined: {sorted(kinds)}")
    return kinds.pop()


def empty_graph(kind: str = UNDIRECTED) -> Multigraph:
    return Multigraph(kind=kind)


def discrete_graph(n: int, kind: str = UNDIRECTED, prefix: str = "v") -> Multigraph:
    """
    :param n: Number of vertices.
    :param kind: Graph kind.
    :param prefix: Prefix of the generated vertex ids.

    :return: Edgeless graph with vertices prefix0 ... prefix{n-1}.
    """

    return Multigraph(kind=kind, vertices=[f"{prefix}{i}" for i in range(n)])


def edge_graph(kind: str = UNDIRECTED, multiplicity: int = 1) -> Multigraph:
    """
    :return: Two vertices v0, v1 joined by `multiplicity` parallel edges e0, e1, ... (oriented v0 -> v1 if directed).
    """

    return Multigraph(kind=kind, vertices=["v0", "v1"],
                      incidence={f"e{i}": ("v0", "v1") for i in range(multiplicity)})


def graph_from_edges(edges: Sequence[Tuple[str, ...]],
                     kind: str = UNDIRECTED,
                     extra_vertices: Iterable[str] = ()) -> Multigraph:
    """
    Convenience constructor used throughout tests and builders: edge i gets the id e{i}.

    :param edges: Incidence tuples, one per edge.
    :param kind: Graph kind.
    :param extra_vertices: Isolated vertices to add.

    :return: The graph on the union of all mentioned vertices.
    """

    vertices = set(extra_vertices)
    for ends in edges:
        vertices.update(ends)
    return Multigraph(kind=kind, vertices=vertices, incidence={f"e{i}": ends for i, ends in enumerate(edges)})
