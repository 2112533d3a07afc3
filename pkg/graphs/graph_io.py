import json
from pathlib import Path
from typing import Any, Dict

from errors import GraphValidationError
from graphs.multigraph import DIRECTED, KINDS, GraphMorphism, Multigraph


def graph_from_dict(data: Dict[str, Any]) -> Multigraph:
    """
    Parses the JSON graph format
    {"kind": ..., "vertices": [...], "edges": [{"id": .., "src": .., "tgt": ..}] or [{"id": .., "ends": [..]}]}.

    :param data: Decoded JSON object.

    :return: Validated multigraph.
    """

    if not isinstance(data, dict):
        raise GraphValidationError(f"A graph must be a JSON object, got {type(data).__name__}")
    kind = data.get("kind")
    if kind not in KINDS:
        raise GraphValidationError(f"Wrong Graph Kind: {kind}")

    incidence = {}
    for edge in data.get("edges", []):
        try:
            edge_id = str(edge["id"])
            if kind == DIRECTED:
                ends = (str(edge["src"]), str(edge["tgt"]))
            else:
                ends = tuple(str(v) for v in edge["ends"])
        except (KeyError, TypeError) as error:
            raise GraphValidationError(f"Malformed {kind} edge {edge!r}") from error
        if edge_id in incidence:
            raise GraphValidationError(f"Duplicate edge id {edge_id!r}")
        incidence[edge_id] = ends

    return Multigraph(kind=kind, vertices=[str(v) for v in data.get("vertices", [])], incidence=incidence)


def morphism_from_dict(data: Dict[str, Any], source: Multigraph, target: Multigraph) -> GraphMorphism:
    """
    :param data: {"vmap": {...}, "emap": {...}}; missing maps mean empty maps.
    :param source: Source graph.
    :param target: Target graph.

    :return: Validated morphism.
    """

    if not isinstance(data, dict):
        raise GraphValidationError("A morphism must be a JSON object with 'vmap' and 'emap'")
    return GraphMorphism(source, target,
                         {str(k): str(v) for k, v in data.get("vmap", {}).items()},
                         {str(k): str(v) for k, v in data.get("emap", {}).items()})


def morphism_to_dict(morphism: GraphMorphism) -> Dict[str, Dict[str, str]]:
    return {"vmap": dict(morphism.vertex_map), "emap": dict(morphism.edge_map)}


def read_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except json.JSONDecodeError as error:
        raise GraphValidationError(f"{path}: invalid JSON ({error})") from error


def load_graph(path: str | Path) -> Multigraph:
    return graph_from_dict(read_json(path))


def dump_json(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
