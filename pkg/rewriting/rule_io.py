from pathlib import Path
from typing import Any, Dict

from errors import GraphValidationError
from graphs.graph_io import graph_from_dict, morphism_from_dict, morphism_to_dict, read_json
from rewriting.rules import LinearRule


RULE_FIELDS = ("output", "context", "input", "o", "i")


def rule_from_dict(data: Dict[str, Any]) -> LinearRule:
    """
    Parses {"output": <graph>, "context": <graph>, "input": <graph>, "o": {"vmap":..,"emap":..}, "i": {...}}. Monic and
    structure-preserving legs are enforced by LinearRule and GraphMorphism.

    :param data: Decoded JSON object.

    :return: Validated linear rule.
    """

    if not isinstance(data, dict):
        raise GraphValidationError("A rule must be a JSON object")
    missing = [name for name in RULE_FIELDS if name not in data]
    if missing:
        raise GraphValidationError(f"Rule is missing the fields {missing}")

    output = graph_from_dict(data["output"])
    context = graph_from_dict(data["context"])
    input_graph = graph_from_dict(data["input"])
    return LinearRule(output=output,
                      context=context,
                      input=input_graph,
                      o=morphism_from_dict(data["o"], context, output),
                      i=morphism_from_dict(data["i"], context, input_graph))


def rule_to_dict(rule: LinearRule) -> Dict[str, Any]:
    return {"output": rule.output.to_dict(),
            "context": rule.context.to_dict(),
            "input": rule.input.to_dict(),
            "o": morphism_to_dict(rule.o),
            "i": morphism_to_dict(rule.i)}


def load_rule(path: str | Path) -> LinearRule:
    return rule_from_dict(read_json(path))
