from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from errors import GraphValidationError, KindMismatchError
from graphs.canonical import CanonicalKey, canonical_form
from graphs.graph_io import graph_from_dict
from graphs.multigraph import Multigraph


class GraphVector:
    """
    Finitely supported vector over graph isomorphism classes. Subclasses fix the coefficient field; vectors of different
    subclasses never combine, so exact and floating-point states cannot be mixed silently.
    """

    __slots__ = ("_terms", "_registry", "_kind")

    def __init__(self,
                 terms: Optional[Mapping[CanonicalKey, object]] = None,
                 registry: Optional[Mapping[CanonicalKey, Multigraph]] = None,
                 kind: Optional[str] = None):
        self._terms = {k: self._coerce(c) for k, c in (terms or {}).items() if c != 0}
        self._registry: Dict[CanonicalKey, Multigraph] = {k: registry[k] for k in self._terms}
        kinds = {k.kind for k in self._terms} | ({kind} if kind else set())
        if len(kinds) > 1:
            raise KindMismatchError(f"State vector mixes kinds {sorted(kinds)}")
        self._kind = kinds.pop() if kinds else None

    @staticmethod
    def _coerce(coefficient):
        raise NotImplementedError

    @classmethod
    def from_graphs(cls, pairs: Iterable[Tuple[object, Multigraph]], kind: Optional[str] = None):
        terms, registry = defaultdict(cls._coerce_zero), {}
        for coefficient, graph in pairs:
            form = canonical_form(graph)
            terms[form.key] += cls._coerce(coefficient)
            registry.setdefault(form.key, form.representative)
        return cls(terms, registry, kind)

    @classmethod
    def basis(cls, graph: Multigraph):
        """|G⟩ with coefficient 1."""
        return cls.from_graphs([(1, graph)])

    @staticmethod
    def _coerce_zero():
        raise NotImplementedError

    @property
    def kind(self) -> Optional[str]:
        return self._kind

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[object, Multigraph]]:
        for key in sorted(self._terms):
            yield self._terms[key], self._registry[key]

    def items(self) -> Iterator[Tuple[CanonicalKey, object]]:
        for key in sorted(self._terms):
            yield key, self._terms[key]

    def keys(self) -> List[CanonicalKey]:
        return sorted(self._terms)

    def graph(self, key: CanonicalKey) -> Multigraph:
        return self._registry[key]

    def coefficient(self, graph: Multigraph):
        return self._terms.get(canonical_form(graph).key, self._coerce_zero())

    def _combine(self, other, sign: int):
        if type(other) is not type(self):
            return NotImplemented
        if self._kind and other._kind and self._kind != other._kind:
            raise KindMismatchError(f"Cannot combine {self._kind} and {other._kind} states")
        terms = defaultdict(self._coerce_zero, self._terms)
        for key, coefficient in other._terms.items():
            terms[key] += sign * coefficient
        return type(self)(terms, {**self._registry, **other._registry}, self._kind or other._kind)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, factor):
        factor = self._coerce(factor)
        return type(self)({k: factor * c for k, c in self._terms.items()}, self._registry, self._kind)

    def __rmul__(self, factor):
        return self.scale(factor)

    def __eq__(self, other):
        return type(other) is type(self) and self._terms == other._terms

    def __hash__(self):
        return hash((type(self), frozenset(self._terms.items())))

    def __repr__(self):
        inner = " + ".join(f"{c}·|{self._registry[k]}⟩" for k, c in sorted(self._terms.items()))
        return f"{type(self).__name__}({inner or '0'})"

    def projection(self):
        """⟨| applied to the vector: the sum of its coefficients."""
        return sum(self._terms.values(), self._coerce_zero())

    def to_list(self) -> List[dict]:
        return [{"coefficient": str(c), "graph": graph.to_dict()} for c, graph in self]


class StateVector(GraphVector):
    """Exact state: rational coefficients."""

    __slots__ = ()

    @staticmethod
    def _coerce(coefficient) -> Fraction:
        if isinstance(coefficient, float):
            raise TypeError("Exact states take rational coefficients; use FloatStateVector for floats")
        return Fraction(coefficient)

    @staticmethod
    def _coerce_zero() -> Fraction:
        return Fraction(0)

    def to_float(self) -> FloatStateVector:
        return FloatStateVector({k: float(c) for k, c in self._terms.items()}, self._registry, self._kind)


class FloatStateVector(GraphVector):
    """Stochastic-mode state: float coefficients, e.g. probability vectors."""

    __slots__ = ()

    @staticmethod
    def _coerce(coefficient) -> float:
        return float(coefficient)

    @staticmethod
    def _coerce_zero() -> float:
        return 0.0

    def to_list(self) -> List[dict]:
        return [{"coefficient": repr(c), "graph": graph.to_dict()} for c, graph in self]


def projection(psi: GraphVector):
    return psi.projection()


def state_vector_from_list(data, exact: bool = True) -> GraphVector:
    """
    Parses a list of {"coefficient": "p/q", "graph": <graph>} terms, or a single graph object read as |G⟩.
    """

    cls = StateVector if exact else FloatStateVector
    if isinstance(data, dict):
        return cls.basis(graph_from_dict(data))
    if not isinstance(data, list):
        raise GraphValidationError("A state must be a JSON list of terms or a single graph")

    pairs = []
    for term in data:
        try:
            raw = str(term["coefficient"])
            coefficient = Fraction(raw) if exact else float(raw)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as error:
            raise GraphValidationError(f"Malformed state term {term!r}") from error
        pairs.append((coefficient, graph_from_dict(term["graph"])))
    return cls.from_graphs(pairs)
