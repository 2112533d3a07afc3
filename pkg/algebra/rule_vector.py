from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from errors import GraphValidationError, KindMismatchError
from rewriting.overlaps import compose_rules, disjoint_union, enumerate_rule_overlaps
from rewriting.rule_io import rule_from_dict, rule_to_dict
from rewriting.rules import LinearRule, RuleKey, canonical_rule, empty_rule


Scalar = Fraction | int


class RuleVector:
    """
    Finitely supported vector over rule isomorphism classes with exact rational coefficients. Basis vectors are keyed by
    RuleKey; a registry keeps one canonical representative rule per key. Zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_registry", "_kind")

    def __init__(self,
                 terms: Optional[Mapping[RuleKey, Scalar]] = None,
                 registry: Optional[Mapping[RuleKey, LinearRule]] = None,
                 kind: Optional[str] = None):
        self._terms: Dict[RuleKey, Fraction] = {k: Fraction(c) for k, c in (terms or {}).items() if c != 0}
        self._registry: Dict[RuleKey, LinearRule] = {k: registry[k] for k in self._terms}
        kinds = {k.kind for k in self._terms} | ({kind} if kind else set())
        if len(kinds) > 1:
            raise KindMismatchError(f"Rule vector mixes kinds {sorted(kinds)}")
        self._kind = kinds.pop() if kinds else None

    @classmethod
    def from_rules(cls, pairs: Iterable[Tuple[Scalar, LinearRule]]) -> RuleVector:
        terms, registry = defaultdict(Fraction), {}
        for coefficient, rule in pairs:
            canonical = canonical_rule(rule)
            terms[canonical.key] += Fraction(coefficient)
            registry.setdefault(canonical.key, canonical.rule)
        return cls(terms, registry)

    @property
    def kind(self) -> Optional[str]:
        return self._kind

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Fraction, LinearRule]]:
        for key in sorted(self._terms):
            yield self._terms[key], self._registry[key]

    def keys(self) -> List[RuleKey]:
        return sorted(self._terms)

    def coefficient(self, rule: LinearRule) -> Fraction:
        return self._terms.get(canonical_rule(rule).key, Fraction(0))

    def rule(self, key: RuleKey) -> LinearRule:
        return self._registry[key]

    def _combine(self, other: RuleVector, sign: int) -> RuleVector:
        if self._kind and other._kind and self._kind != other._kind:
            raise KindMismatchError(f"Cannot combine {self._kind} and {other._kind} rule vectors")
        terms = defaultdict(Fraction, self._terms)
        for key, coefficient in other._terms.items():
            terms[key] += sign * coefficient
        return RuleVector(terms, {**self._registry, **other._registry}, self._kind or other._kind)

    def __add__(self, other: RuleVector) -> RuleVector:
        return self._combine(other, 1)

    def __sub__(self, other: RuleVector) -> RuleVector:
        return self._combine(other, -1)

    def __neg__(self) -> RuleVector:
        return self.scale(-1)

    def scale(self, factor: Scalar) -> RuleVector:
        factor = Fraction(factor)
        return RuleVector({k: factor * c for k, c in self._terms.items()}, self._registry, self._kind)

    def __rmul__(self, factor: Scalar) -> RuleVector:
        return self.scale(factor)

    def __mul__(self, other):
        if isinstance(other, RuleVector):
            return product(self, other)
        return self.scale(other)

    def __eq__(self, other):
        return isinstance(other, RuleVector) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        inner = " + ".join(f"{c}·{self._registry[k]}" for k, c in sorted(self._terms.items()))
        return f"RuleVector({inner or '0'})"

    def to_list(self) -> List[dict]:
        return [{"coefficient": str(c), "rule": rule_to_dict(rule)} for c, rule in self]


def delta(p: LinearRule) -> RuleVector:
    """Basis vector δ(p) of the class of p."""
    return RuleVector.from_rules([(1, p)])


def unit(kind: str) -> RuleVector:
    """The unit element R_∅ = δ(∅ <- ∅ -> ∅)."""
    return delta(empty_rule(kind))


def zero(kind: Optional[str] = None) -> RuleVector:
    return RuleVector(kind=kind)


@lru_cache(maxsize=65536)
def _basis_product(p2: LinearRule, p1: LinearRule) -> Tuple[Tuple[RuleKey, int, LinearRule], ...]:
    counts, registry = defaultdict(int), {}
    for overlap in enumerate_rule_overlaps(p2, p1):
        composite = canonical_rule(compose_rules(p2, overlap, p1))
        counts[composite.key] += 1
        registry.setdefault(composite.key, composite.rule)
    return tuple((key, counts[key], registry[key]) for key in sorted(counts))


def product(r2: RuleVector, r1: RuleVector) -> RuleVector:
    """
    Rule algebra product: the bilinear extension of δ(p₂) * δ(p₁) = Σ over admissible overlaps of δ(p₂ ⋖ p₁).

    :param r2: Left factor (applied second).
    :param r1: Right factor (applied first).

    :return: Exact product vector; the zero vector when there is nothing to sum.
    """

    if r2.kind and r1.kind and r2.kind != r1.kind:
        raise KindMismatchError(f"Cannot multiply {r2.kind} and {r1.kind} rule vectors")

    terms, registry = defaultdict(Fraction), {}
    for c2, p2 in r2:
        for c1, p1 in r1:
            for key, count, rule in _basis_product(p2, p1):
                terms[key] += c2 * c1 * count
                registry.setdefault(key, rule)
    return RuleVector(terms, registry, r2.kind or r1.kind)


def commutator(a: RuleVector, b: RuleVector) -> RuleVector:
    """[a, b] = a * b - b * a."""
    return product(a, b) - product(b, a)


def power(r: RuleVector, n: int, kind: Optional[str] = None) -> RuleVector:
    """
    :return: n-fold product r * ... * r, the unit for n = 0.
    """

    if n < 0:
        raise ValueError("Powers of rule vectors need n >= 0")
    kind = r.kind or kind
    if kind is None:
        raise KindMismatchError("The power of the zero vector needs an explicit kind")
    result = unit(kind)
    for _ in range(n):
        result = product(r, result)
    return result


def disjoint_union_vector(r2: RuleVector, r1: RuleVector) -> RuleVector:
    """Bilinear extension of δ(p₂) ⊎ δ(p₁) := δ(p₂ ⋖_∅ p₁)."""
    return RuleVector.from_rules((c2 * c1, disjoint_union(p2, p1)) for c2, p2 in r2 for c1, p1 in r1)


def check_associativity(p1: LinearRule, p2: LinearRule, p3: LinearRule) -> bool:
    """
    Compares δ(p₃) * (δ(p₂) * δ(p₁)) with (δ(p₃) * δ(p₂)) * δ(p₁) term by term with exact coefficients.
    """

    r1, r2, r3 = delta(p1), delta(p2), delta(p3)
    return product(r3, product(r2, r1)) == product(product(r3, r2), r1)


def rule_vector_from_list(data) -> RuleVector:
    """
    Parses either a list of {"coefficient": "p/q", "rule": <rule>} terms or a single rule object (read as δ(rule)).
    """

    if isinstance(data, dict):
        return delta(rule_from_dict(data))
    if not isinstance(data, list):
        raise GraphValidationError("A rule vector must be a JSON list of terms or a single rule")

    pairs = []
    for term in data:
        try:
            coefficient = Fraction(str(term["coefficient"]))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as error:
            raise GraphValidationError(f"Malformed rule vector term {term!r}") from error
        pairs.append((coefficient, rule_from_dict(term["rule"])))
    return RuleVector.from_rules(pairs)
