from fractions import Fraction

from algebra.rule_vector import RuleVector, delta, power, product
from graphs.multigraph import UNDIRECTED, discrete_graph
from rewriting.rules import edge_creation_rule, edge_deletion_rule, identity_rule


HALF = Fraction(1, 2)


def e_plus(kind: str = UNDIRECTED) -> RuleVector:
    """e+ = ½ δ(E <- •• -> ••), edge creation between any ordered pair of vertices."""
    return delta(edge_creation_rule(kind)).scale(HALF)


def e_minus(kind: str = UNDIRECTED) -> RuleVector:
    """e- = ½ δ(•• <- •• -> E), edge deletion."""
    return delta(edge_deletion_rule(kind)).scale(HALF)


def d(kind: str = UNDIRECTED) -> RuleVector:
    """d = ½ δ(•• <- •• -> ••); its representation counts unordered vertex pairs."""
    return delta(identity_rule(discrete_graph(2, kind))).scale(HALF)


def generators(kind: str = UNDIRECTED) -> dict:
    return {"e+": e_plus(kind), "e-": e_minus(kind), "d": d(kind)}


def basis_word(p: int, m: int, n: int, kind: str = UNDIRECTED) -> RuleVector:
    """The word e+^p * e-^m * d^n."""
    return product(power(e_plus(kind), p, kind), product(power(e_minus(kind), m, kind), power(d(kind), n, kind)))
