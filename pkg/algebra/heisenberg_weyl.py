from fractions import Fraction
from math import comb, factorial

from algebra.rule_vector import RuleVector, delta, power, product
from graphs.multigraph import UNDIRECTED
from rewriting.rules import discrete_rule, vertex_creation_rule, vertex_deletion_rule


def x_dagger(kind: str = UNDIRECTED) -> RuleVector:
    """Creation generator δ(• <- ∅ -> ∅)."""
    return delta(vertex_creation_rule(kind))


def x(kind: str = UNDIRECTED) -> RuleVector:
    """Annihilation generator δ(∅ <- ∅ -> •)."""
    return delta(vertex_deletion_rule(kind))


def x_dagger_power(m: int, kind: str = UNDIRECTED) -> RuleVector:
    return power(x_dagger(kind), m, kind)


def x_power(n: int, kind: str = UNDIRECTED) -> RuleVector:
    return power(x(kind), n, kind)


def normal_ordered_word(r: int, s: int, kind: str = UNDIRECTED) -> RuleVector:
    """
    x†^r x^s as the single basis vector δ(•^r <- ∅ -> •^s): in a normal-ordered word no annihilator meets a creator,
    so only the trivial overlap contributes.
    """

    return delta(discrete_rule(r, s, kind))


def normal_order_coefficient(s: int, k: int, n: int) -> int:
    """s! k! / ((s - n)! n! (k - n)!), the number of ways to contract n of s annihilators with n of k creators."""
    return comb(s, n) * comb(k, n) * factorial(n)


def hw_normal_order(r: int, s: int, k: int, l: int, kind: str = UNDIRECTED) -> RuleVector:
    """
    Closed-form expansion of x†^r x^s * x†^k x^l into normal-ordered words.

    :return: Σ_n s!k!/((s-n)!n!(k-n)!) · x†^(r+k-n) x^(s+l-n), n = 0 .. min(s, k).
    """

    if min(r, s, k, l) < 0:
        raise ValueError("Word exponents must be non-negative")

    result = RuleVector(kind=kind)
    for n in range(min(s, k) + 1):
        coefficient = Fraction(normal_order_coefficient(s, k, n))
        result = result + normal_ordered_word(r + k - n, s + l - n, kind).scale(coefficient)
    return result


def engine_normal_order(r: int, s: int, k: int, l: int, kind: str = UNDIRECTED) -> RuleVector:
    """The same product computed by the rule algebra from the generators."""
    left = product(x_dagger_power(r, kind), x_power(s, kind))
    right = product(x_dagger_power(k, kind), x_power(l, kind))
    return product(left, right)
