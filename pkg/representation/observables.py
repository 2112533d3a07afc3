from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from errors import GraphValidationError, KindMismatchError
from graphs.multigraph import UNDIRECTED, GraphMorphism, Multigraph, discrete_graph, edge_graph
from representation.state_vector import GraphVector
from rewriting.derivations import count_matches
from rewriting.rules import LinearRule


@dataclass(frozen=True)
class Observable:
    """
    Diagonal operator O_M^t = scale · ρ(δ(M <-t- K -t-> M)). Its eigenvalue on |G⟩ is scale times the number of
    admissible matches of that rule, which for t = id_M is the number of monomorphisms M -> G.

    :param motif: Pattern graph M.
    :param context: Monomorphism t: K -> M; the identity of M when omitted.
    :param scale: Rational prefactor.
    :param name: Column label used in reports.
    """

    motif: Multigraph
    context: Optional[GraphMorphism] = None
    scale: Fraction = Fraction(1)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.context is None:
            object.__setattr__(self, "context", GraphMorphism.identity(self.motif))
        if self.context.target != self.motif or not self.context.is_mono():
            raise GraphValidationError("Observable context must be a monomorphism into the motif")
        object.__setattr__(self, "scale", Fraction(self.scale))

    @property
    def kind(self) -> str:
        return self.motif.kind

    @property
    def rule(self) -> LinearRule:
        return LinearRule(output=self.motif, context=self.context.source, input=self.motif,
                          o=self.context, i=self.context)

    def __str__(self):
        return self.name or f"O[{self.motif}]"


def observable_eigenvalue(o: Observable, g: Multigraph) -> Fraction:
    if o.kind != g.kind:
        raise KindMismatchError(f"Cannot evaluate a {o.kind} observable on a {g.kind} graph")
    return o.scale * count_matches(o.rule, g)


def apply_observable(o: Observable, psi: GraphVector) -> GraphVector:
    """O|ψ⟩: every basis coefficient multiplied by its eigenvalue."""
    cls = type(psi)
    terms = {key: c * cls._coerce(observable_eigenvalue(o, psi.graph(key))) for key, c in psi.items()}
    return cls(terms, {key: psi.graph(key) for key in terms}, psi.kind)


def correlator(obs: Sequence[Observable], psi: GraphVector):
    """
    ⟨O₁, ..., O_n⟩_ψ = Σ_G ψ_G · Π_j ω_{O_j}(G).
    """

    cls = type(psi)
    total = cls._coerce_zero()
    for key, coefficient in psi.items():
        value = coefficient
        for o in obs:
            value *= cls._coerce(observable_eigenvalue(o, psi.graph(key)))
        total += value
    return total


def input_observable(rule: LinearRule) -> Observable:
    """O_I^(K -> I): the diagonal part attached to a rule by jump-closure."""
    return Observable(motif=rule.input, context=rule.i, name="O_I")


def vertex_observable(kind: str = UNDIRECTED) -> Observable:
    """O_•, counts vertices."""
    return Observable(motif=discrete_graph(1, kind), name="O_V")


def edge_observable(kind: str = UNDIRECTED) -> Observable:
    """
    O_E, counts edges: an undirected edge has two monomorphisms from the edge graph, a directed edge has one.
    """

    scale = Fraction(1, 2) if kind == UNDIRECTED else Fraction(1)
    return Observable(motif=edge_graph(kind), scale=scale, name="O_E")


def vertex_pair_observable(kind: str = UNDIRECTED) -> Observable:
    """D, counts unordered pairs of distinct vertices; it is the representation of d."""
    return Observable(motif=discrete_graph(2, kind), scale=Fraction(1, 2), name="D")


def vertex_pair_identity_holds(psi: GraphVector) -> bool:
    """D = ½(O_• O_• - O_•) as operators on ψ."""
    kind = psi.kind or UNDIRECTED
    o_v, pairs = vertex_observable(kind), vertex_pair_observable(kind)
    for key, _ in psi.items():
        n = observable_eigenvalue(o_v, psi.graph(key))
        if observable_eigenvalue(pairs, psi.graph(key)) != (n * n - n) / 2:
            return False
    return True

