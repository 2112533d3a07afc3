class RuleAlgebraError(Exception):
    """Base class of every error raised by the engine."""


class GraphValidationError(RuleAlgebraError, ValueError):
    """A graph, morphism, rule or input file is malformed."""


class KindMismatchError(RuleAlgebraError, ValueError):
    """Directed and undirected values were mixed in one operation."""


class CategoryError(RuleAlgebraError):
    """A precondition of a categorical construction is violated."""


class InadmissibleMatchError(RuleAlgebraError):
    """A match or rule overlap does not satisfy the gluing condition."""


class SimulationError(RuleAlgebraError):
    """Non-finite rates or an overflowing total propensity."""


class ConfigurationError(RuleAlgebraError, ValueError):
    """Command line options are out of their documented ranges."""
