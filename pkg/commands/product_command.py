from algebra.rule_vector import RuleVector, commutator, product, rule_vector_from_list
from commands.abc_command import EXIT_OK, ABCCommand
from commands.command_config import CommandConfig
from graphs.graph_io import read_json


class ProductCommand(ABCCommand):
    """Writes vec2 * vec1, sorted by rule key."""

    expected_inputs = 2

    def __init__(self, config: CommandConfig):
        super().__init__(config)

    def combine(self, r2: RuleVector, r1: RuleVector) -> RuleVector:
        return product(r2, r1)

    def run_command(self) -> int:
        r2, r1 = (rule_vector_from_list(read_json(path)) for path in self.config.inputs)
        result = self.combine(r2, r1)
        self.write_json(result.to_list())
        self.add_summary(f"Terms: {len(r2)} x {len(r1)} -> {len(result)}")
        return EXIT_OK


class CommutatorCommand(ProductCommand):
    """Writes [vec2, vec1] = vec2 * vec1 - vec1 * vec2."""

    def combine(self, r2: RuleVector, r1: RuleVector) -> RuleVector:
        return commutator(r2, r1)
