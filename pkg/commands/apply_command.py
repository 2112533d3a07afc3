from algebra.rule_vector import rule_vector_from_list
from commands.abc_command import EXIT_OK, ABCCommand
from commands.command_config import CommandConfig
from graphs.graph_io import read_json
from representation.canonical_representation import apply_rep
from representation.state_vector import state_vector_from_list


class ApplyCommand(ABCCommand):
    """Writes ρ(ruleVec)|state⟩ as an exact state vector."""

    expected_inputs = 2

    def __init__(self, config: CommandConfig):
        super().__init__(config)

    def run_command(self) -> int:
        rule_path, state_path = self.config.inputs
        rules = rule_vector_from_list(read_json(rule_path))
        psi = state_vector_from_list(read_json(state_path))
        result = apply_rep(rules, psi)
        self.write_json(result.to_list())
        self.add_summary(f"Basis graphs: {len(psi)} -> {len(result)}")
        self.add_summary(f"Projection: {result.projection()}")
        return EXIT_OK
