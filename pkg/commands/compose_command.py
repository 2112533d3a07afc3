from commands.abc_command import EXIT_OK, ABCCommand
from commands.command_config import CommandConfig
from rewriting.overlaps import compose_rules, enumerate_rule_overlaps
from rewriting.rule_io import load_rule, rule_to_dict


class ComposeCommand(ABCCommand):
    """Lists every admissible overlap of rule2 into rule1 with its composite rule."""

    expected_inputs = 2

    def __init__(self, config: CommandConfig):
        super().__init__(config)

    def run_command(self) -> int:
        p2, p1 = (load_rule(path) for path in self.config.inputs)
        entries = [{"overlap": overlap.to_dict(), "composite": rule_to_dict(compose_rules(p2, overlap, p1))}
                   for overlap in enumerate_rule_overlaps(p2, p1)]
        self.write_json(entries)
        self.add_summary(f"Admissible overlaps: {len(entries)}")
        return EXIT_OK
