from commands.abc_command import EXIT_OK, EXIT_VERIFICATION_FAILURE, ABCCommand
from commands.command_config import CommandConfig
from errors import ConfigurationError
from verification.invariant_checks import SUITES, run_suite


class VerifyCommand(ABCCommand):
    """Runs one invariant suite and writes its JSON report; fails with exit code 2 when any check fails."""

    def __init__(self, config: CommandConfig):
        super().__init__(config)
        if config.suite not in SUITES:
            raise ConfigurationError(f"Wrong Suite Name: {config.suite}")

    def run_command(self) -> int:
        report = run_suite(self.config.suite, seed=self.config.seed, samples=self.config.samples)
        self.write_json(report.to_dict())
        for check in report.checks:
            self.add_summary(f"{check.name}: {'passed' if check.passed else 'FAILED'} "
                             f"({check.checked} checked, {len(check.failures)} failed)")
        return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILURE
