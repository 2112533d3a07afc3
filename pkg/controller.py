import logging
from typing import Type

from commands.abc_command import EXIT_VALIDATION_ERROR, ABCCommand
from commands.apply_command import ApplyCommand
from commands.command_config import CommandConfig
from commands.compose_command import ComposeCommand
from commands.product_command import CommutatorCommand, ProductCommand
from commands.seq_command import SeqCommand
from commands.simulate_command import MomentsCommand, SimulateCommand
from commands.verify_command import VerifyCommand
from errors import RuleAlgebraError


logger = logging.getLogger(__name__)


class Controller:
    def __init__(self, settings: dict):
        self._settings = settings

    @staticmethod
    def _get_command(command_name: str) -> Type[ABCCommand]:
        """
        Using the Factory Method design pattern, only the command that is asked for gets instantiated.
        In order to add a new command, it is necessary to specify the command name as the key and the command class as
        the value in the commands_dict variable.

        :param command_name: String parameter with the name of the subcommand.
        :return: Required class without initialization
        """

        commands_dict = {
            "compose": ComposeCommand,
            "product": ProductCommand,
            "commutator": CommutatorCommand,
            "apply": ApplyCommand,
            "verify": VerifyCommand,
            "seq": SeqCommand,
            "simulate": SimulateCommand,
            "moments": MomentsCommand
        }

        try:
            return commands_dict[command_name]
        except KeyError:
            raise KeyError(f"Wrong Command Name: {command_name}")

    def run(self) -> int:
        """
        Builds and runs the selected command.

        :return: Exit code: 0 on success, 1 on invalid input, 2 when a verification suite fails.
        """

        try:
            command = self._get_command(self._settings["Command"])
            config = CommandConfig.from_settings(self._settings)
            return command(config).run()
        except (RuleAlgebraError, ValueError, KeyError, OSError) as error:
            logger.error("%s", error)
            return EXIT_VALIDATION_ERROR
