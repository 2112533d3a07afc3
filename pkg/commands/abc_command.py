import datetime
import logging
import re
import sys
from abc import ABC, abstractmethod
from typing import Any, List, Sequence

import numpy as np

from commands.command_config import CommandConfig
from errors import ConfigurationError
from graphs.graph_io import dump_json


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION_ERROR = 1
EXIT_VERIFICATION_FAILURE = 2


class ABCCommand(ABC):
    expected_inputs: int = 0
    default_format: str = "json"

    def __init__(self, config: CommandConfig):
        """
        All the commands share the same input data.

        :param config: Validated command configuration.
        """

        if len(config.inputs) != self.expected_inputs:
            raise ConfigurationError(f"{self} expects {self.expected_inputs} input file(s), "
                                     f"got {len(config.inputs)}")
        self.config = config
        self.output_format = config.output_format or self.default_format
        self._summary: List[str] = []

    def __str__(self):
        """
        For better representation and further logging the name of the command is the name of the corresponding class.
        All inherited classes must be named in the CamelCase style, so 'ProductCommand' prints as 'Product Command'.

        :return: String with a name of a class, separated by spaces.
        """
        return " ".join(re.findall('[A-Z][^A-Z]*', type(self).__name__))

    def add_summary(self, line: str) -> None:
        self._summary.append(line)

    def write_text(self, text: str) -> None:
        if self.config.out is None:
            sys.stdout.write(text)
        else:
            with open(self.config.out, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(text)

    def write_json(self, data: Any) -> None:
        self.write_text(dump_json(data))

    def write_csv(self, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
        """Comma-separated table with a plain header line, one row per record."""
        table = np.array(rows, dtype=object).reshape(len(rows), len(header))
        handle = sys.stdout if self.config.out is None else open(self.config.out, "w", encoding="utf-8", newline="\n")
        try:
            np.savetxt(handle, table, fmt="%s", delimiter=",", header=",".join(header), comments="")
        finally:
            if handle is not sys.stdout:
                handle.close()

    def print_result_info(self, time: datetime.timedelta, exit_code: int) -> None:
        """
        Method prints the summary of a command run to stderr.

        :param time: Taken time.
        :param exit_code: Exit code the run ends with.
        """

        delimiter_str = "=" * 70 + "\n"
        command_name_str = f"Command name: {self}\n"
        inputs_str = f"Inputs: {', '.join(str(p) for p in self.config.inputs) or '-'}\n"
        output_str = f"Output: {self.config.out or 'stdout'} ({self.output_format})\n"
        time_str = f"Execution time: {time}\n"
        exit_str = f"Exit code: {exit_code}\n"
        summary_str = "".join(line + "\n" for line in self._summary)

        sys.stderr.write(delimiter_str
                         + command_name_str
                         + inputs_str
                         + output_str
                         + summary_str
                         + time_str
                         + exit_str
                         + delimiter_str)

    def run(self) -> int:
        started = datetime.datetime.now()
        exit_code = self.run_command()
        self.print_result_info(datetime.datetime.now() - started, exit_code)
        return exit_code

    @abstractmethod
    def run_command(self) -> int:
        pass
