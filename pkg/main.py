import argparse
import logging
import sys
from typing import List, Optional

from controller import Controller
from verification.invariant_checks import SUITES


INPUTS = {
    "compose": ["rule2", "rule1"],
    "product": ["vec2", "vec1"],
    "commutator": ["vec2", "vec1"],
    "apply": ["rule_vector", "state"],
    "verify": [],
    "seq": [],
    "simulate": ["spec"],
    "moments": ["spec"],
}


def parse_times(text: str) -> List[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--times takes comma-separated floats, got {text!r}")


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with 1, the validation-error code; 2 is reserved for failed verification suites."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (stdout when omitted)")
    common.add_argument("--format", choices=("json", "csv"), dest="output_format")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=100, help="corpus size of verify suites")
    common.add_argument("--times", type=parse_times, help="comma-separated sample times")
    common.add_argument("--trajectories", type=int, default=100)
    common.add_argument("--tmax", type=float, default=10.0)
    common.add_argument("--workers", type=int, default=None, help="process pool size (default: CPU count)")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = ArgumentParser(prog="rule-algebra", description="DPO rule algebra engine")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command, inputs in INPUTS.items():
        subparser = subparsers.add_parser(command, parents=[common])
        for name in inputs:
            subparser.add_argument(name)
        if command == "verify":
            subparser.add_argument("suite", choices=SUITES)
        if command == "seq":
            subparser.add_argument("n", type=int)
    return parser


def settings_from_arguments(arguments: argparse.Namespace) -> dict:
    return {
        "Command": arguments.command,
        "Input Paths": [getattr(arguments, name) for name in INPUTS[arguments.command]],
        "Output Settings": {
            "Out": arguments.out,
            "Format": arguments.output_format
        },
        "Numeric Options": {
            "Seed": arguments.seed,
            "Samples": arguments.samples,
            "N": getattr(arguments, "n", 0),
            "Tmax": arguments.tmax,
            "Trajectories": arguments.trajectories,
            "Times": arguments.times,
            "Workers": arguments.workers
        },
        "Suite": getattr(arguments, "suite", None),
        "Verbosity": arguments.verbose
    }


def main(argv: Optional[List[str]] = None) -> int:
    arguments = build_parser().parse_args(argv)
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(arguments.verbose, 2)]
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")

    controller = Controller(settings_from_arguments(arguments))
    return controller.run()


if __name__ == "__main__":
    sys.exit(main())
