import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from errors import ConfigurationError


ENGINE_VERSION = "1.0.0"
FORMATS = ("json", "csv")


def _workers(requested: Optional[int]) -> int:
    return requested if requested is not None else os.cpu_count() or 1


@dataclass
class CommandConfig:
    """
    Validated options of one command run, built from the settings dictionary assembled in main.py.

    :param command: Subcommand name.
    :param inputs: Input files in the order the subcommand expects them.
    :param out: Output file; None writes to stdout.
    :param output_format: "json" or "csv".
    :param suite: Invariant suite of the verify command.
    """

    command: str
    inputs: List[Path] = field(default_factory=list)
    out: Optional[Path] = None
    output_format: Optional[str] = None
    seed: int = 0
    samples: int = 100
    n: int = 0
    t_max: float = 10.0
    trajectories: int = 100
    times: Optional[List[float]] = None
    workers: int = 1
    suite: Optional[str] = None
    verbosity: int = 0

    @classmethod
    def from_settings(cls, settings: dict):
        numeric = settings.get("Numeric Options", {})
        output = settings.get("Output Settings", {})
        config = cls(command=settings["Command"],
                     inputs=[Path(p) for p in settings.get("Input Paths", [])],
                     out=Path(output["Out"]) if output.get("Out") else None,
                     output_format=output.get("Format"),
                     seed=numeric.get("Seed", 0),
                     samples=numeric.get("Samples", 100),
                     n=numeric.get("N", 0),
                     t_max=numeric.get("Tmax", 10.0),
                     trajectories=numeric.get("Trajectories", 100),
                     times=numeric.get("Times"),
                     workers=_workers(numeric.get("Workers")),
                     suite=settings.get("Suite"),
                     verbosity=settings.get("Verbosity", 0))
        config.validate()
        return config

    def validate(self) -> None:
        for path in self.inputs:
            if not path.is_file():
                raise ConfigurationError(f"Input file {path} does not exist")
        if self.out is not None:
            directory = self.out.parent if str(self.out.parent) else Path(".")
            if not directory.is_dir() or not os.access(directory, os.W_OK):
                raise ConfigurationError(f"Output directory {directory} is not writable")
        if self.output_format is not None and self.output_format not in FORMATS:
            raise ConfigurationError(f"Wrong Output Format: {self.output_format}")

        if not 0 <= self.seed < 2 ** 64:
            raise ConfigurationError("The seed must be a 64-bit non-negative integer")
        for name in ("samples", "n", "trajectories"):
            if getattr(self, name) < 0:
                raise ConfigurationError(f"{name} must be non-negative")
        if self.workers < 1:
            raise ConfigurationError("workers must be at least 1")
        if not math.isfinite(self.t_max) or self.t_max < 0:
            raise ConfigurationError("tmax must be finite and non-negative")
        if self.times is not None:
            if any(not math.isfinite(t) or t < 0 or t > self.t_max for t in self.times):
                raise ConfigurationError("Sample times must be finite and lie in [0, tmax]")
            if list(self.times) != sorted(self.times):
                raise ConfigurationError("Sample times must be sorted")

    def sample_times(self, points: int = 11) -> List[float]:
        if self.times is not None:
            return list(self.times)
        return [self.t_max * i / (points - 1) for i in range(points)]
