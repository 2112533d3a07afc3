import json
import platform
from pathlib import Path
from typing import List

import numpy as np
import scipy
import sympy

from commands.abc_command import EXIT_OK, ABCCommand
from commands.command_config import ENGINE_VERSION, CommandConfig
from errors import ConfigurationError
from mathematics.edge_birth_death import edge_moment_closed_form, edge_variance_closed_form
from stochastic.ctmc import detect_edge_birth_death, load_ctmc_spec
from stochastic.ssa import RNG_NAME, Trajectory, sample_statistics, ssa_simulate


class SimulateCommand(ABCCommand):
    """Runs the Gillespie sampler and writes one CSV row per (trajectory, sample time)."""

    expected_inputs = 1
    default_format = "csv"

    def __init__(self, config: CommandConfig):
        super().__init__(config)
        self.spec = load_ctmc_spec(config.inputs[0])
        self.times = config.sample_times()

    def simulate(self) -> List[Trajectory]:
        if self.config.trajectories == 0:
            return []
        return ssa_simulate(self.spec,
                            t_max=self.config.t_max,
                            n_trajectories=self.config.trajectories,
                            seed=self.config.seed,
                            sample_times=self.times,
                            workers=self.config.workers)

    def write_metadata(self) -> None:
        if self.config.out is None:
            return
        metadata = {"command": self.config.command,
                    "spec": str(self.config.inputs[0]),
                    "seed": self.config.seed,
                    "rng": RNG_NAME,
                    "trajectories": self.config.trajectories,
                    "tmax": self.config.t_max,
                    "times": self.times,
                    "truncation": None,
                    "versions": {"engine": ENGINE_VERSION,
                                 "python": platform.python_version(),
                                 "numpy": np.__version__,
                                 "scipy": scipy.__version__,
                                 "sympy": sympy.__version__}}
        Path(f"{self.config.out}.meta.json").write_text(json.dumps(metadata, indent=2, sort_keys=True) + "\n",
                                                        encoding="utf-8")

    def run_command(self) -> int:
        trajectories = self.simulate()
        if not trajectories:
            raise ConfigurationError("simulate needs at least one trajectory")

        names = trajectories[0].observables
        rows = [(trajectory.index, time, *(repr(float(v)) for v in values))
                for trajectory in trajectories
                for time, values in zip(trajectory.sample_times, trajectory.samples)]
        if self.output_format == "csv":
            self.write_csv(("traj", "time", *names), rows)
        else:
            self.write_json([{"traj": trajectory.index, "time": time, **dict(zip(names, map(float, values)))}
                             for trajectory in trajectories
                             for time, values in zip(trajectory.sample_times, trajectory.samples)])
        self.write_metadata()
        self.add_summary(f"Trajectories: {len(trajectories)}, events: {sum(len(t.events) for t in trajectories)}")
        return EXIT_OK


class MomentsCommand(SimulateCommand):
    """
    Writes a moment table over the sample times: empirical mean and standard error of every observable, plus the
    closed-form mean and variance of the edge count when the chain is the edge birth-death system.
    """

    def run_command(self) -> int:
        parameters = detect_edge_birth_death(self.spec)
        trajectories = self.simulate()
        if parameters is None and not trajectories:
            raise ConfigurationError("Without trajectories moments are only available for the edge birth-death system")

        header, columns = ["time"], [np.asarray(self.times)]
        if trajectories:
            for column, name in enumerate(trajectories[0].observables):
                mean, standard_error = sample_statistics(trajectories, column)
                header += [f"mean_{name}", f"se_{name}"]
                columns += [mean, standard_error]
        if parameters is not None:
            arguments = (parameters.n_vertices, parameters.n_edges, parameters.k_plus, parameters.k_minus)
            header += ["closed_mean_O_E", "closed_variance_O_E"]
            columns += [np.array([edge_moment_closed_form(*arguments, t, 1) for t in self.times]),
                        np.array([edge_variance_closed_form(*arguments, t) for t in self.times])]
            self.add_summary(f"Edge birth-death system: N_V={parameters.n_vertices}, N_E={parameters.n_edges}, "
                             f"k+={parameters.k_plus}, k-={parameters.k_minus}")

        rows = [tuple(repr(float(column[i])) for column in columns) for i in range(len(self.times))]
        if self.output_format == "csv":
            self.write_csv(header, rows)
        else:
            self.write_json([dict(zip(header, (float(c[i]) for c in columns))) for i in range(len(self.times))])
        self.write_metadata()
        self.add_summary(f"Sample times: {len(self.times)}, trajectories: {len(trajectories)}")
        return EXIT_OK
