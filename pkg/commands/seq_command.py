from commands.abc_command import EXIT_OK, ABCCommand
from commands.command_config import CommandConfig
from representation.sequence import hw_sequence


class SeqCommand(ABCCommand):
    """
    Writes the rows (n, k, S(n, k), T(n, k)) of E₊ⁿ|•••⟩ = 3 Σ_k T(n, k)|S(n, k)⟩; S is split into the columns f, g, h.
    For n = 0 the single row carries the raw coefficient 1 of the identity.
    """

    default_format = "csv"

    def __init__(self, config: CommandConfig):
        super().__init__(config)

    def run_command(self) -> int:
        n = self.config.n
        rows = [(n, k, *partition, coefficient) for k, (partition, coefficient) in enumerate(hw_sequence(n))]
        if self.output_format == "csv":
            self.write_csv(("n", "k", "f", "g", "h", "T"), rows)
        else:
            self.write_json([{"n": n, "k": k, "partition": [f, g, h], "T": str(t)} for n, k, f, g, h, t in rows])
        self.add_summary(f"n = {n}: {len(rows)} partitions")
        return EXIT_OK
