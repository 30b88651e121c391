from cli.base import LabCommand
from common.choices import RepOperation
from energy.counting import additive_energy, multiplicative_energy, t_energy
from setcore.generators import generate, parse_generator


OPS = ("add", "mul", "t", "tmul")


class Command(LabCommand):
    help = "Exact additive, multiplicative or higher energy of generated sets."

    def add_arguments(self, parser):
        parser.add_argument("--op", choices=OPS, required=True, help="add, mul, t (k-fold sums) or tmul (k-fold products)")
        parser.add_argument("--k", type=int, help="tuple length for --op t/tmul")
        parser.add_argument("--set-a", required=True, help="generator spec or file:<path>")
        parser.add_argument("--set-b", help="second set for add/mul; defaults to --set-a")

    def handle(self, *args, **options):
        op = options["op"]
        higher = op in ("t", "tmul")
        if higher and options["k"] is None:
            self.usage_error("--op t needs --k")
        if not higher and options["k"] is not None:
            self.usage_error("--k only applies to --op t or tmul")
        if higher and options["set_b"]:
            self.usage_error("--set-b does not apply to --op t or tmul")
        spec_a = parse_generator(options["set_a"])
        spec_b = parse_generator(options["set_b"]) if options["set_b"] else spec_a

        left = generate(spec_a)
        if higher:
            value = t_energy(left, options["k"], RepOperation.PRODUCT if op == "tmul" else RepOperation.SUM)
        else:
            right = generate(spec_b) if spec_b is not spec_a else left
            counter = additive_energy if op == "add" else multiplicative_energy
            value = counter(left, right)
        self.emit(
            {
                "op": op,
                "sizes": list(value.sizes),
                "energy": value.value,
                "diagonal_floor": value.diagonal_floor,
                "flags": [str(f) for f in value.flags],
            }
        )
