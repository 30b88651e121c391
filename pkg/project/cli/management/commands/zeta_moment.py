from cli.base import LabCommand
from zeta.moments import euler_expression, exact_Z_moment, mc_moment, zeta_expression

MODES = ("exact", "mc")
TARGETS = ("euler", "zeta")


class Command(LabCommand):
    help = "Moments E|Z_X(alpha)|^(2l) of the restricted Euler product, exactly or by Monte Carlo."

    def add_arguments(self, parser):
        parser.add_argument("--mode", choices=MODES, default="exact")
        parser.add_argument("--z", type=int, default=10, help="primes in [z, 2z)")
        parser.add_argument("--alpha", type=float, default=0.75)
        parser.add_argument("--l", type=int, default=1, help="moment order; the power is 2l")
        parser.add_argument("--samples", type=int, default=10000, help="Monte Carlo samples (at least 100)")
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument(
            "--target",
            choices=TARGETS,
            default="euler",
            help="euler: restricted Euler product; zeta: truncated random zeta (mc only)",
        )
        parser.add_argument("--n-max", type=int, help="truncation of the zeta series")

    def handle(self, *args, **options):
        mode, target = options["mode"], options["target"]
        if mode == "exact" and target != "euler":
            self.usage_error("exact moments exist for the Euler product only")
        if mode == "exact":
            moment = exact_Z_moment(options["z"], options["alpha"], options["l"])
            self.emit({"mode": mode, "z": options["z"], "alpha": options["alpha"], "l": options["l"], **moment.to_dict()})
            return
        if target == "euler":
            expr = euler_expression(options["alpha"], options["z"])
        else:
            expr = zeta_expression(options["alpha"], options["n_max"])
        estimate = mc_moment(expr, options["l"], options["samples"], options["seed"])
        self.emit({"mode": mode, "seed": options["seed"], **estimate.to_dict()})
