from cli.base import LabCommand
from energy.weights import read_weight_file
from zeta.gcdsums import gcd_sum, gcd_sum_lhs


class Command(LabCommand):
    help = "Closed form of the GCD sum of a weight, with its certified interval."

    def add_arguments(self, parser):
        parser.add_argument("--weight", required=True, help="file of 'n<TAB>w' lines")
        parser.add_argument("--alpha", type=float, required=True)
        parser.add_argument("--trunc", type=int, help="terms of zeta(2 alpha); defaults to GCD_ZETA_TRUNCATION")
        parser.add_argument("--t-max", type=int, help="also enumerate the defining sum up to t_max")

    def handle(self, *args, **options):
        weight = read_weight_file(options["weight"])
        closed = gcd_sum(weight, options["alpha"], zeta_trunc=options["trunc"])
        payload = {
            "alpha": options["alpha"],
            "value": closed.value,
            "interval": list(closed.interval),
            "double_sum": closed.double_sum,
            "zeta_value": closed.zeta_value,
        }
        if options["t_max"]:
            lhs = gcd_sum_lhs(weight, options["alpha"], options["t_max"])
            payload.update(lhs=lhs, contains=closed.contains(lhs))
        self.emit(payload)
