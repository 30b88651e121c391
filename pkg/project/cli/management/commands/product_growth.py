from cli.base import int_list
from cli.experiment import ExperimentCommand


class Command(ExperimentCommand):
    help = "Size of the product of 2^m shifted copies A + z_j."
    kind = "product_growth"
    inline_keys = ("a_gens", "shifts", "m_values")

    def add_experiment_arguments(self, parser):
        parser.add_argument("--a-gen", dest="a_gens", action="append", help="generator spec for A (repeatable)")
        parser.add_argument("--shifts", type=int_list, help="comma-separated nonzero shifts, used cyclically")
        parser.add_argument("--m-values", dest="m_values", type=int_list, help="comma-separated m in 1..3")
