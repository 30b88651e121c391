from cli.base import int_list
from cli.experiment import ExperimentCommand


class Command(ExperimentCommand):
    help = "Multiplicative energy of dilated primes up to l against sets S."
    kind = "repulsion"
    inline_keys = ("l_values", "s_gens", "d_values", "eps")

    def add_experiment_arguments(self, parser):
        parser.add_argument("--l-values", dest="l_values", type=int_list, help="comma-separated prime bounds l")
        parser.add_argument("--s-gen", dest="s_gens", action="append", help="generator spec for S (repeatable)")
        parser.add_argument("--d-values", dest="d_values", type=int_list, help="comma-separated nonzero dilations")
        parser.add_argument("--eps", type=float)
