from cli.base import float_list, int_list
from cli.experiment import ExperimentCommand


class Command(ExperimentCommand):
    help = "Parseval, fourth-moment, GCD, Euler-moment and energy identities at desk scale."
    kind = "identities"
    inline_keys = (
        "weights",
        "support_max",
        "samples",
        "gcd_alphas",
        "t_max",
        "z_values",
        "moment_ls",
        "euler_alphas",
        "radziwill_n",
    )

    def add_experiment_arguments(self, parser):
        parser.add_argument("--weights", type=int, help="number of seeded random weights")
        parser.add_argument("--support-max", dest="support_max", type=int)
        parser.add_argument("--samples", type=int)
        parser.add_argument("--gcd-alphas", dest="gcd_alphas", type=float_list)
        parser.add_argument("--t-max", dest="t_max", type=int)
        parser.add_argument("--z-values", dest="z_values", type=int_list)
        parser.add_argument("--moment-ls", dest="moment_ls", type=int_list)
        parser.add_argument("--euler-alphas", dest="euler_alphas", type=float_list)
        parser.add_argument("--radziwill-n", dest="radziwill_n", type=int)
