from cli.base import float_list
from cli.experiment import ExperimentCommand


class Command(ExperimentCommand):
    help = "Sizes of (A - a)S over shifts a in A."
    kind = "shift_growth"
    inline_keys = ("a_gens", "s_gens", "alphas", "growth_levels", "shift_samples")

    def add_experiment_arguments(self, parser):
        parser.add_argument("--a-gen", dest="a_gens", action="append", help="generator spec for A (repeatable)")
        parser.add_argument("--s-gen", dest="s_gens", action="append", help="generator spec for S (repeatable)")
        parser.add_argument("--alphas", type=float_list, help="comma-separated alpha values in [0, 1/6]")
        parser.add_argument("--growth-levels", dest="growth_levels", type=float_list)
        parser.add_argument("--shift-samples", dest="shift_samples", type=int, help="seeded sample size of shifts")
