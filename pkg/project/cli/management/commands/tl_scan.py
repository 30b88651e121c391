from cli.experiment import ExperimentCommand


class Command(ExperimentCommand):
    help = "T_(2^j) of convex images f(I) for j = 0..j_max."
    kind = "tl_scan"
    inline_keys = ("f_gens", "i_gen", "j_max", "eps")

    def add_experiment_arguments(self, parser):
        parser.add_argument("--f-gen", dest="f_gens", action="append", help="image f(I), e.g. pow:3,64 (repeatable)")
        parser.add_argument("--i-gen", dest="i_gen", help="I for the tripling condition; defaults to interval:|f(I)|")
        parser.add_argument("--j-max", dest="j_max", type=int)
        parser.add_argument("--eps", type=float)
