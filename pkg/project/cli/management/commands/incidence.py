from cli.experiment import ExperimentCommand


class Command(ExperimentCommand):
    help = "Incidences f(i) + b = c and the energy of f(I) with B."
    kind = "incidence"
    inline_keys = ("f_gen", "b_gens", "c_gen", "delta")

    def add_experiment_arguments(self, parser):
        parser.add_argument("--f-gen", dest="f_gen", help="image f(I)")
        parser.add_argument("--b-gen", dest="b_gens", action="append", help="shift set B (repeatable)")
        parser.add_argument("--c-gen", dest="c_gen", help="target set C")
        parser.add_argument("--delta", type=float)
