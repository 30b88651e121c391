from cli.experiment import ExperimentCommand


class Command(ExperimentCommand):
    help = "Longest progression {d, 2d, ..., nd} inside each set S."
    kind = "ap_search"
    inline_keys = ("s_gens",)

    def add_experiment_arguments(self, parser):
        parser.add_argument("--s-gen", dest="s_gens", action="append", help="generator spec for S (repeatable)")
