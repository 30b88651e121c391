"""Experiment subcommands: config file plus inline flags, then a persisted sweep."""

from django.core.management.base import CommandError

from cli.base import EXIT_INTERRUPTED, LabCommand, constant_pair
from experiments.choices import OutputFormat
from experiments.persistence import load_config, persist
from experiments.runner import run_experiment
from experiments.serializers import SEED_MAX


def seed_value(text):
    value = int(text)
    if not 0 <= value <= SEED_MAX:
        raise ValueError(text)
    return value


class ExperimentCommand(LabCommand):
    """Subclasses set ``kind`` and declare their inline flags in ``add_experiment_arguments``.

    Every inline flag's ``dest`` is the config key it overrides.
    """

    kind = None
    inline_keys = ()

    def add_arguments(self, parser):
        parser.add_argument("--config", help="YAML or JSON config file; inline flags override it")
        parser.add_argument("--seed", type=seed_value, help="unsigned 64-bit seed")
        parser.add_argument("--out", help="result file; without it only summaries are printed")
        parser.add_argument("--format", choices=OutputFormat.values, help="jsonl (default) or csv")
        parser.add_argument("--constant", action="append", type=constant_pair, default=[], metavar="NAME=VALUE")
        parser.add_argument("--no-timestamps", action="store_true", help="write null durations")
        self.add_experiment_arguments(parser)

    def add_experiment_arguments(self, parser):
        raise NotImplementedError

    def build_config(self, options):
        data = load_config(options["config"]) if options["config"] else {}
        if data.get("kind", self.kind) != self.kind:
            self.usage_error(f"config describes a {data['kind']} experiment, not {self.kind}")
        data["kind"] = self.kind
        for key in (*self.inline_keys, "seed", "out", "format"):
            if options.get(key) is not None:
                data[key] = options[key]
        if options["constant"]:
            data["constants"] = {**data.get("constants", {}), **dict(options["constant"])}
        return data

    def handle(self, *args, **options):
        data = self.build_config(options)
        outcome = run_experiment(data, on_record=lambda record: self.stdout.write(record.summary()))
        out = data.get("out")
        if out:
            persist(
                outcome.records,
                out,
                fmt=data.get("format") or OutputFormat.JSONL,
                truncated=outcome.truncated,
                timestamps=not options["no_timestamps"],
            )
        if outcome.truncated:
            raise CommandError(f"interrupted after {len(outcome.records)} point(s)", returncode=EXIT_INTERRUPTED)
