from pathlib import Path

from cli.base import LabCommand
from cli.svg import line_chart, series
from common.exceptions import DataFileError
from experiments.persistence import read_records


class Command(LabCommand):
    help = "Line chart of one record field against another, as standalone SVG."

    def add_arguments(self, parser):
        parser.add_argument("--in", dest="source", required=True, help="JSON Lines result file")
        parser.add_argument("--x", required=True, help="field name or dotted path, e.g. l or params.l")
        parser.add_argument("--y", required=True, help="field name or dotted path")
        parser.add_argument("--out", required=True, help="SVG file to write")
        parser.add_argument("--logx", action="store_true")
        parser.add_argument("--logy", action="store_true")

    def handle(self, *args, **options):
        records = read_records(options["source"])
        points = series(records, options["x"], options["y"], options["source"])
        svg = line_chart(points, options["x"], options["y"], logx=options["logx"], logy=options["logy"])
        out = Path(options["out"])
        try:
            out.write_text(svg, encoding="utf-8")
        except OSError as exc:
            raise DataFileError(f"cannot write chart: {exc.strerror}", out) from exc
        self.stdout.write(f"{len(points)} point(s) written to {out}")
