import json
import math
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from cli.svg import field_value, line_chart

SMALL_IDENTITIES = [
    "--weights", "1",
    "--support-max", "10",
    "--samples", "1000",
    "--gcd-alphas", "0.75",
    "--t-max", "500",
    "--z-values", "10",
    "--moment-ls", "1",
    "--euler-alphas", "0.75",
    "--radziwill-n", "50",
]


def run(*args):
    out = StringIO()
    call_command(*args, stdout=out)
    return out.getvalue()


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)

    def assertExitCode(self, code, *args):
        with self.assertRaises(CommandError) as ctx:
            run(*args)
        self.assertEqual(ctx.exception.returncode, code)
        return ctx.exception


class EnergyCommandTests(CommandTestCase):
    def test_additive(self):
        payload = json.loads(run("energy", "--op", "add", "--set-a", "ap:1,1,3", "--set-b", "ap:1,1,3"))
        self.assertEqual(payload["energy"], 19)
        self.assertEqual(payload["sizes"], [3, 3])
        self.assertEqual(payload["diagonal_floor"], 9)

    def test_t_one_is_size(self):
        payload = json.loads(run("energy", "--op", "t", "--k", "1", "--set-a", "ap:0,1,10"))
        self.assertEqual(payload["energy"], 10)

    def test_multiplicative_flags_zero(self):
        payload = json.loads(run("energy", "--op", "mul", "--set-a", "ap:0,1,4"))
        self.assertEqual(payload["flags"], ["zero_in_product"])

    def test_file_set(self):
        path = self.dir / "set.txt"
        path.write_text("# three\n1\n2\n3\n")
        payload = json.loads(run("energy", "--op", "add", "--set-a", f"file:{path}"))
        self.assertEqual(payload["energy"], 19)

    def test_usage_errors(self):
        error = self.assertExitCode(2, "energy", "--op", "add", "--set-a", "ap:0,1")
        self.assertIn("position", str(error))
        self.assertExitCode(2, "energy", "--op", "t", "--set-a", "ap:0,1,3")
        self.assertExitCode(2, "energy", "--op", "add", "--k", "2", "--set-a", "ap:0,1,3")

    def test_missing_file(self):
        self.assertExitCode(4, "energy", "--op", "add", "--set-a", f"file:{self.dir / 'none.txt'}")

    def test_undecodable_files(self):
        bad = self.dir / "bad.txt"
        bad.write_bytes(b"1\n2\n\xff\xfe\n")
        error = self.assertExitCode(4, "energy", "--op", "add", "--set-a", f"file:{bad}")
        self.assertIn("UTF-8", str(error))
        self.assertExitCode(4, "gcdsum", "--weight", str(bad), "--alpha", "1")
        self.assertExitCode(4, "ap_search", "--config", str(bad))
        self.assertExitCode(4, "plot", "--in", str(bad), "--x", "l", "--y", "l", "--out", str(self.dir / "x.svg"))


class ZetaCommandTests(CommandTestCase):
    def test_exact_moment(self):
        payload = json.loads(run("zeta_moment", "--mode", "exact", "--z", "3", "--alpha", "0.5", "--l", "1"))
        self.assertAlmostEqual(payload["value"], 1.6)
        self.assertEqual(payload["primes"], 2)

    def test_mc_needs_samples(self):
        self.assertExitCode(3, "zeta_moment", "--mode", "mc", "--samples", "1")

    def test_mc_is_seeded(self):
        args = ("zeta_moment", "--mode", "mc", "--z", "10", "--samples", "500", "--seed", "9")
        first = json.loads(run(*args))
        self.assertEqual(first, json.loads(run(*args)))
        self.assertEqual(first["seed"], 9)
        self.assertGreater(first["std_error"], 0)

    def test_exact_zeta_rejected(self):
        self.assertExitCode(2, "zeta_moment", "--mode", "exact", "--target", "zeta")

    def test_gcdsum_of_unit_weight(self):
        path = self.dir / "one.tsv"
        path.write_text("1\t1\n")
        payload = json.loads(run("gcdsum", "--weight", str(path), "--alpha", "1", "--trunc", "1000000"))
        self.assertAlmostEqual(payload["value"], math.pi**2 / 6, delta=2e-6)
        low, high = payload["interval"]
        self.assertLessEqual(low, math.pi**2 / 6)
        self.assertLessEqual(math.pi**2 / 6, high)

    def test_gcdsum_errors(self):
        path = self.dir / "one.tsv"
        path.write_text("1\t1\n")
        self.assertExitCode(4, "gcdsum", "--weight", str(self.dir / "none.tsv"), "--alpha", "1")
        self.assertExitCode(3, "gcdsum", "--weight", str(path), "--alpha", "0.5")


class ExperimentCommandTests(CommandTestCase):
    def test_repulsion_writes_records(self):
        out = self.dir / "r.jsonl"
        stdout = run(
            "repulsion", "--l-values", "500,2000,8000", "--s-gen", "interval:128", "--eps", "0.1", "--out", str(out)
        )
        self.assertEqual(len(stdout.strip().splitlines()), 3)
        rows = [json.loads(line) for line in out.read_text().splitlines()]
        normalized = [row["measured"]["normalized_energy"] for row in rows]
        self.assertEqual(normalized, sorted(normalized, reverse=True))
        self.assertEqual(list(rows[0]), ["kind", "params", "measured", "bounds", "seed", "duration_ms"])

    def test_ap_search_summary(self):
        stdout = run("ap_search", "--s-gen", "grid:2,3,16")
        self.assertIn("ap_length=4", stdout)

    def test_identities_are_reproducible(self):
        first, second = self.dir / "a.jsonl", self.dir / "b.jsonl"
        run("identities", "--seed", "7", "--no-timestamps", "--out", str(first), *SMALL_IDENTITIES)
        run("identities", "--seed", "7", "--no-timestamps", "--out", str(second), *SMALL_IDENTITIES)
        self.assertEqual(first.read_bytes(), second.read_bytes())
        threaded = self.dir / "c.jsonl"
        with override_settings(ENERGY_WORKERS=4):
            run("identities", "--seed", "7", "--no-timestamps", "--out", str(threaded), *SMALL_IDENTITIES)
        self.assertEqual(first.read_bytes(), threaded.read_bytes())

    def test_config_file_with_override(self):
        config = self.dir / "config.yaml"
        config.write_text("s_gens:\n  - interval:8\nseed: 3\n")
        out = self.dir / "out.csv"
        run("ap_search", "--config", str(config), "--s-gen", "grid:2,3,4", "--format", "csv", "--out", str(out))
        lines = out.read_text().splitlines()
        self.assertEqual(len(lines), 2)
        self.assertIn("params.s_gen", lines[0])
        self.assertIn("grid:2,3,4", lines[1])

    def test_config_kind_mismatch(self):
        config = self.dir / "config.json"
        config.write_text(json.dumps({"kind": "repulsion"}))
        self.assertExitCode(2, "ap_search", "--config", str(config))

    def test_invalid_config(self):
        self.assertExitCode(2, "repulsion", "--s-gen", "interval:8")
        self.assertExitCode(2, "product_growth", "--a-gen", "geo:1,2,4", "--shifts", "0")

    def test_constants_reach_bounds(self):
        out = self.dir / "p.jsonl"
        run("product_growth", "--a-gen", "geo:1,2,8", "--shifts", "1", "--constant", "product_growth=2", "--out", str(out))
        row = json.loads(out.read_text())
        self.assertEqual(row["bounds"][0]["constants"]["c"], 2.0)

    def test_remaining_experiments_run(self):
        self.assertIn("[shift_growth]", run("shift_growth", "--a-gen", "ap:0,1,16", "--s-gen", "geo:1,2,4"))
        self.assertIn("[tl_scan]", run("tl_scan", "--f-gen", "pow:2,16", "--j-max", "1"))
        self.assertIn(
            "[incidence]", run("incidence", "--f-gen", "pow:2,10", "--b-gen", "ap:0,1,1", "--c-gen", "interval:50")
        )


class PlotCommandTests(CommandTestCase):
    def write_records(self):
        out = self.dir / "r.jsonl"
        run("repulsion", "--l-values", "100,200,400", "--s-gen", "interval:32", "--no-timestamps", "--out", str(out))
        return out

    def test_plot_is_deterministic(self):
        source = self.write_records()
        first, second = self.dir / "a.svg", self.dir / "b.svg"
        run("plot", "--in", str(source), "--x", "l", "--y", "normalized_energy", "--logx", "--out", str(first))
        run("plot", "--in", str(source), "--x", "l", "--y", "normalized_energy", "--logx", "--out", str(second))
        self.assertEqual(first.read_bytes(), second.read_bytes())
        text = first.read_text()
        self.assertTrue(text.startswith("<svg"))
        self.assertIn("<polyline", text)
        self.assertEqual(text.count("<circle"), 3)

    def test_empty_input(self):
        source = self.dir / "empty.jsonl"
        source.write_text("")
        out = self.dir / "empty.svg"
        run("plot", "--in", str(source), "--x", "l", "--y", "normalized_energy", "--out", str(out))
        text = out.read_text()
        self.assertIn("<line", text)
        self.assertNotIn("<polyline", text)

    def test_missing_field(self):
        source = self.write_records()
        error = self.assertExitCode(4, "plot", "--in", str(source), "--x", "l", "--y", "nope", "--out", str(self.dir / "x.svg"))
        self.assertIn("nope", str(error))


class SvgTests(SimpleTestCase):
    def test_field_lookup(self):
        record = {"params": {"l": 5}, "measured": {"energy": 3, "nested": {"a": 1}}}
        self.assertEqual(field_value(record, "l"), (5, True))
        self.assertEqual(field_value(record, "measured.nested.a"), (1, True))
        self.assertEqual(field_value(record, "missing"), (None, False))

    def test_log_axis_drops_nonpositive(self):
        svg = line_chart([(0, 1), (1, 2), (10, 3)], "x", "y", logx=True)
        self.assertEqual(svg.count("<circle"), 2)
