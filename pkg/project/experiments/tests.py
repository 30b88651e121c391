import json
import tempfile
from pathlib import Path

from django.test import SimpleTestCase, override_settings

from common.choices import Flag
from common.exceptions import ConfigError, DataFileError
from experiments.choices import ExperimentKind, IdentityCheck, OutputFormat
from experiments.harnesses.ap_search import reference_length
from experiments.harnesses.base import build_set
from experiments.harnesses.identities import random_weight
from experiments.harnesses.incidence import holder_floor, shifted_factors
from experiments.harnesses.shift_growth import choose_shifts, shift_hypotheses
from experiments.persistence import load_config, load_thresholds, persist, read_records, render_csv
from experiments.records import ResultRecord
from experiments.runner import (
    run_ap_search,
    run_experiment,
    run_identity_suite,
    run_incidence,
    run_product_growth,
    run_repulsion,
    run_shift_growth,
    run_tl_scan,
    validate_config,
)
from experiments.tasks import evaluate_point
from setcore.arithmetic import product_set

SMALL_IDENTITIES = {
    "weights": 1,
    "support_max": 12,
    "samples": 2000,
    "gcd_alphas": [0.75],
    "t_max": 1000,
    "z_values": [10],
    "moment_ls": [1],
    "euler_alphas": [0.75],
    "radziwill_n": 100,
}


class ConfigValidationTests(SimpleTestCase):
    def test_defaults_are_filled(self):
        config = validate_config({"kind": "repulsion", "l_values": [100], "s_gens": ["interval:8"]})
        self.assertEqual(config["d_values"], [1])
        self.assertEqual(config["seed"], 0)
        self.assertEqual(config["format"], OutputFormat.JSONL)

    def test_unknown_kind(self):
        with self.assertRaises(ConfigError):
            validate_config({"kind": "nothing"})

    def test_bad_generator_names_the_field(self):
        with self.assertRaises(ConfigError) as ctx:
            validate_config({"kind": "ap_search", "s_gens": ["ap:0,1"]})
        self.assertIn("s_gens", ctx.exception.message)

    def test_empty_sweep_rejected(self):
        with self.assertRaises(ConfigError):
            validate_config({"kind": "repulsion", "l_values": [], "s_gens": ["interval:8"]})

    def test_zero_dilation_rejected(self):
        with self.assertRaises(ConfigError):
            validate_config({"kind": "repulsion", "l_values": [100], "s_gens": ["interval:8"], "d_values": [0]})

    def test_seed_range(self):
        with self.assertRaises(ConfigError):
            validate_config({"kind": "ap_search", "s_gens": ["interval:8"], "seed": 2**64})
        config = validate_config({"kind": "ap_search", "s_gens": ["interval:8"], "seed": 2**64 - 1})
        self.assertEqual(config["seed"], 2**64 - 1)

    def test_gcd_alphas_need_convergence(self):
        with self.assertRaises(ConfigError):
            validate_config({"kind": "identities", "gcd_alphas": [0.5]})


class RepulsionTests(SimpleTestCase):
    def test_powers_of_two_reach_the_floor(self):
        (record,) = run_repulsion({"l_values": [100], "s_gens": ["geo:1,2,20"]})
        self.assertEqual(record.measured["prime_count"], 25)
        self.assertEqual(record.measured["energy"], 25 * 20)
        self.assertAlmostEqual(record.measured["normalized_energy"], 1 / 25)

    def test_dilation_invariance(self):
        records = run_repulsion({"l_values": [200], "s_gens": ["interval:64"], "d_values": [1, 7, -3]})
        self.assertEqual(len({r.measured["energy"] for r in records}), 1)

    def test_interval_sweep_decreases(self):
        records = run_repulsion({"l_values": [500, 2000, 8000], "s_gens": ["interval:128"]})
        normalized = [r.measured["normalized_energy"] for r in records]
        self.assertEqual([r.measured["prime_count"] for r in records], [95, 303, 1007])
        self.assertGreater(normalized[0], normalized[1])
        self.assertGreater(normalized[1], normalized[2])
        thresholds = load_thresholds()
        self.assertLessEqual(normalized[2], thresholds["repulsion_interval_128_l8000"]["value"])
        offdiagonal = thresholds["repulsion_interval_128_offdiagonal"]["value"]
        for record in records:
            self.assertEqual(record.measured["energy"], 128 * record.measured["prime_count"] + offdiagonal)

    def test_size_condition_reported(self):
        (record,) = run_repulsion({"l_values": [500], "s_gens": ["interval:128"], "eps": 0.1})
        (report,) = record.bounds
        self.assertEqual(report.name, "prime_repulsion")
        self.assertAlmostEqual(report.bound_rhs, 0.1 * 95**2 * 128)
        self.assertIn("size_condition", report.hypothesis_flags)


class ApSearchTests(SimpleTestCase):
    def test_smooth_grid(self):
        (record,) = run_ap_search({"s_gens": ["grid:2,3,16"]})
        self.assertEqual(record.measured["ap_length"], 4)
        self.assertEqual(record.measured["s_size"], 256)
        self.assertEqual(record.measured["reference"], 24)
        self.assertLessEqual(record.measured["product_doubling"], 4)
        self.assertLessEqual(record.measured["ap_length"], record.measured["reference"])

    def test_interval_and_geometric(self):
        interval, powers = run_ap_search({"s_gens": ["ap:1,1,64", "geo:1,2,32"]})
        self.assertEqual(interval.measured["ap_length"], 64)
        self.assertEqual(powers.measured["ap_length"], 2)

    def test_reference_undefined_for_singletons(self):
        self.assertIsNone(reference_length(1))
        self.assertEqual(reference_length(2), 0)


class ShiftGrowthTests(SimpleTestCase):
    def test_singleton_multiplier(self):
        (record,) = run_shift_growth({"a_gens": ["ap:0,1,256"], "s_gens": ["ap:1,1,1"], "alphas": [0.0]})
        self.assertEqual(record.measured["ratio_min"], 256)
        self.assertEqual(record.measured["ratio_max"], 256)
        self.assertTrue(record.measured["exhaustive"])
        self.assertEqual(record.measured["fractions"]["8.0"], 1.0)
        self.assertTrue(record.bounds[0].hypothesis_flags["doubling"])

    def test_known_product_set_size(self):
        multiples = build_set("ap:0,3,128")
        self.assertEqual(len(product_set(multiples, build_set("geo:1,2,8"))), 576)

    def test_zero_always_present(self):
        (record,) = run_shift_growth({"a_gens": ["ap:1,2,20"], "s_gens": ["geo:1,3,5"], "alphas": [0.1]})
        self.assertEqual(record.measured["min_nonzero_size"], record.measured["min_size"] - 1)

    @override_settings(SHIFT_EXHAUSTIVE_LIMIT=16)
    def test_large_sets_are_sampled_reproducibly(self):
        values = build_set("ap:1,1,100")
        first = choose_shifts(values, seed=5)
        self.assertEqual(len(first), 16)
        self.assertEqual(first, sorted(first))
        self.assertEqual(first, choose_shifts(values, seed=5))
        self.assertNotEqual(first, choose_shifts(values, seed=6))

    def test_hypotheses(self):
        flags = shift_hypotheses(256, 511 / 256, 8, 0.0, s_doubling=2.0)
        self.assertTrue(flags["doubling"])
        self.assertIn("set_doubling", flags)
        self.assertIsNone(shift_hypotheses(2, 1.5, 4, 0.1)["set_size"])


class TlScanTests(SimpleTestCase):
    def test_interval_control(self):
        records = run_tl_scan({"f_gens": ["pow:1,64"], "j_max": 1})
        self.assertEqual(records[1].measured["t_energy"], 64 * (2 * 64**2 + 1) // 3)

    def test_cubes_stay_below_fixture(self):
        records = run_tl_scan({"f_gens": ["pow:3,64"], "j_max": 1})
        ceiling = load_thresholds()["cubes_64_additive_energy_ceiling"]["value"]
        self.assertLessEqual(records[1].measured["t_energy"], ceiling)
        self.assertEqual(records[1].bounds[0].name, "higher_energy_decay")

    def test_first_row_reports_both_conventions(self):
        record = run_tl_scan({"f_gens": ["pow:2,10"], "j_max": 0})[0]
        self.assertEqual(record.measured["t_energy"], 10)
        self.assertEqual(record.measured["t_energy_proof_convention"], 100)
        self.assertIn(str(Flag.PROOF_CONVENTION), record.measured["flags"])


class IncidenceTests(SimpleTestCase):
    def test_identity_shift(self):
        (record,) = run_incidence({"f_gen": "pow:2,10", "b_gens": ["ap:0,1,1"], "c_gen": "interval:50"})
        self.assertEqual(record.measured["incidences"], 7)
        self.assertLessEqual(record.measured["incidences"] ** 4, record.measured["cauchy_schwarz_ceiling"])

    def test_energy_and_sumset_reported(self):
        (record,) = run_incidence({"f_gen": "pow:3,32", "b_gens": ["interval:32"], "c_gen": "interval:200"})
        self.assertGreaterEqual(record.measured["energy"], 32 * 32)
        self.assertEqual([b.name for b in record.bounds], ["convex_incidences", "convex_energy"])


class ProductGrowthTests(SimpleTestCase):
    def test_two_factors_dominate_holder_floor(self):
        (record,) = run_product_growth({"a_gens": ["geo:1,2,16"], "shifts": [1]})
        self.assertEqual(record.measured["factors"], 2)
        self.assertGreaterEqual(record.measured["product_size"], record.measured["holder_floor"])

    def test_zero_factor_skips_floor(self):
        factors = shifted_factors(build_set("ap:-1,1,4"), [1], 2)
        self.assertIsNone(holder_floor(factors))

    def test_single_shift_factor(self):
        (factor,) = shifted_factors(build_set("geo:1,2,16"), [1], 1)
        self.assertEqual(len(factor), 16)
        self.assertIn(2, factor)


class IdentityTests(SimpleTestCase):
    def test_suite_rows(self):
        records = run_identity_suite({**SMALL_IDENTITIES, "seed": 3})
        checks = [r.params["check"] for r in records]
        self.assertEqual(checks.count(IdentityCheck.GCD), 1)
        self.assertIn(IdentityCheck.RADZIWILL, checks)
        self.assertIn(IdentityCheck.ENERGY_TRANSFER, checks)
        gcd = next(r for r in records if r.params["check"] == IdentityCheck.GCD)
        self.assertTrue(gcd.measured["contains"])
        self.assertLessEqual(gcd.measured["interval_low"], gcd.measured["lhs"])

    def test_rerun_is_identical(self):
        first = run_identity_suite({**SMALL_IDENTITIES, "seed": 7})
        second = run_identity_suite({**SMALL_IDENTITIES, "seed": 7})
        self.assertEqual([r.measured for r in first], [r.measured for r in second])

    def test_random_weights_are_seeded(self):
        self.assertEqual(random_weight(1, 0, 30).as_dict(), random_weight(1, 0, 30).as_dict())
        self.assertNotEqual(random_weight(1, 0, 30).as_dict(), random_weight(1, 1, 30).as_dict())


class TaskTests(SimpleTestCase):
    def test_task_returns_record_dict(self):
        data = {"kind": "ap_search", "s_gens": ["grid:2,3,16"]}
        row = evaluate_point.apply(args=(data, 0)).get()
        self.assertEqual(row["measured"]["ap_length"], 4)
        self.assertEqual(ResultRecord(**row).kind, ExperimentKind.AP_SEARCH)

    def test_interrupt_keeps_finished_records(self):
        seen = []

        def stop_after_first(record):
            seen.append(record)
            raise KeyboardInterrupt

        outcome = run_experiment({"kind": "ap_search", "s_gens": ["interval:4", "interval:8"]}, stop_after_first)
        self.assertTrue(outcome.truncated)
        self.assertEqual(len(outcome.records), 1)
        self.assertEqual(seen, outcome.records)


class PersistenceTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)

    def test_empty_outputs(self):
        path = persist([], self.dir / "empty.jsonl")
        self.assertEqual(path.read_text(), "")
        path = persist([], self.dir / "empty.csv", fmt=OutputFormat.CSV)
        self.assertEqual(path.read_text(), "kind,params,measured,bounds,seed,duration_ms\n")

    def test_deterministic_without_timestamps(self):
        config = {"l_values": [100, 200], "s_gens": ["interval:32"]}
        first = persist(run_repulsion(config), self.dir / "a.jsonl", timestamps=False).read_bytes()
        second = persist(run_repulsion(config), self.dir / "b.jsonl", timestamps=False).read_bytes()
        self.assertEqual(first, second)

    def test_read_back_and_truncation_marker(self):
        records = run_ap_search({"s_gens": ["grid:2,3,4", "interval:10"]})
        path = persist(records, self.dir / "r.jsonl", truncated=True)
        lines = path.read_text().splitlines()
        self.assertEqual(json.loads(lines[-1]), {"truncated": True, "completed": 2})
        rows = read_records(path)
        self.assertEqual([row["measured"]["ap_length"] for row in rows], [r.measured["ap_length"] for r in records])

    def test_csv_flattens_with_dots(self):
        records = run_ap_search({"s_gens": ["grid:2,3,4"]})
        text = render_csv([r.to_dict() for r in records], truncated=True)
        header = text.splitlines()[0].split(",")
        self.assertIn("measured.ap_length", header)
        self.assertIn("bounds.0.bound_rhs", header)
        self.assertTrue(text.endswith("# truncated\n"))

    def test_bad_files(self):
        with self.assertRaises(DataFileError):
            read_records(self.dir / "missing.jsonl")
        (self.dir / "bad.jsonl").write_text("{not json\n")
        with self.assertRaises(DataFileError):
            read_records(self.dir / "bad.jsonl")
        (self.dir / "bytes.jsonl").write_bytes(b"\xff\xfe\n")
        with self.assertRaises(DataFileError):
            read_records(self.dir / "bytes.jsonl")
        with self.assertRaises(DataFileError):
            load_config(self.dir / "bytes.jsonl")
        with self.assertRaises(DataFileError):
            load_thresholds(self.dir / "bytes.jsonl")
        with self.assertRaises(DataFileError):
            persist([], self.dir / "missing" / "out.jsonl")

    def test_yaml_config(self):
        path = self.dir / "config.yaml"
        path.write_text("kind: ap_search\ns_gens:\n  - grid:2,3,16\nseed: 4\n")
        config = validate_config(load_config(path))
        self.assertEqual(config["seed"], 4)
        self.assertEqual(config["s_gens"], ["grid:2,3,16"])
