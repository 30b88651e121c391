import math

import numpy as np
from django.test import SimpleTestCase, override_settings

from bounds.formulas import (
    WeightNorms,
    ap_in_g_check,
    c_alpha,
    e_f_rhs,
    energy_transfer_rhs,
    inc_rhs,
    lemma_moment_regimes,
    plunnecke_rhs,
    product_growth_rhs,
    pz_rhs,
    pz_rhs_eps,
    radziwill_rhs,
    solymosi_ratio,
    t_as_rhs,
    t_as_witness_fraction,
    tl_rhs,
)
from bounds.reports import BoundReport
from common.exceptions import DomainError

DEGENERATE = WeightNorms(l1=1.0, l2=1.0, t_next=1.0)


class RadziwillTests(SimpleTestCase):
    def test_degenerate_weight(self):
        n = 1024
        result = radziwill_rhs(n, DEGENERATE, s=1, c=1.0)
        self.assertAlmostEqual(result.t_form, n * math.exp(2 * math.log2(math.log2(n))))
        self.assertAlmostEqual(result.l1_form, result.t_form)
        self.assertTrue(result.flags["norms_consistent"])

    def test_constant_switched_off(self):
        norms = WeightNorms(l1=10.0, l2=2.0, t_next=300.0)
        result = radziwill_rhs(100, norms, s=1, c=0.0)
        self.assertAlmostEqual(result.t_form, 100 * 4 * math.exp(2 * math.log2(math.log2(100))))

    def test_monotone_in_energy(self):
        values = [radziwill_rhs(1000, WeightNorms(5.0, 2.0, t), s=2).t_form for t in (64, 100, 1000, 10**5)]
        self.assertEqual(values, sorted(values))

    def test_inconsistent_norms_are_flagged(self):
        with self.assertLogs("bounds.formulas", level="WARNING"):
            result = radziwill_rhs(100, WeightNorms(1.0, 2.0, 1.0), s=1)
        self.assertFalse(result.flags["norms_consistent"])

    def test_domain(self):
        with self.assertRaises(DomainError):
            radziwill_rhs(2, DEGENERATE)


class PrimeEnergyBoundTests(SimpleTestCase):
    def test_degenerate_weight(self):
        result = pz_rhs(100, WeightNorms(1.0, 2.0, 16.0), s=1, alpha=0.75)
        self.assertAlmostEqual(result.value, 4000.0)
        self.assertTrue(result.flags["cond_l"])

    def test_eps_variant_matches_at_one(self):
        norms = WeightNorms(12.0, 3.0, 500.0)
        for z in (3, 50, 1000):
            self.assertAlmostEqual(pz_rhs(z, norms, s=2, alpha=1.0).value, pz_rhs_eps(z, norms, s=2, eps=1.0).value)

    def test_condition_fails_for_large_energy(self):
        result = pz_rhs(8, WeightNorms(1.0, 1.0, 2.0**100), s=1, alpha=1.0)
        self.assertFalse(result.flags["cond_l"])


class RepulsionCheckTests(SimpleTestCase):
    def test_example(self):
        check = ap_in_g_check(10**4, 128, 0.1)
        self.assertTrue(check.holds)
        self.assertEqual(check.lhs, 7.0)
        self.assertAlmostEqual(check.rhs, 0.1 * 10**4 / math.log2(10**4))
        self.assertEqual(check.threshold, 0.1 * 1229**2 * 128)

    def test_zero_eps_fails(self):
        self.assertFalse(ap_in_g_check(1000, 2, 0.0).holds)

    def test_threshold_linear_in_set_size(self):
        base = ap_in_g_check(500, 10, 0.2, prime_count=95).threshold
        self.assertAlmostEqual(ap_in_g_check(500, 30, 0.2, prime_count=95).threshold, 3 * base)

    @override_settings(AP_IN_G_CONSTANT=0.001)
    def test_constant_is_configurable(self):
        self.assertFalse(ap_in_g_check(10**4, 128, 0.1).holds)


class FormulaTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(tl_rhs(64, 2, c=0), 64.0**8)
        self.assertEqual(inc_rhs(64, 100, 100, 0), 6400)
        self.assertEqual(c_alpha(0.75), 4.5)
        self.assertEqual(e_f_rhs(10, 100, 0), 10000.0)
        self.assertEqual(product_growth_rhs(16, 1), 1.0)
        self.assertAlmostEqual(plunnecke_rhs(10, 19, 2, 1), 68.59)
        self.assertEqual(energy_transfer_rhs(4, 0.5, 3.0), 24.0)
        self.assertEqual(solymosi_ratio(64, 4, 4), 2.0)

    def test_shift_growth(self):
        self.assertEqual(t_as_rhs(1024, 0, c=1, s_size=3), 3 * math.exp(10))
        self.assertAlmostEqual(t_as_witness_fraction(1024, 1 / 6), math.exp(-1))

    def test_domains(self):
        for call in (lambda: c_alpha(0.5), lambda: c_alpha(1.0), lambda: tl_rhs(1, 2), lambda: t_as_rhs(1, 0.1)):
            with self.assertRaises(DomainError):
                call()

    def test_monotonicity(self):
        rng = np.random.default_rng(59)
        for _ in range(100):
            i, b, c = (int(v) for v in rng.integers(2, 1000, size=3))
            delta = float(rng.random()) / 2
            self.assertLessEqual(inc_rhs(i, b, c, delta), inc_rhs(i + 1, b, c, delta))
            self.assertLessEqual(inc_rhs(i, b, c, delta), inc_rhs(i, b, c + 1, delta))
            self.assertLessEqual(e_f_rhs(i, b, delta), e_f_rhs(i + 1, b, delta))
            self.assertLessEqual(product_growth_rhs(i, 2), product_growth_rhs(i + 1, 2))
            self.assertLessEqual(tl_rhs(i, 3, 1.0), tl_rhs(i + 1, 3, 1.0))
            self.assertLessEqual(t_as_rhs(i, 0.1), t_as_rhs(i + 1, 0.1))
            self.assertGreaterEqual(c_alpha(0.55 + delta * 0.8), 0)

    def test_moment_regimes(self):
        regimes = lemma_moment_regimes(0.75, 8)
        self.assertAlmostEqual(regimes["intermediate"], 4.5 * 8 ** (4 / 3) / 3)
        self.assertEqual(regimes["general"], 64.0)
        self.assertIsNone(regimes["alpha_one"])
        self.assertEqual(lemma_moment_regimes(1.0, 16)["alpha_one"], 32.0)


class BoundReportTests(SimpleTestCase):
    def test_ratio(self):
        report = BoundReport(name="x", measured=3, bound_rhs=4.0, constants={"c": 1.0}, hypothesis_flags={"h": True})
        self.assertEqual(report.ratio, 0.75)
        self.assertTrue(report.holds)
        self.assertEqual(report.to_dict()["ratio"], 0.75)

    def test_ratio_undefined(self):
        self.assertIsNone(BoundReport(name="x", measured=1, bound_rhs=0.0).ratio)
        report = BoundReport(name="x", measured=1, bound_rhs=math.inf, hypothesis_flags={"h": False})
        self.assertIsNone(report.to_dict()["bound_rhs"])
        self.assertFalse(report.holds)
