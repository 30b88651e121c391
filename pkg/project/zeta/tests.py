import math

import numpy as np
from django.test import SimpleTestCase, override_settings

from common.choices import Flag, RepOperation
from common.exceptions import BoundsError, CoverageError, DivergenceError, DomainError
from energy.weighted import weighted_t_energy
from energy.weights import Weight
from numtheory.arithmetic import partial_zeta
from numtheory.primes import prime_table
from setcore.intset import IntSet
from zeta.gcdsums import energy_transfer_check, gcd_sum, gcd_sum_lhs
from zeta.moments import (
    constant_expression,
    euler_expression,
    exact_Z_moment,
    fourier_expression,
    fourier_zeta_expression,
    mc_moment,
    prime_moment_factor,
    zeta_expression,
)
from zeta.phases import PhaseAssignment, extend_phase, sample_ensemble, sample_phases
from zeta.series import fourier_w, restricted_euler, truncated_zeta


def random_weight(rng, low, high, max_size):
    support = rng.choice(np.arange(low, high + 1), size=rng.integers(1, max_size + 1), replace=False)
    return Weight({int(n): float(v) for n, v in zip(support, rng.random(support.size))})


def within(estimate, target, sigmas=5):
    return abs(estimate.mean - target) <= sigmas * estimate.std_error


class PhaseTests(SimpleTestCase):
    def setUp(self):
        self.primes = prime_table(100).as_intset()

    def test_same_seed_same_phases(self):
        first = sample_phases(self.primes, 42)
        second = sample_phases(self.primes, 42)
        self.assertTrue(np.array_equal(first.angles, second.angles))
        self.assertFalse(np.array_equal(first.angles, sample_phases(self.primes, 43).angles))

    def test_empty_prime_set(self):
        self.assertEqual(sample_phases(IntSet(), 1).as_dict(), {})

    def test_non_prime_rejected(self):
        with self.assertRaises(DomainError):
            sample_phases(IntSet([2, 4]), 1)

    def test_ensemble_columns_match_single_samples(self):
        ensemble = sample_ensemble(self.primes, 9, 16)
        for i in (0, 1, 5, 7, 13):
            self.assertTrue(np.array_equal(ensemble.assignment(i).angles, sample_phases(self.primes, 9, index=i).angles))
        later = sample_ensemble(self.primes, 9, 8, start=8)
        self.assertTrue(np.array_equal(later.angles, ensemble.angles[:, 8:]))

    def test_phase_mean_vanishes(self):
        ensemble = sample_ensemble(IntSet([2]), 2024, 10**4)
        mean = np.exp(1j * ensemble.angles[0]).mean()
        self.assertLessEqual(abs(mean), 5 / math.sqrt(10**4))
        self.assertTrue(((ensemble.angles >= 0) & (ensemble.angles < 2 * math.pi)).all())

    def test_extend_phase(self):
        assignment = sample_phases(self.primes, 5)
        self.assertEqual(extend_phase(assignment, 1), 1)
        expected = assignment.phase(2) ** 2 * assignment.phase(3)
        self.assertAlmostEqual(abs(extend_phase(assignment, 12) - expected), 0, places=12)
        rng = np.random.default_rng(5)
        for n in rng.integers(1, 10**4, size=100).tolist():
            try:
                value = extend_phase(assignment, n)
            except CoverageError:
                continue
            self.assertAlmostEqual(abs(value), 1, places=12)

    def test_uncovered_factor(self):
        assignment = sample_phases(IntSet([2, 3]), 5)
        with self.assertRaises(CoverageError):
            extend_phase(assignment, 10)


class SeriesTests(SimpleTestCase):
    def test_truncated_zeta(self):
        assignment = sample_phases(prime_table(200).as_intset(), 3)
        self.assertEqual(truncated_zeta(assignment, 1, 1).value, 1)
        result = truncated_zeta(assignment, 1, 200)
        self.assertIn(Flag.UNCONTROLLED_TRUNCATION, result.flags)

    def test_degenerate_phases_give_partial_zeta(self):
        trivial = PhaseAssignment.trivial(prime_table(500).as_intset())
        value = truncated_zeta(trivial, 1.5, 500).value
        self.assertAlmostEqual(value.real, partial_zeta(0.75, 500).value, places=10)
        self.assertAlmostEqual(value.imag, 0, places=12)

    def test_zeta_needs_coverage(self):
        with self.assertRaises(CoverageError):
            truncated_zeta(sample_phases(IntSet([2, 3]), 1), 1, 10)
        with self.assertRaises(DomainError):
            truncated_zeta(sample_phases(IntSet([2]), 1), 0.5, 2)

    def test_explicit_zero_truncation_is_rejected(self):
        assignment = sample_phases(prime_table(50).as_intset(), 2)
        with self.assertRaises(DomainError):
            truncated_zeta(assignment, 1, 0)
        with self.assertRaises(DomainError):
            zeta_expression(1, 0)
        with self.assertRaises(BoundsError):
            gcd_sum(Weight({1: 1.0}), 1, 0)

    def test_restricted_euler(self):
        trivial = PhaseAssignment.trivial(IntSet([3, 5]))
        expected = (1 + 3**-0.5) * (1 + 5**-0.5)
        self.assertAlmostEqual(restricted_euler(trivial, 0.5, 3).real, expected, places=12)
        self.assertEqual(restricted_euler(PhaseAssignment.trivial(IntSet()), 0.5, 1), 1)
        primes = prime_table(200).as_intset()
        ceiling = math.prod(1 + p**-0.5 for p in (53, 59, 61, 67, 71, 73, 79, 83, 89, 97))
        for seed in range(20):
            self.assertLessEqual(abs(restricted_euler(sample_phases(primes, seed), 0.5, 50)), ceiling + 1e-12)

    def test_fourier_w(self):
        assignment = sample_phases(prime_table(50).as_intset(), 8)
        self.assertEqual(fourier_w(assignment, Weight({1: 1.0})), 1)
        with self.assertRaises(DomainError):
            fourier_w(assignment, Weight({-2: 1.0}))


class MonteCarloTests(SimpleTestCase):
    def test_constant(self):
        estimate = mc_moment(constant_expression(), 3, 100, 1)
        self.assertEqual((estimate.mean, estimate.std_error), (1.0, 0.0))

    def test_too_few_samples(self):
        with self.assertRaises(DomainError):
            mc_moment(constant_expression(), 1, 1, 1)

    def test_truncated_zeta_second_moment(self):
        estimate = mc_moment(zeta_expression(1, 2), 1, 20000, 11)
        self.assertTrue(within(estimate, 1.25))
        self.assertIn(Flag.UNCONTROLLED_TRUNCATION, estimate.flags)

    def test_zeta_second_moment_is_orthogonal_sum(self):
        estimate = mc_moment(zeta_expression(0.75, 30), 1, 20000, 12)
        self.assertTrue(within(estimate, partial_zeta(0.75, 30).value))

    def test_parseval(self):
        rng = np.random.default_rng(101)
        for seed in range(10):
            w = random_weight(rng, 1, 40, 20)
            estimate = mc_moment(fourier_expression(w), 1, 10**5, seed)
            self.assertTrue(within(estimate, w.l2_squared), (estimate, w.l2_squared))

    def test_fourth_moment_is_multiplicative_energy(self):
        rng = np.random.default_rng(103)
        for seed in range(10):
            w = random_weight(rng, 1, 40, 20)
            estimate = mc_moment(fourier_expression(w), 2, 10**5, seed)
            self.assertTrue(within(estimate, weighted_t_energy(w, 2, RepOperation.PRODUCT)))

    def test_euler_moments_match_exact_values(self):
        for z in (10, 30, 50):
            for l in (1, 2, 3):
                for alpha in (0.5, 0.75):
                    with self.subTest(z=z, l=l, alpha=alpha):
                        exact = exact_Z_moment(z, alpha, l)
                        estimate = mc_moment(euler_expression(alpha, z), l, 10**5, 1000 + z + l)
                        self.assertTrue(within(estimate, exact.value))
                        if l <= z**alpha:
                            self.assertLessEqual(math.log(exact.value), exact.exponent)

    def test_small_euler_example(self):
        estimate = mc_moment(euler_expression(0.5, 3), 1, 20000, 4)
        self.assertTrue(within(estimate, 1.6))

    @override_settings(MC_CHUNK_SIZE=64)
    def test_chunking_and_threads_do_not_change_results(self):
        w = Weight({1: 0.5, 2: 1.0, 6: 0.25, 15: 2.0})
        expr = fourier_zeta_expression(w, 0.75, 50)
        small_chunks = mc_moment(expr, 1, 1000, 77, workers=4)
        with override_settings(MC_CHUNK_SIZE=16384):
            one_chunk = mc_moment(expr, 1, 1000, 77, workers=1)
        self.assertEqual(small_chunks, one_chunk)
        self.assertEqual(mc_moment(expr, 1, 1000, 77), one_chunk)


class ExactMomentTests(SimpleTestCase):
    def test_examples(self):
        self.assertAlmostEqual(exact_Z_moment(3, 0.5, 1).value, 1.6, places=12)
        self.assertEqual(exact_Z_moment(1, 0.5, 2).value, 1)

    def test_hypothesis(self):
        holds = exact_Z_moment(100, 0.5, 3)
        self.assertTrue(holds.hypothesis_holds)
        self.assertLessEqual(holds.value, holds.bound)
        with self.assertLogs("zeta.moments", level="WARNING"):
            violated = exact_Z_moment(4, 0.5, 3)
        self.assertIsNone(violated.bound)
        self.assertEqual(violated.flags, (Flag.HYPOTHESIS_VIOLATED,))

    def test_per_prime_bound(self):
        for p in prime_table(200).primes.tolist():
            for alpha in (0.5, 0.75):
                for l in range(1, 6):
                    if l <= p**alpha:
                        self.assertLessEqual(math.log(prime_moment_factor(p, alpha, l)), 2 * l * l * p ** (-2 * alpha))


class GcdSumTests(SimpleTestCase):
    def test_examples(self):
        result = gcd_sum(Weight({1: 1.0}), 1, 10**6)
        self.assertEqual(result.double_sum, 1.0)
        self.assertLess(abs(result.value - math.pi**2 / 6), 1e-6 + 1e-12)
        pair = gcd_sum(Weight({2: 1.0, 3: 1.0}), 1, 10**4)
        self.assertAlmostEqual(pair.value, pair.zeta_value * 7 / 3, places=12)

    def test_bilinear_scaling(self):
        w = Weight({2: 0.5, 4: 1.0, 9: 2.0})
        self.assertAlmostEqual(gcd_sum(w.scaled(3), 0.75, 1000).value, 9 * gcd_sum(w, 0.75, 1000).value, places=9)

    def test_divergence(self):
        with self.assertRaises(DivergenceError):
            gcd_sum(Weight({1: 1.0}), 0.5)

    def test_lhs_examples(self):
        self.assertAlmostEqual(gcd_sum_lhs(Weight({1: 1.0}), 1, 2), 1.25, places=14)
        w = Weight({2: 1.0, 3: 0.5, 12: 0.25})
        values = [gcd_sum_lhs(w, 0.6, t) for t in (1, 10, 100, 1000)]
        self.assertEqual(values, sorted(values))

    def test_identity_within_certified_interval(self):
        rng = np.random.default_rng(107)
        for _ in range(20):
            w = random_weight(rng, 1, 30, 30)
            for alpha in (0.6, 0.75, 1.0):
                closed = gcd_sum(w, alpha, 10**4)
                self.assertTrue(closed.contains(gcd_sum_lhs(w, alpha, 10**4)))


class EnergyTransferTests(SimpleTestCase):
    def test_exact_energy_below_transfer_bound(self):
        g = Weight.indicator(range(1, 11))
        report = energy_transfer_check(g, 5, 0.5, 2000, 3)
        self.assertEqual(report.measured, 22.0)
        self.assertLess(report.measured, report.bound_rhs)
        self.assertTrue(report.holds)
