import math

import numpy as np
from django.test import SimpleTestCase, override_settings

from common.exceptions import (
    BoundsError,
    DivergenceError,
    IncompleteFactorizationError,
    UndefinedInputError,
)
from numtheory.arithmetic import factorize, gcd, partial_zeta, smallest_prime_factors
from numtheory.primes import SEGMENT_THRESHOLD, _segmented_sieve, _simple_sieve, prime_table, primes_in, sieve_primes


def trial_division_count(limit):
    return sum(1 for n in range(2, limit + 1) if all(n % d for d in range(2, math.isqrt(n) + 1)))


class SieveTests(SimpleTestCase):
    def test_small_limits(self):
        self.assertEqual(sieve_primes(10).primes.tolist(), [2, 3, 5, 7])
        self.assertEqual(sieve_primes(2).primes.tolist(), [2])

    def test_hundred(self):
        table = sieve_primes(100)
        self.assertEqual(len(table), 25)
        self.assertEqual(int(table.primes[-1]), 97)
        self.assertIn(97, table)
        self.assertNotIn(91, table)

    def test_limit_out_of_range(self):
        with self.assertRaises(BoundsError):
            sieve_primes(1)
        with override_settings(PRIME_SIEVE_CEILING=1000):
            with self.assertRaises(BoundsError):
                sieve_primes(1001)

    def test_segmented_matches_simple(self):
        limit = 3 * 10**5 + 7
        self.assertTrue(np.array_equal(_segmented_sieve(limit), _simple_sieve(limit)))

    def test_above_segment_threshold(self):
        table = sieve_primes(SEGMENT_THRESHOLD + 1000)
        self.assertEqual(int((table.primes <= SEGMENT_THRESHOLD).sum()), 78498)

    def test_counts_match_trial_division(self):
        for limit in (2, 3, 97, 1000, 10**4):
            table = prime_table(limit)
            self.assertEqual(len(primes_in(2, limit + 1, table)), trial_division_count(limit))


class PrimesInTests(SimpleTestCase):
    def test_ranges(self):
        table = prime_table(200)
        self.assertEqual(primes_in(3, 6, table).to_list(), [3, 5])
        self.assertEqual(len(primes_in(8, 10, table)), 0)
        self.assertEqual(
            primes_in(50, 100, table).to_list(),
            [53, 59, 61, 67, 71, 73, 79, 83, 89, 97],
        )

    def test_range_must_fit_table(self):
        table = prime_table(100)
        with self.assertRaises(BoundsError):
            primes_in(50, 102, table)
        with self.assertRaises(BoundsError):
            primes_in(1, 10, table)


class FactorizeTests(SimpleTestCase):
    def setUp(self):
        self.table = prime_table(1000)

    def test_examples(self):
        self.assertEqual(factorize(12, self.table).factors, ((2, 2), (3, 1)))
        self.assertEqual(factorize(1, self.table).factors, ())
        self.assertEqual(factorize(97, self.table).factors, ((97, 1),))

    def test_reconstructs_random_values(self):
        rng = np.random.default_rng(11)
        for n in rng.integers(1, 10**6, size=300).tolist():
            result = factorize(n, self.table)
            self.assertEqual(result.product(), n)
            self.assertEqual(list(result.primes()), sorted(set(result.primes())))

    def test_factor_beyond_table(self):
        with self.assertRaises(IncompleteFactorizationError):
            factorize(1009 * 1013, self.table)
        with self.assertRaises(IncompleteFactorizationError):
            factorize(1009, prime_table(100))

    def test_smallest_prime_factors(self):
        spf = smallest_prime_factors(100)
        self.assertEqual(spf[:2].tolist(), [0, 0])
        self.assertEqual(int(spf[91]), 7)
        self.assertEqual(int(spf[97]), 97)
        self.assertEqual(int(spf[64]), 2)


class GcdTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(gcd(12, 18), 6)
        self.assertEqual(gcd(7, 13), 1)
        self.assertEqual(gcd(-4, 6), 2)
        self.assertEqual(gcd(-5, 0), 5)

    def test_both_zero(self):
        with self.assertRaises(UndefinedInputError):
            gcd(0, 0)


class PartialZetaTests(SimpleTestCase):
    def test_small_truncations(self):
        self.assertEqual(partial_zeta(1, 2).value, 1.25)
        result = partial_zeta(0.6, 1)
        self.assertEqual(result.value, 1.0)
        self.assertAlmostEqual(result.tail_bound, 5.0)

    def test_zeta_two(self):
        result = partial_zeta(1, 10**6)
        self.assertLessEqual(result.value, math.pi**2 / 6)
        self.assertLessEqual(math.pi**2 / 6, result.upper)
        self.assertLess(abs(result.value - math.pi**2 / 6), 1e-6 + 1e-12)

    def test_monotone_in_truncation(self):
        previous = partial_zeta(0.75, 10)
        for n_max in (100, 1000, 10**4):
            current = partial_zeta(0.75, n_max)
            self.assertGreater(current.value, previous.value)
            self.assertLess(current.tail_bound, previous.tail_bound)
            previous = current

    def test_divergent(self):
        with self.assertRaises(DivergenceError):
            partial_zeta(0.5, 10)
