import math
import tempfile
from collections import Counter
from pathlib import Path
from unittest import mock

import numpy as np
from django.test import SimpleTestCase, override_settings

from common.choices import EnergyKind, Flag, RepOperation
from common.exceptions import (
    ArithmeticOverflowError,
    CeilingExceededError,
    DataFileError,
    DomainError,
)
from energy.counting import additive_energy, collision_count, multiplicative_energy, square_sum, t_energy
from energy.oracles import (
    oracle_energy,
    oracle_incidence,
    oracle_longest_ap,
    oracle_t_energy,
    oracle_weighted_energy,
)
from energy.search import incidence_cauchy_schwarz_ceiling, incidence_count, longest_zero_based_ap
from energy.weighted import weighted_common_energy, weighted_energy, weighted_t_energy
from energy.weights import Weight, read_weight_file, weight_from_set
from numtheory.primes import prime_table, primes_in
from setcore.arithmetic import dilate, k_fold_sumset, sumset
from setcore.generators import generate, parse_generator
from setcore.intset import IntSet
from setcore.pairs import combine, pair_keys, row_chunks
from setcore.representation import rep_function


def random_set(rng, max_size, span=40):
    return IntSet(rng.integers(-span, span, size=rng.integers(1, max_size + 1)))


def random_weight(rng, max_size, span=20):
    support = rng.integers(-span, span, size=rng.integers(1, max_size + 1))
    return Weight({int(n): float(w) for n, w in zip(support, rng.random(support.size) * 3)}, allow_zero=True)


class AdditiveEnergyTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(additive_energy(IntSet([1, 2]), IntSet([1, 2])).value, 6)
        three = generate(parse_generator("interval:3"))
        self.assertEqual(additive_energy(three, three).value, 19)
        self.assertEqual(additive_energy(IntSet([5]), IntSet([1, 4, 9])).value, 3)

    def test_interval_closed_form(self):
        for n in (1, 2, 10, 64, 200):
            interval = generate(parse_generator(f"interval:{n}"))
            self.assertEqual(additive_energy(interval, interval).value, n * (2 * n * n + 1) // 3)

    def test_value_records_diagonal_floor(self):
        value = additive_energy(IntSet([1, 2, 3]), IntSet([0, 10]))
        self.assertEqual(value.kind, EnergyKind.ADDITIVE)
        self.assertEqual(value.diagonal_floor, 6)
        self.assertEqual(value.to_dict()["sizes"], [3, 2])

    def test_empty_input(self):
        self.assertEqual(additive_energy(IntSet(), IntSet([1])).value, 0)

    def test_trivial_bounds(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            a, b = random_set(rng, 30), random_set(rng, 30)
            energy = additive_energy(a, b).value
            self.assertLessEqual(len(a) * len(b), energy)
            self.assertLessEqual(energy, len(a) * len(b) * min(len(a), len(b)))

    def test_sum_and_difference_square_sums_agree(self):
        rng = np.random.default_rng(19)
        for _ in range(500):
            a = random_set(rng, 64, span=200)
            sums = rep_function(a, a, RepOperation.SUM).sum_of_squares()
            differences = rep_function(a, a, RepOperation.DIFFERENCE).sum_of_squares()
            self.assertEqual(sums, differences)
            self.assertEqual(sums, additive_energy(a, a).value)

    @override_settings(PAIR_CEILING=100)
    def test_pair_ceiling(self):
        interval = generate(parse_generator("interval:11"))
        with self.assertRaises(CeilingExceededError):
            additive_energy(interval, interval)


class MultiplicativeEnergyTests(SimpleTestCase):
    def test_examples(self):
        powers = IntSet([1, 2, 4])
        self.assertEqual(multiplicative_energy(powers, powers).value, 19)
        self.assertEqual(multiplicative_energy(IntSet([1]), IntSet([3, 9])).value, 2)

    def test_primes_against_powers_of_two(self):
        primes = prime_table(20).as_intset()
        powers = generate(parse_generator("geo:1,2,10"))
        self.assertEqual(multiplicative_energy(primes, powers).value, 80)

    def test_zero_is_flagged(self):
        with self.assertLogs("energy.counting", level="WARNING"):
            value = multiplicative_energy(IntSet([0, 1, 2]), IntSet([1, 2]))
        self.assertEqual(value.flags, (Flag.ZERO_IN_PRODUCT,))
        self.assertEqual(value.value, oracle_energy(IntSet([0, 1, 2]), IntSet([1, 2]), RepOperation.PRODUCT))

    def test_dilation_invariance(self):
        table = prime_table(200)
        primes = primes_in(2, 201, table)
        interval = generate(parse_generator("interval:64"))
        reference = multiplicative_energy(primes, interval).value
        for d in (1, 7, -3):
            self.assertEqual(multiplicative_energy(dilate(primes, d), interval).value, reference)

    def test_wide_values_use_verified_keys(self):
        rng = np.random.default_rng(23)
        base = 2**40
        for _ in range(10):
            a = IntSet((base + rng.integers(0, 64, size=8)) * rng.integers(1, 4, size=8))
            b = IntSet(base + rng.integers(0, 64, size=8))
            self.assertEqual(multiplicative_energy(a, b).value, oracle_energy(a, b, RepOperation.PRODUCT))

    def test_partitions_and_threads_agree(self):
        rng = np.random.default_rng(29)
        a = IntSet(rng.integers(1, 2**47, size=300))
        b = IntSet(rng.integers(1, 2**47, size=300))
        a = IntSet(np.concatenate((a.elements, np.arange(1, 60))))
        b = IntSet(np.concatenate((b.elements, np.arange(1, 60))))
        reference = collision_count(a, b, RepOperation.PRODUCT, workers=1)
        with override_settings(ENERGY_PARTITION_SIZE=1000):
            self.assertEqual(collision_count(a, b, RepOperation.PRODUCT, workers=1), reference)
            self.assertEqual(collision_count(a, b, RepOperation.PRODUCT, workers=8), reference)
            self.assertEqual(
                collision_count(a, b, RepOperation.SUM, workers=4),
                rep_function(a, b, RepOperation.SUM).sum_of_squares(),
            )

    @override_settings(ENERGY_PARTITION_SIZE=2000)
    def test_each_row_chunk_is_generated_once(self):
        rng = np.random.default_rng(37)
        a = IntSet(rng.integers(1, 2**47, size=400))
        b = IntSet(np.concatenate((rng.integers(1, 2**47, size=200), np.arange(1, 50))))
        chunks = len(list(row_chunks(len(a), len(b))))
        for op in (RepOperation.PRODUCT, RepOperation.SUM):
            counts = Counter(combine(x, y, op) for x in a.elements.tolist() for y in b.elements.tolist())
            expected = sum(c * c for c in counts.values())
            for workers in (1, 4):
                with self.subTest(op=op, workers=workers):
                    with mock.patch("energy.counting.pair_keys", wraps=pair_keys) as generated:
                        value = collision_count(a, b, op, workers=workers)
                    self.assertEqual(generated.call_count, chunks)
                    self.assertEqual(value, expected)

    def test_solymosi_ratio_stays_small(self):
        rng = np.random.default_rng(31)
        structured = [
            generate(parse_generator(text))
            for text in ("interval:512", "geo:1,2,40", "grid:2,3,16", "pow:2,300", "ap:5,7,400")
        ]
        random_sets = [IntSet(rng.integers(1, 10**6, size=rng.integers(2, 512))) for _ in range(95)]
        for values in structured + random_sets:
            if len(values) < 2:
                continue
            energy = multiplicative_energy(values, values).value
            doubling = len(sumset(values, values))
            self.assertLessEqual(energy / (doubling**2 * math.log2(len(values))), 8)


class OracleEquivalenceTests(SimpleTestCase):
    def test_energies(self):
        rng = np.random.default_rng(2024)
        for _ in range(200):
            a, b = random_set(rng, 12), random_set(rng, 12)
            self.assertEqual(additive_energy(a, b).value, oracle_energy(a, b, RepOperation.SUM))
            self.assertEqual(multiplicative_energy(a, b).value, oracle_energy(a, b, RepOperation.PRODUCT))

    def test_t_energies(self):
        rng = np.random.default_rng(2025)
        for _ in range(200):
            a = random_set(rng, 12)
            for op in (RepOperation.SUM, RepOperation.PRODUCT):
                self.assertEqual(t_energy(a, 2, op).value, oracle_t_energy(a, 2, op))
            small = random_set(rng, 5)
            self.assertEqual(t_energy(small, 3).value, oracle_t_energy(small, 3))
            self.assertEqual(t_energy(small, 3, RepOperation.PRODUCT).value, oracle_t_energy(small, 3, RepOperation.PRODUCT))

    def test_weighted_and_incidence(self):
        rng = np.random.default_rng(2026)
        for _ in range(200):
            weights = [random_weight(rng, 12) for _ in range(4)]
            self.assertAlmostEqual(weighted_energy(*weights), oracle_weighted_energy(*weights), delta=1e-9)
            image, shifts, targets = random_set(rng, 12), random_set(rng, 12), random_set(rng, 12, span=80)
            self.assertEqual(incidence_count(image, shifts, targets), oracle_incidence(image, shifts, targets))

    def test_longest_ap(self):
        rng = np.random.default_rng(2027)
        for _ in range(200):
            values = random_set(rng, 12, span=12)
            self.assertEqual(longest_zero_based_ap(values), oracle_longest_ap(values))


class HigherEnergyTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(t_energy(IntSet([0, 1]), 2).value, 6)
        self.assertEqual(t_energy(generate(parse_generator("ap:0,1,10")), 1).value, 10)
        powers = IntSet([1, 2, 4, 8])
        self.assertEqual(t_energy(powers, 2, RepOperation.PRODUCT).value, 44)
        self.assertEqual(t_energy(powers, 2, RepOperation.PRODUCT).kind, EnergyKind.T_PRODUCT)

    def test_dense_and_sparse_paths_agree(self):
        cubes = generate(parse_generator("pow:3,20"))
        dense = t_energy(cubes, 3)
        with override_settings(DENSE_SPAN_CEILING=0):
            sparse = t_energy(cubes, 3)
        self.assertEqual(dense.value, sparse.value)
        self.assertEqual(dense.diagonal_floor, 20**3)

    def test_t2_is_energy(self):
        cubes = generate(parse_generator("pow:3,64"))
        self.assertEqual(t_energy(cubes, 2).value, additive_energy(cubes, cubes).value)
        self.assertLessEqual(t_energy(cubes, 2).value, 3 * 64**2)

    def test_overflowing_k_fold(self):
        with self.assertRaises(ArithmeticOverflowError):
            t_energy(IntSet([2**40, 2**40 + 1]), 2, RepOperation.PRODUCT)
        with self.assertRaises(CeilingExceededError):
            t_energy(generate(parse_generator("interval:2000")), 6)

    def test_square_sum_beyond_int64(self):
        counts = np.array([2**40, 2**40], dtype=np.int64)
        self.assertEqual(square_sum(counts), 2 * 2**80)


class WeightTests(SimpleTestCase):
    def test_norms(self):
        w = Weight({1: 3.0, 2: 4.0, 5: 0.0})
        self.assertEqual(len(w), 2)
        self.assertEqual(w.l1, 7.0)
        self.assertEqual(w.l2, 5.0)
        self.assertEqual(w[5], 0.0)
        self.assertEqual(w.scaled(2)[2], 8.0)

    def test_invalid_weights(self):
        with self.assertRaises(DomainError):
            Weight({0: 1.0})
        with self.assertRaises(DomainError):
            Weight({1: -1.0})
        with self.assertRaises(DomainError):
            Weight({1: float("nan")})
        with self.assertRaises(DomainError):
            Weight({-2: 1.0}).require_positive_support()

    def test_weight_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "w.tsv"
            path.write_text("# weights\n1\t1\n3\t0.5\n3\t0.25\n", encoding="utf-8")
            self.assertEqual(read_weight_file(path).as_dict(), {1: 1.0, 3: 0.75})
            path.write_text("0\t1\n", encoding="utf-8")
            with self.assertRaises(DataFileError):
                read_weight_file(path)
            path.write_text("1 2 3\n", encoding="utf-8")
            with self.assertRaises(DataFileError):
                read_weight_file(path)
            path.write_bytes(b"1\t\xff\n")
            with self.assertRaises(DataFileError) as caught:
                read_weight_file(path)
            self.assertEqual(caught.exception.exit_code, 4)
        with self.assertRaises(DataFileError):
            read_weight_file(Path(directory) / "gone.tsv")


class WeightedEnergyTests(SimpleTestCase):
    def test_delta_weights(self):
        zero = Weight.indicator([0])
        self.assertEqual(weighted_energy(zero, zero, zero, zero), 1.0)
        a = IntSet([1, 5, 6, 10])
        self.assertEqual(weighted_energy(weight_from_set(a), zero, weight_from_set(a), zero), float(len(a)))

    def test_indicators_reproduce_additive_energy(self):
        rng = np.random.default_rng(37)
        for _ in range(50):
            a = random_set(rng, 8)
            f = weight_from_set(a)
            expected = float(additive_energy(a, a).value)
            self.assertEqual(weighted_energy(f, f, f, f), expected)
            self.assertEqual(weighted_common_energy(f, f), expected)
            self.assertEqual(weighted_t_energy(f, 2), expected)

    def test_multiplicative_instances(self):
        powers = IntSet([1, 2, 4, 8])
        f = weight_from_set(powers)
        self.assertEqual(weighted_common_energy(f, f, RepOperation.PRODUCT), 44.0)
        self.assertEqual(weighted_t_energy(f, 2, RepOperation.PRODUCT), 44.0)
        self.assertEqual(weighted_t_energy(f, 1), 4.0)

    def test_holder(self):
        rng = np.random.default_rng(41)
        for _ in range(200):
            weights = [random_weight(rng, 16) for _ in range(4)]
            bound = math.prod(weighted_common_energy(w, w) for w in weights) ** 0.25
            self.assertLessEqual(weighted_energy(*weights), bound * (1 + 1e-9))


class PlunneckeTests(SimpleTestCase):
    def test_sumset_growth_bounded_by_doubling(self):
        rng = np.random.default_rng(43)
        for _ in range(500):
            a = random_set(rng, 32, span=rng.integers(4, 200))
            doubling = len(sumset(a, a)) / len(a)
            for n, m in ((1, 1), (2, 0), (2, 1), (3, 0), (2, 2), (3, 1), (4, 0), (1, 2), (1, 3)):
                bound = doubling ** (n + m) * len(a)
                self.assertLessEqual(len(k_fold_sumset(a, n, m)), bound * (1 + 1e-12))


class SearchTests(SimpleTestCase):
    def test_longest_zero_based_ap(self):
        self.assertEqual(longest_zero_based_ap(IntSet([2, 4, 6, 7])), (3, 2))
        self.assertEqual(longest_zero_based_ap(IntSet([1])), (1, 1))
        self.assertEqual(longest_zero_based_ap(generate(parse_generator("grid:2,3,16"))), (4, 1))
        self.assertEqual(longest_zero_based_ap(generate(parse_generator("geo:1,2,32"))), (2, 1))
        self.assertEqual(longest_zero_based_ap(IntSet()), (0, 0))
        self.assertEqual(longest_zero_based_ap(IntSet([0])), (0, 0))
        self.assertEqual(longest_zero_based_ap(IntSet([-3, -6, 3])), (2, -3))

    def test_incidence_count(self):
        squares = IntSet([1, 4])
        self.assertEqual(incidence_count(squares, IntSet([0, 1]), IntSet([1, 2, 4, 5])), 4)
        self.assertEqual(incidence_count(squares, IntSet([0, 1]), IntSet([100])), 0)
        cubes = generate(parse_generator("pow:3,10"))
        self.assertEqual(incidence_count(cubes, IntSet([0]), cubes), len(cubes))

    def test_cauchy_schwarz_ceiling(self):
        rng = np.random.default_rng(47)
        for _ in range(50):
            image, shifts, targets = random_set(rng, 12), random_set(rng, 12), random_set(rng, 20, span=80)
            sigma = incidence_count(image, shifts, targets)
            self.assertLessEqual(sigma**4, incidence_cauchy_schwarz_ceiling(image, shifts, targets))
