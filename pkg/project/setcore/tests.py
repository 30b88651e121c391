import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase, override_settings

from common.choices import RepOperation
from common.exceptions import (
    ArithmeticOverflowError,
    BoundsError,
    CeilingExceededError,
    DataFileError,
    DegenerateDilationError,
    GeneratorSyntaxError,
)
from numtheory.primes import prime_table
from setcore.arithmetic import dilate, difference_set, k_fold_sumset, product_set, sumset
from setcore.generators import generate, parse_generator, render_generator
from setcore.intset import IntSet
from setcore.representation import rep_function


def random_set(rng, size, span=50):
    return IntSet(rng.integers(-span, span, size=size))


class IntSetTests(SimpleTestCase):
    def test_sorted_and_deduplicated(self):
        values = IntSet([3, 1, 3, -2])
        self.assertEqual(values.to_list(), [-2, 1, 3])
        self.assertEqual(len(values), 3)
        self.assertIn(1, values)
        self.assertNotIn(2, values)
        self.assertNotIn(2**70, values)

    def test_read_only(self):
        with self.assertRaises(ValueError):
            IntSet([1, 2]).elements[0] = 5

    def test_magnitude_limit(self):
        with self.assertRaises(ArithmeticOverflowError):
            IntSet([2**63])
        with self.assertRaises(ArithmeticOverflowError):
            IntSet([-(2**63)])

    def test_equality_and_hash(self):
        self.assertEqual(IntSet([1, 2]), IntSet([2, 1, 1]))
        self.assertEqual(hash(IntSet([1, 2])), hash(IntSet([2, 1])))


class GeneratorTests(SimpleTestCase):
    def test_parse(self):
        spec = parse_generator("ap:0,3,4")
        self.assertEqual((spec.kind, spec.params), ("ap", (0, 3, 4)))
        spec = parse_generator("grid:2,3,16")
        self.assertEqual((spec.kind, spec.params), ("grid", (2, 3, 16)))
        self.assertEqual(parse_generator("file:/tmp/x.txt").path, "/tmp/x.txt")

    def test_parse_errors(self):
        for text in ("ap:0,3", "ap:0,x,3", "nope:1", "interval", "ap:0,1,0", "grid:1,4"):
            with self.subTest(text=text):
                with self.assertRaises(GeneratorSyntaxError):
                    parse_generator(text)

    def test_error_points_at_field(self):
        with self.assertRaises(GeneratorSyntaxError) as caught:
            parse_generator("ap:0,x,3")
        self.assertEqual(caught.exception.position, 5)

    def test_generate(self):
        self.assertEqual(generate(parse_generator("ap:0,3,4")).to_list(), [0, 3, 6, 9])
        self.assertEqual(generate(parse_generator("grid:2,3,2")).to_list(), [1, 2, 3, 6])
        self.assertEqual(generate(parse_generator("pow:3,4")).to_list(), [1, 8, 27, 64])
        self.assertEqual(generate(parse_generator("geo:1,2,4")).to_list(), [1, 2, 4, 8])
        self.assertEqual(generate(parse_generator("interval:5")).to_list(), [1, 2, 3, 4, 5])
        self.assertEqual(
            generate(parse_generator("smooth:3,20")).to_list(),
            [1, 2, 3, 4, 6, 8, 9, 12, 16, 18],
        )
        self.assertEqual(generate(parse_generator("smooth:200000000,30")).to_list(), list(range(1, 31)))
        self.assertEqual(generate(parse_generator("smooth:7,1")).to_list(), [1])
        self.assertEqual(len(generate(parse_generator("grid:2,3,16"))), 256)

    def test_round_trip(self):
        for text in ("ap:-5,3,7", "geo:3,-2,5", "grid:2,5,7,3", "interval:9", "smooth:5,100", "pow:2,6"):
            with self.subTest(text=text):
                spec = parse_generator(text)
                self.assertEqual(render_generator(spec), text)
                self.assertEqual(generate(parse_generator(render_generator(spec))), generate(spec))

    def test_ceilings(self):
        with override_settings(SET_SIZE_CEILING=10):
            with self.assertRaises(CeilingExceededError):
                generate(parse_generator("interval:11"))
        with self.assertRaises(ArithmeticOverflowError):
            generate(parse_generator("geo:1,2,64"))
        with self.assertRaises(ArithmeticOverflowError):
            generate(parse_generator("ap:0,4611686018427387904,3"))

    def test_set_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "set.txt"
            path.write_text("# comment\n5\n-1\n5\n\n3\n", encoding="utf-8")
            self.assertEqual(generate(parse_generator(f"file:{path}")).to_list(), [-1, 3, 5])
            path.write_text("1\ntwo\n", encoding="utf-8")
            with self.assertRaises(DataFileError):
                generate(parse_generator(f"file:{path}"))
            with self.assertRaises(DataFileError) as caught:
                generate(parse_generator(f"file:{path}.missing"))
            self.assertEqual(caught.exception.exit_code, 4)
            path.write_bytes(b"1\n2\n\xff\xfe\n")
            with self.assertRaises(DataFileError):
                generate(parse_generator(f"file:{path}"))


class SetArithmeticTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(sumset(IntSet([0, 1]), IntSet([0, 1])).to_list(), [0, 1, 2])
        self.assertEqual(product_set(IntSet([2, 3]), IntSet([3, 4])).to_list(), [6, 8, 9, 12])
        self.assertEqual(difference_set(IntSet([1, 2, 3]), IntSet([1, 2, 3])).to_list(), [-2, -1, 0, 1, 2])

    def test_overflow_names_pair(self):
        big = IntSet([2**40])
        with self.assertRaises(ArithmeticOverflowError) as caught:
            product_set(big, big)
        self.assertEqual(caught.exception.pair, (2**40, 2**40))

    def test_dilate(self):
        self.assertEqual(dilate(IntSet([1, 2, 3]), 2).to_list(), [2, 4, 6])
        self.assertEqual(dilate(IntSet([2, 3, 5]), -1).to_list(), [-5, -3, -2])
        primes = prime_table(10).as_intset()
        self.assertEqual(dilate(primes, 7).to_list(), [14, 21, 35, 49])
        with self.assertRaises(DegenerateDilationError):
            dilate(primes, 0)

    def test_sumset_size_and_dilation_bijection(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            a, b = random_set(rng, rng.integers(1, 20)), random_set(rng, rng.integers(1, 20))
            self.assertGreaterEqual(len(sumset(a, b)), max(len(a), len(b)))
            self.assertEqual(len(sumset(a, IntSet([7]))), len(a))
            self.assertEqual(len(dilate(a, -3)), len(a))

    def test_k_fold_sumset(self):
        interval = generate(parse_generator("interval:4"))
        self.assertEqual(k_fold_sumset(interval, 2).to_list(), list(range(2, 9)))
        self.assertEqual(k_fold_sumset(interval, 1, 1).to_list(), list(range(-3, 4)))
        self.assertEqual(k_fold_sumset(interval, 0, 1).to_list(), [-4, -3, -2, -1])
        with self.assertRaises(BoundsError):
            k_fold_sumset(interval, 0, 0)


class RepFunctionTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(rep_function(IntSet([1, 2]), IntSet([1, 2]), RepOperation.SUM).as_dict(), {2: 1, 3: 2, 4: 1})
        self.assertEqual(
            rep_function(IntSet([1, 2, 4]), IntSet([1]), RepOperation.PRODUCT).as_dict(),
            {1: 1, 2: 1, 4: 1},
        )
        differences = rep_function(IntSet([1, 2, 3]), IntSet([1, 2, 3]), RepOperation.DIFFERENCE)
        self.assertEqual(differences[0], 3)
        self.assertEqual(differences[10], 0)

    def test_mass_conservation(self):
        rng = np.random.default_rng(5)
        for _ in range(60):
            a, b = random_set(rng, rng.integers(1, 30)), random_set(rng, rng.integers(1, 30))
            for op in RepOperation:
                table = rep_function(a, b, op)
                self.assertEqual(table.mass, len(a) * len(b))
                self.assertTrue((table.counts >= 1).all())

    @override_settings(ENERGY_PARTITION_SIZE=7)
    def test_chunked_tables_merge(self):
        a = generate(parse_generator("interval:20"))
        self.assertEqual(rep_function(a, a, RepOperation.SUM)[21], 20)

    @override_settings(PAIR_CEILING=10)
    def test_ceiling_suggests_streaming(self):
        a = generate(parse_generator("interval:4"))
        with self.assertRaises(CeilingExceededError) as caught:
            rep_function(a, a, RepOperation.SUM)
        self.assertIn("streamed energy", caught.exception.message)
