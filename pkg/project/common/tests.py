import math

from django.test import SimpleTestCase, override_settings

from common.exceptions import (
    ArithmeticOverflowError,
    CeilingExceededError,
    ConfigError,
    DataFileError,
    DomainError,
    GeneratorSyntaxError,
    NumericalError,
)
from common.helpers import check_pair_ceiling, finite_or_none


class ExceptionTests(SimpleTestCase):
    def test_exit_codes(self):
        self.assertEqual(DomainError("x").exit_code, 3)
        self.assertEqual(ConfigError("x").exit_code, 2)
        self.assertEqual(GeneratorSyntaxError("x", "ap:1", 3).exit_code, 2)
        self.assertEqual(DataFileError("x", "/tmp/a").exit_code, 4)

    def test_detail_is_kept(self):
        error = ArithmeticOverflowError("too wide", pair=(2**40, 2**40))
        self.assertEqual(error.detail["pair"], (2**40, 2**40))
        self.assertEqual(NumericalError("bad", sample_index=17).sample_index, 17)
        self.assertEqual(DataFileError("gone", "/tmp/a").path, "/tmp/a")

    def test_generator_error_points_at_position(self):
        error = GeneratorSyntaxError("expected an integer", "ap:0,x,3", 5)
        self.assertEqual(error.position, 5)
        self.assertIn("     ^", str(error))


class HelperTests(SimpleTestCase):
    @override_settings(PAIR_CEILING=100)
    def test_pair_ceiling(self):
        self.assertEqual(check_pair_ceiling(10, 10), 100)
        with self.assertRaises(CeilingExceededError):
            check_pair_ceiling(10, 11)

    def test_finite_or_none(self):
        self.assertIsNone(finite_or_none(math.inf))
        self.assertIsNone(finite_or_none(math.nan))
        self.assertEqual(finite_or_none(2.5), 2.5)
        self.assertEqual(finite_or_none("x"), "x")
