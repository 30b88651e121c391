"""Pairwise combination of two sets, chunked by rows of the left operand."""

import numpy as np
from django.conf import settings

from common.choices import RepOperation
from common.exceptions import ArithmeticOverflowError
from common.helpers import INT63_LIMIT

UFUNCS = {
    RepOperation.SUM: np.add,
    RepOperation.DIFFERENCE: np.subtract,
    RepOperation.PRODUCT: np.multiply,
}


def combine(a, b, op):
    if op == RepOperation.SUM:
        return a + b
    if op == RepOperation.DIFFERENCE:
        return a - b
    return a * b


def extreme_pair(left, right, op):
    """The pair whose combination has the largest magnitude."""
    candidates = [
        (a, b)
        for a in {left.min(), left.max()}
        for b in {right.min(), right.max()}
    ]
    return max(candidates, key=lambda pair: abs(combine(pair[0], pair[1], op)))


def fits_int64(left, right, op):
    if not len(left) or not len(right):
        return True
    a, b = extreme_pair(left, right, op)
    return abs(combine(a, b, op)) < INT63_LIMIT


def check_range(left, right, op):
    if not fits_int64(left, right, op):
        a, b = extreme_pair(left, right, op)
        raise ArithmeticOverflowError(
            f"{op} of {a} and {b} leaves the 63-bit range",
            pair=(a, b),
        )


def row_chunks(left_size, right_size, target=None):
    """Slices of left rows holding about ``target`` pairs each."""
    target = target or settings.ENERGY_PARTITION_SIZE
    rows = max(1, target // max(right_size, 1))
    for start in range(0, left_size, rows):
        yield slice(start, min(start + rows, left_size))


def pair_values(left_rows, right, op):
    """Exact int64 combinations; the caller has checked the range."""
    return UFUNCS[op].outer(left_rows, right).ravel()


def pair_keys(left_rows, right, op):
    """Combinations reduced modulo 2**64; exact whenever the range fits."""
    return UFUNCS[op].outer(left_rows.view(np.uint64), right.view(np.uint64)).ravel()


def merge_counts(values, counts):
    """Aggregate (value, count) chunks into one sorted table."""
    if not values:
        return np.array([], dtype=np.int64), np.array([], dtype=np.int64)
    all_values = np.concatenate(values)
    all_counts = np.concatenate(counts)
    merged, inverse = np.unique(all_values, return_inverse=True)
    totals = np.zeros(merged.size, dtype=all_counts.dtype)
    np.add.at(totals, inverse.ravel(), all_counts)
    return merged, totals
