import logging

import numpy as np

from common.choices import RepOperation
from common.exceptions import BoundsError, DegenerateDilationError
from common.helpers import check_pair_ceiling
from setcore.intset import IntSet
from setcore.pairs import check_range, pair_values, row_chunks

logger = logging.getLogger(__name__)


def pairwise_set(left, right, op):
    if not len(left) or not len(right):
        return IntSet()
    check_pair_ceiling(len(left), len(right))
    check_range(left, right, op)
    parts = [
        np.unique(pair_values(left.elements[rows], right.elements, op))
        for rows in row_chunks(len(left), len(right))
    ]
    return IntSet.from_sorted_array(np.unique(np.concatenate(parts)))


def sumset(left, right):
    return pairwise_set(left, right, RepOperation.SUM)


def difference_set(left, right):
    return pairwise_set(left, right, RepOperation.DIFFERENCE)


def product_set(left, right):
    return pairwise_set(left, right, RepOperation.PRODUCT)


def dilate(values, d):
    if d == 0:
        raise DegenerateDilationError("dilation by zero collapses the set")
    if not len(values):
        return IntSet()
    check_range(values, IntSet([d]), RepOperation.PRODUCT)
    return IntSet(values.elements * d)


def k_fold_sumset(values, n, m=0):
    """``nA - mA``; ``n + m`` must be positive."""
    if n < 0 or m < 0 or n + m == 0:
        raise BoundsError("need n, m >= 0 with n + m >= 1", n=n, m=m)
    result = None
    for _ in range(n):
        result = values if result is None else sumset(result, values)
    for _ in range(m):
        result = dilate(values, -1) if result is None else difference_set(result, values)
    logger.debug(f"{n}A-{m}A has {len(result)} elements for |A|={len(values)}")
    return result
