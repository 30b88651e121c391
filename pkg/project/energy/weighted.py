"""Energies of real weights.

Sums over pairs are aggregated with ``np.unique``/``np.bincount`` and the final
reductions go through ``math.fsum``. Indicator weights therefore reproduce the
integer energies exactly while counts stay below 2**53.
"""

import logging
import math

import numpy as np

from common.choices import RepOperation
from common.exceptions import BoundsError, NumericalError
from common.helpers import check_pair_ceiling
from setcore.intset import IntSet
from setcore.pairs import UFUNCS, check_range, row_chunks

logger = logging.getLogger(__name__)


def _as_set(support):
    return IntSet.from_sorted_array(support)


def weighted_table(left_support, left_values, right_support, right_values, op):
    """``x -> sum_{a op b = x} f(a) g(b)`` as sorted (keys, totals) arrays."""
    if not left_support.size or not right_support.size:
        return np.array([], dtype=np.int64), np.array([], dtype=np.float64)
    check_pair_ceiling(left_support.size, right_support.size)
    check_range(_as_set(left_support), _as_set(right_support), op)
    ufunc = UFUNCS[op]
    keys, masses = [], []
    for rows in row_chunks(left_support.size, right_support.size):
        keys.append(ufunc.outer(left_support[rows], right_support).ravel())
        masses.append(np.multiply.outer(left_values[rows], right_values).ravel())
    merged, inverse = np.unique(np.concatenate(keys), return_inverse=True)
    totals = np.bincount(inverse.ravel(), weights=np.concatenate(masses), minlength=merged.size)
    return merged, totals


def _finite(value, what):
    if not math.isfinite(value):
        raise NumericalError(f"{what} is not finite", value=value)
    return value


def weighted_energy(f1, f2, f3, f4):
    """``sum_{x,y,z} f1(x) f2(y) f3(x+z) f4(y+z)``.

    Grouping by the shift ``z`` gives ``sum_z c13(z) c24(z)`` with
    ``c13(z) = sum_x f1(x) f3(x+z)``.
    """
    z13, c13 = weighted_table(f3.support, f3.values, f1.support, f1.values, RepOperation.DIFFERENCE)
    z24, c24 = weighted_table(f4.support, f4.values, f2.support, f2.values, RepOperation.DIFFERENCE)
    _, left, right = np.intersect1d(z13, z24, assume_unique=True, return_indices=True)
    value = math.fsum((c13[left] * c24[right]).tolist())
    return _finite(value, "weighted energy")


def weighted_common_energy(f, g, op=RepOperation.SUM):
    """``sum_x (sum_{a op b = x} f(a) g(b))**2``."""
    _, totals = weighted_table(f.support, f.values, g.support, g.values, op)
    return _finite(math.fsum((totals * totals).tolist()), f"weighted {op} energy")


def weighted_t_energy(w, k, op=RepOperation.SUM):
    """``T_k`` of a weight: squared mass of its k-fold sum (or product) table."""
    if k < 1:
        raise BoundsError("k must be positive", k=k)
    keys, totals = w.support, w.values
    for step in range(k - 1):
        keys, totals = weighted_table(keys, totals, w.support, w.values, op)
        logger.debug(f"weighted {op} table after {step + 2} factors: {keys.size} keys")
    return _finite(math.fsum((totals * totals).tolist()), f"weighted T_{k}")
