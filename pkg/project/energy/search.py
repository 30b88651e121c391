"""Zero-based progressions inside a set and incidence counts f(i) + b = c."""

import logging

import numpy as np

from common.choices import RepOperation
from common.helpers import check_pair_ceiling
from energy.counting import additive_energy
from setcore.intset import IntSet
from setcore.pairs import check_range, pair_values, row_chunks

logger = logging.getLogger(__name__)


def longest_zero_based_ap(values):
    """Largest ``n`` with ``{d, 2d, ..., nd}`` inside the set, and its ``d``.

    Differences are tried by increasing ``|d|`` (positive first), so the
    witness is the smallest one reaching the maximum. Returns ``(0, 0)`` when
    the set has no nonzero element.
    """
    members = values.members()
    largest = values.max_abs()
    best, witness = 0, 0
    for d in sorted(values.without_zero(), key=lambda v: (abs(v), v)):
        if largest // abs(d) <= best:
            continue
        n = 1
        while (n + 1) * d in members:
            n += 1
        if n > best:
            best, witness = n, d
    logger.debug(f"longest zero-based progression: n={best}, d={witness}")
    return best, witness


def incidence_count(image, shifts, targets):
    """``|{(v, b, c) : v + b = c}|`` over ``image x shifts x targets``."""
    if not len(image) or not len(shifts) or not len(targets):
        return 0
    check_pair_ceiling(len(image), len(shifts))
    check_range(image, shifts, RepOperation.SUM)
    total = 0
    for rows in row_chunks(len(image), len(shifts)):
        sums = pair_values(image.elements[rows], shifts.elements, RepOperation.SUM)
        total += int(np.count_nonzero(np.isin(sums, targets.elements)))
    return total


def symmetric_hull(values):
    return IntSet(np.concatenate((values.elements, -values.elements)))


def incidence_cauchy_schwarz_ceiling(image, shifts, targets):
    """``|C|**2 E+(B) T_2(f(I) u -f(I))``, an upper bound for the fourth power
    of the incidence count."""
    hull = symmetric_hull(image)
    return len(targets) ** 2 * additive_energy(shifts, shifts).value * additive_energy(hull, hull).value
