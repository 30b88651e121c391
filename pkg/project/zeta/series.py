"""Random Dirichlet series and Euler products.

Each evaluator works on an angle batch of shape ``(n_primes, samples)`` and
returns one complex value per column; the scalar forms evaluate a single
``PhaseAssignment`` through the same code path. Terms are accumulated in a
fixed order so a sample's value does not depend on the batch it is part of.
"""

import logging
from typing import NamedTuple

import numpy as np
from django.conf import settings

from common.choices import Flag
from common.exceptions import CoverageError, DomainError
from numtheory.arithmetic import smallest_prime_factors
from numtheory.primes import prime_table, primes_in
from setcore.intset import IntSet
from zeta.phases import TWO_PI, exponent_rows

logger = logging.getLogger(__name__)


class SeriesValue(NamedTuple):
    value: complex
    n_max: int
    flags: tuple = (Flag.UNCONTROLLED_TRUNCATION,)

    def __complex__(self):
        return self.value

    def __abs__(self):
        return abs(self.value)


def _rows_of(primes, wanted):
    """Row of each wanted prime in ``primes``; every one must be covered."""
    missing = [p for p in wanted if p not in primes]
    if missing:
        raise CoverageError(f"{len(missing)} prime(s) have no phase, first {missing[0]}", primes=missing[:5])
    return np.searchsorted(primes.elements, wanted.elements)


def zeta_primes(n_max):
    if n_max < 2:
        return IntSet()
    return prime_table(n_max).as_intset()


def euler_primes(z):
    lo, hi = max(z, 2), 2 * z
    if hi <= lo:
        return IntSet()
    return primes_in(lo, hi, prime_table(hi))


def zeta_batch(primes, angles, alpha, n_max):
    """``sum_{n <= n_max} X_n n**-alpha`` per column."""
    if alpha <= 0.5:
        raise DomainError("the random zeta series needs alpha > 1/2", alpha=alpha)
    if n_max < 1:
        raise DomainError("n_max must be positive", n_max=n_max)
    samples = angles.shape[1]
    spf = smallest_prime_factors(n_max)
    wanted = zeta_primes(n_max)
    rows = dict(zip(wanted.to_list(), _rows_of(primes, wanted).tolist()))
    table = np.zeros((n_max + 1, samples), dtype=np.float64)
    total = np.ones(samples, dtype=np.complex128)
    for n in range(2, n_max + 1):
        p = int(spf[n])
        if p == n:
            table[n] = angles[rows[p]]
        else:
            np.add(table[p], table[n // p], out=table[n])
            np.fmod(table[n], TWO_PI, out=table[n])
        total += n ** -alpha * np.exp(1j * table[n])
    return total


def euler_batch(primes, angles, alpha, z):
    """``prod_{z <= p < 2z} (1 + X_p p**-alpha)`` per column."""
    if alpha <= 0:
        raise DomainError("the restricted Euler product needs alpha > 0", alpha=alpha)
    wanted = euler_primes(z)
    total = np.ones(angles.shape[1], dtype=np.complex128)
    for p, row in zip(wanted.to_list(), _rows_of(primes, wanted).tolist()):
        total *= 1 + p ** -alpha * np.exp(1j * angles[row])
    return total


def fourier_batch(primes, angles, w):
    """``sum_n w(n) X_n`` per column."""
    w.require_positive_support()
    total = np.zeros(angles.shape[1], dtype=np.complex128)
    for (n, weight), row in zip(w.items(), exponent_rows(w.support.tolist(), primes)):
        angle = np.zeros(angles.shape[1], dtype=np.float64)
        for position, exponent in row:
            angle += exponent * angles[position]
        total += weight * np.exp(1j * np.fmod(angle, TWO_PI))
    return total


def truncated_zeta(assignment, alpha, n_max=None):
    if n_max is None:
        n_max = settings.ZETA_TRUNCATION
    value = zeta_batch(assignment.primes, assignment.column(), alpha, n_max)[0]
    logger.debug(f"zeta_X({alpha}) truncated at {n_max}: no tail bound for random phases")
    return SeriesValue(value=complex(value), n_max=n_max)


def restricted_euler(assignment, alpha, z):
    return complex(euler_batch(assignment.primes, assignment.column(), alpha, z)[0])


def fourier_w(assignment, w):
    return complex(fourier_batch(assignment.primes, assignment.column(), w)[0])
