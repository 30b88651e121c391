"""Prime sieving.

Below ``SEGMENT_THRESHOLD`` a plain Eratosthenes sieve over a boolean array is
used; above it an odd-only segmented sieve keeps memory at
O(sqrt(limit) + segment).
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from django.conf import settings

from common.exceptions import BoundsError
from setcore.intset import IntSet

logger = logging.getLogger(__name__)

SEGMENT_THRESHOLD = 10**6
SEGMENT_ODD_COUNT = 1 << 20


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: np.ndarray = field(repr=False, compare=False)

    def __post_init__(self):
        self.primes.setflags(write=False)

    def __len__(self):
        return int(self.primes.size)

    def __contains__(self, value):
        if value < 2 or value > self.limit:
            return False
        index = np.searchsorted(self.primes, value)
        return bool(index < self.primes.size and self.primes[index] == value)

    def as_intset(self):
        return IntSet.from_sorted_array(self.primes)


def _simple_sieve(limit):
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p:limit + 1:p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def _segmented_sieve(limit):
    base = _simple_sieve(math.isqrt(limit) + 1)
    chunks = [np.array([2], dtype=np.int64)]
    span = 2 * SEGMENT_ODD_COUNT
    low = 3
    while low <= limit:
        high = min(low + span, limit + 1)  # exclusive
        odd_count = (high - low + 1) // 2
        mask = np.ones(odd_count, dtype=bool)
        for p in base[1:].tolist():
            square = p * p
            if square >= high:
                break
            start = max(square, ((low + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            if start >= high:
                continue
            mask[(start - low) // 2::p] = False
        chunks.append(low + 2 * np.flatnonzero(mask).astype(np.int64))
        low = high if high % 2 else high + 1
    primes = np.concatenate(chunks)
    return primes[primes <= limit]


def sieve_primes(limit):
    """All primes ``<= limit``."""
    ceiling = settings.PRIME_SIEVE_CEILING
    if limit < 2 or limit > ceiling:
        raise BoundsError(f"sieve limit must lie in [2, {ceiling}]", limit=limit)
    if limit > SEGMENT_THRESHOLD:
        logger.debug(f"segmented sieve up to {limit}")
        primes = _segmented_sieve(limit)
    else:
        primes = _simple_sieve(limit)
    return PrimeTable(limit=limit, primes=primes)


@lru_cache(maxsize=16)
def prime_table(limit):
    """Shared, cached table; tables are immutable so sharing is safe."""
    return sieve_primes(max(limit, 2))


def primes_in(lo, hi, table):
    """Primes in the half-open range ``[lo, hi)``."""
    if not 2 <= lo < hi or hi > table.limit + 1:
        raise BoundsError(
            f"range [{lo}, {hi}) must satisfy 2 <= lo < hi <= {table.limit + 1}",
            lo=lo,
            hi=hi,
            limit=table.limit,
        )
    start, stop = np.searchsorted(table.primes, [lo, hi])
    return IntSet.from_sorted_array(table.primes[start:stop])
