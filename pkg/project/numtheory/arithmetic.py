import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from common.exceptions import (
    BoundsError,
    DivergenceError,
    IncompleteFactorizationError,
    UndefinedInputError,
)

ZETA_CHUNK = 1 << 20


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple  # ((prime, exponent), ...) with ascending primes

    def primes(self):
        return tuple(p for p, _ in self.factors)

    def product(self):
        return math.prod(p**e for p, e in self.factors)


class PartialZeta(NamedTuple):
    value: float
    tail_bound: float

    @property
    def upper(self):
        return self.value + self.tail_bound


def factorize(n, table):
    """Trial division against ``table``; every prime factor must be tabled."""
    if n < 1:
        raise BoundsError("only positive integers are factorized", n=n)
    factors = []
    remaining = n
    exhausted = True
    for p in table.primes.tolist():
        if p * p > remaining:
            exhausted = False
            break
        if remaining % p:
            continue
        exponent = 0
        while remaining % p == 0:
            remaining //= p
            exponent += 1
        factors.append((p, exponent))
    if remaining > 1:
        if exhausted or remaining > table.limit:
            raise IncompleteFactorizationError(
                f"{n} has a prime factor above the table limit {table.limit}",
                n=n,
                cofactor=remaining,
            )
        factors.append((remaining, 1))
    return Factorization(value=n, factors=tuple(factors))


def smallest_prime_factors(n_max):
    """``spf[n]`` for ``0 <= n <= n_max`` (``spf[0] = spf[1] = 0``)."""
    spf = np.zeros(n_max + 1, dtype=np.int64)
    for p in range(2, math.isqrt(n_max) + 1):
        if spf[p]:
            continue
        multiples = spf[p * p::p]
        multiples[multiples == 0] = p
    unmarked = np.flatnonzero(spf == 0)
    unmarked = unmarked[unmarked >= 2]
    spf[unmarked] = unmarked
    return spf


def gcd(a, b):
    if a == 0 and b == 0:
        raise UndefinedInputError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


def partial_zeta(alpha, n_max):
    """``sum_{t <= n_max} t**(-2 alpha)`` with a certified tail bound.

    The tail is bounded by ``n_max**(1 - 2 alpha) / (2 alpha - 1)``, so
    zeta(2 alpha) lies in ``[value, value + tail_bound]``.
    """
    exponent = 2 * alpha
    if exponent <= 1:
        raise DivergenceError("zeta(2 alpha) diverges for 2 alpha <= 1", alpha=alpha)
    if n_max < 1:
        raise BoundsError("n_max must be positive", n_max=n_max)
    partials = []
    for start in range(1, n_max + 1, ZETA_CHUNK):
        t = np.arange(start, min(start + ZETA_CHUNK, n_max + 1), dtype=np.float64)
        partials.extend((t ** -exponent).tolist())
    value = math.fsum(partials)
    tail_bound = n_max ** (1 - exponent) / (exponent - 1)
    return PartialZeta(value=value, tail_bound=tail_bound)
