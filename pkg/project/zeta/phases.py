"""Uniform random phases X_p on the unit circle.

The phase of prime ``p`` in sample ``i`` under seed ``s`` is the ``i``-th
double of a Philox4x64 stream keyed by ``(s << 64) | p``, scaled to
``[0, 2 pi)``. Philox emits four doubles per counter step, so a stream can be
entered at any sample index that is a multiple of four; every chunking of the
sample range therefore sees the same phases.
"""

import cmath
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from common.exceptions import BoundsError, CoverageError, DomainError
from numtheory.arithmetic import factorize
from numtheory.primes import prime_table
from setcore.intset import IntSet

logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi
SEED_LIMIT = 2**64
BLOCK = 4


def check_seed(seed):
    if not 0 <= seed < SEED_LIMIT:
        raise BoundsError("seed must be an unsigned 64-bit integer", seed=seed)


def phase_stream(seed, prime, start=0):
    """Generator positioned at sample ``start`` (a multiple of four)."""
    if start % BLOCK:
        raise BoundsError(f"streams can only be entered at multiples of {BLOCK}", start=start)
    bit_generator = np.random.Philox(key=(seed << 64) | prime, counter=start // BLOCK)
    return np.random.Generator(bit_generator)


def require_primes(primes):
    if not len(primes):
        return
    if primes.min() < 2:
        raise DomainError("phases are attached to primes only", offending=primes.min())
    table = prime_table(primes.max())
    composite = [p for p in primes if p not in table]
    if composite:
        raise DomainError("phases are attached to primes only", offending=composite[:5])


@dataclass(frozen=True)
class PhaseAssignment:
    """One realization of ``(X_p)`` over a finite set of primes."""

    primes: IntSet
    angles: np.ndarray = field(repr=False, compare=False)
    seed: int = 0
    index: int = 0

    def angle(self, p):
        position = self.position(p)
        return float(self.angles[position])

    def position(self, p):
        if p not in self.primes:
            raise CoverageError(f"prime {p} has no phase in this assignment", prime=p)
        return int(np.searchsorted(self.primes.elements, p))

    def phase(self, p):
        return cmath.rect(1.0, self.angle(p))

    def as_dict(self):
        return {p: self.phase(p) for p in self.primes}

    def column(self):
        """The angles as an ``(n_primes, 1)`` batch for the vectorized evaluators."""
        return self.angles.reshape(-1, 1)

    @classmethod
    def trivial(cls, primes):
        """Every phase equal to 1."""
        return cls(primes=primes, angles=np.zeros(len(primes)), seed=0, index=0)


@dataclass(frozen=True)
class PhaseEnsemble:
    """Samples ``start, ..., start + size - 1`` as an ``(n_primes, size)`` array."""

    primes: IntSet
    angles: np.ndarray = field(repr=False, compare=False)
    seed: int = 0
    start: int = 0

    @property
    def size(self):
        return int(self.angles.shape[1])

    def assignment(self, i):
        return PhaseAssignment(
            primes=self.primes,
            angles=self.angles[:, i].copy(),
            seed=self.seed,
            index=self.start + i,
        )


def sample_phases(primes, seed, index=0):
    check_seed(seed)
    require_primes(primes)
    start = index - index % BLOCK
    skip = index - start
    angles = np.array(
        [phase_stream(seed, p, start).random(skip + 1)[skip] for p in primes],
        dtype=np.float64,
    ) * TWO_PI
    return PhaseAssignment(primes=primes, angles=angles, seed=seed, index=index)


def sample_ensemble(primes, seed, size, start=0, verified=False):
    check_seed(seed)
    if not verified:
        require_primes(primes)
    angles = np.empty((len(primes), size), dtype=np.float64)
    for row, p in enumerate(primes):
        angles[row] = phase_stream(seed, p, start).random(size)
    angles *= TWO_PI
    return PhaseEnsemble(primes=primes, angles=angles, seed=seed, start=start)


def prime_support(numbers):
    """Sorted primes dividing any of the positive ``numbers``."""
    numbers = [int(n) for n in numbers]
    if not numbers:
        return IntSet()
    table = prime_table(max(numbers))
    return IntSet(p for n in numbers for p in factorize(n, table).primes())


def exponent_rows(numbers, primes):
    """For each ``n``, the pairs ``(row of p in primes, exponent)``."""
    rows = []
    for n in numbers:
        remaining, row = int(n), []
        for position, p in enumerate(primes):
            if p * p > remaining:
                break
            exponent = 0
            while remaining % p == 0:
                remaining //= p
                exponent += 1
            if exponent:
                row.append((position, exponent))
        if remaining > 1:
            if remaining not in primes:
                raise CoverageError(f"{n} has a prime factor without a phase", n=int(n), prime=remaining)
            row.append((int(np.searchsorted(primes.elements, remaining)), 1))
        rows.append(row)
    return rows


def extend_phase(assignment, n):
    """``X_n = prod X_p**e`` over the factorization of ``n``; ``X_1 = 1``."""
    if n < 1:
        raise DomainError("X_n is defined for positive n only", n=n)
    (row,) = exponent_rows([n], assignment.primes)
    angle = math.fsum(exponent * float(assignment.angles[position]) for position, exponent in row)
    return cmath.rect(1.0, math.fmod(angle, TWO_PI))
