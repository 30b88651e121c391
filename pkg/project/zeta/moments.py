"""Monte Carlo and exact moments ``E|expr|^(2l)`` of random series."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from django.conf import settings

from common.choices import Flag
from common.exceptions import BoundsError, DomainError, NumericalError
from common.helpers import finite_or_none
from numtheory.primes import prime_table, primes_in
from setcore.intset import IntSet
from zeta.phases import BLOCK, check_seed, require_primes, prime_support, sample_ensemble
from zeta.series import euler_batch, euler_primes, fourier_batch, zeta_batch, zeta_primes

logger = logging.getLogger(__name__)

MIN_SAMPLES = 100
# angle table cells per chunk when an expression keeps one row per term
CHUNK_CELLS = 1 << 24


def _union(*sets):
    return IntSet(np.concatenate([s.elements for s in sets])) if sets else IntSet()


@dataclass(frozen=True)
class SampledExpression:
    """A random quantity evaluated column-wise on phase batches."""

    name: str
    primes: IntSet
    evaluate: Callable = field(repr=False, compare=False)
    width: int = 1
    flags: tuple = ()


def constant_expression():
    return SampledExpression(
        name="1",
        primes=IntSet(),
        evaluate=lambda primes, angles: np.ones(angles.shape[1], dtype=np.complex128),
    )


def zeta_expression(alpha, n_max=None):
    if n_max is None:
        n_max = settings.ZETA_TRUNCATION
    if n_max < 1:
        raise DomainError("n_max must be positive", n_max=n_max)
    return SampledExpression(
        name=f"zeta_X({alpha}) n<={n_max}",
        primes=zeta_primes(n_max),
        evaluate=lambda primes, angles: zeta_batch(primes, angles, alpha, n_max),
        width=n_max + 1,
        flags=(Flag.UNCONTROLLED_TRUNCATION,),
    )


def euler_expression(alpha, z):
    return SampledExpression(
        name=f"Z_X({alpha}) z={z}",
        primes=euler_primes(z),
        evaluate=lambda primes, angles: euler_batch(primes, angles, alpha, z),
    )


def fourier_expression(w):
    w.require_positive_support()
    return SampledExpression(
        name=f"Fw |supp w|={len(w)}",
        primes=prime_support(w.support.tolist()),
        evaluate=lambda primes, angles: fourier_batch(primes, angles, w),
    )


def product_expression(*parts):
    def evaluate(primes, angles):
        total = parts[0].evaluate(primes, angles)
        for part in parts[1:]:
            total = total * part.evaluate(primes, angles)
        return total

    return SampledExpression(
        name=" * ".join(part.name for part in parts),
        primes=_union(*(part.primes for part in parts)),
        evaluate=evaluate,
        width=max(part.width for part in parts),
        flags=tuple(dict.fromkeys(flag for part in parts for flag in part.flags)),
    )


def fourier_zeta_expression(w, alpha, n_max=None):
    return product_expression(fourier_expression(w), zeta_expression(alpha, n_max))


def fourier_euler_expression(w, alpha, z):
    return product_expression(fourier_expression(w), euler_expression(alpha, z))


@dataclass(frozen=True)
class MomentEstimate:
    mean: float
    std_error: float
    samples: int
    target: str
    flags: tuple = ()

    def to_dict(self):
        return {
            "mean": finite_or_none(self.mean),
            "std_error": finite_or_none(self.std_error),
            "samples": self.samples,
            "target": self.target,
            "flags": [str(f) for f in self.flags],
        }


def _chunk_size(expr):
    size = min(settings.MC_CHUNK_SIZE, max(BLOCK, CHUNK_CELLS // expr.width))
    return max(BLOCK, size - size % BLOCK)


def _chunk_powers(expr, l, seed, start, size):
    ensemble = sample_ensemble(expr.primes, seed, size, start=start, verified=True)
    powers = np.abs(expr.evaluate(expr.primes, ensemble.angles)) ** (2 * l)
    bad = np.flatnonzero(~np.isfinite(powers))
    if bad.size:
        index = start + int(bad[0])
        raise NumericalError(f"|{expr.name}|^{2 * l} is not finite", sample_index=index)
    return powers


def moment_samples(expr, l, samples, seed, workers=None):
    """The ``samples`` values ``|expr|^(2l)`` in sample order."""
    check_seed(seed)
    require_primes(expr.primes)
    chunk = _chunk_size(expr)
    starts = list(range(0, samples, chunk))
    if workers is None:
        workers = settings.ENERGY_WORKERS

    def run(start):
        return _chunk_powers(expr, l, seed, start, min(chunk, samples - start))

    if workers <= 1 or len(starts) == 1:
        parts = [run(start) for start in starts]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, starts))
    return np.concatenate(parts)


def mc_moment(expr, l, samples, seed, workers=None):
    """Sample mean of ``|expr|^(2l)`` with its standard error."""
    if l < 1:
        raise BoundsError("l must be a positive integer", l=l)
    if samples < MIN_SAMPLES:
        raise DomainError(f"at least {MIN_SAMPLES} samples are required", samples=samples)
    values = moment_samples(expr, l, samples, seed, workers=workers).tolist()
    mean = math.fsum(values) / samples
    variance = math.fsum((v - mean) ** 2 for v in values) / (samples - 1)
    estimate = MomentEstimate(
        mean=mean,
        std_error=math.sqrt(variance / samples),
        samples=samples,
        target=f"E|{expr.name}|^{2 * l}",
        flags=expr.flags,
    )
    logger.debug(f"{estimate.target} = {estimate.mean:.6g} +- {estimate.std_error:.2g} ({samples} samples)")
    return estimate


@dataclass(frozen=True)
class ExactMoment:
    value: float
    bound: float | None
    exponent: float
    hypothesis_holds: bool
    primes: int
    flags: tuple = ()

    def to_dict(self):
        return {
            "value": finite_or_none(self.value),
            "bound": finite_or_none(self.bound),
            "exponent": self.exponent,
            "hypothesis_holds": self.hypothesis_holds,
            "primes": self.primes,
            "flags": [str(f) for f in self.flags],
        }


def prime_moment_factor(p, alpha, l):
    """``E|1 + X_p p**-alpha|^(2l) = sum_n C(l, n)**2 p**(-2 alpha n)``."""
    return math.fsum(math.comb(l, n) ** 2 * p ** (-2 * alpha * n) for n in range(l + 1))


def exact_Z_moment(z, alpha, l, table=None):
    """``E|Z_X(alpha)|^(2l)`` as a product of independent per-prime factors.

    Also returns ``exp(2 l**2 sum p**(-2 alpha))``, which bounds the moment
    when ``l <= z**alpha``; outside that range the bound is withheld.
    """
    if l < 1:
        raise BoundsError("l must be a positive integer", l=l)
    if alpha <= 0:
        raise DomainError("alpha must be positive", alpha=alpha)
    lo, hi = max(z, 2), 2 * z
    if hi <= lo:
        primes = IntSet()
    else:
        primes = primes_in(lo, hi, table if table is not None and table.limit >= hi - 1 else prime_table(hi))
    value = math.prod(prime_moment_factor(p, alpha, l) for p in primes)
    exponent = 2 * l * l * math.fsum(p ** (-2 * alpha) for p in primes)
    holds = l <= z**alpha
    flags = ()
    if not holds:
        flags = (Flag.HYPOTHESIS_VIOLATED,)
        logger.warning(f"l={l} exceeds z**alpha={z**alpha:.4g}; moment bound not applicable")
    return ExactMoment(
        value=value,
        bound=(math.exp(exponent) if exponent < 700 else math.inf) if holds else None,
        exponent=exponent,
        hypothesis_holds=holds,
        primes=len(primes),
        flags=flags,
    )
