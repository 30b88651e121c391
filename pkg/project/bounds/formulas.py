"""Literal right-hand sides at caller-supplied constants.

Logarithms are base 2 throughout; ``exp`` is the natural exponential. Every
suppressed absolute constant is an explicit keyword defaulting to 1.
"""

import logging
import math
from typing import NamedTuple

from django.conf import settings

from common.exceptions import DomainError
from numtheory.primes import prime_table

logger = logging.getLogger(__name__)

log2 = math.log2


class WeightNorms(NamedTuple):
    l1: float
    l2: float
    t_next: float  # T_{s+1}(w)


class FlaggedValue(NamedTuple):
    value: float
    flags: dict


class RadziwillBound(NamedTuple):
    t_form: float
    l1_form: float
    flags: dict


def _require(condition, message, **detail):
    if not condition:
        raise DomainError(message, **detail)


def _exp(x):
    return math.exp(x) if x < 700 else math.inf


def _norm_log(norms, s):
    """``log(T_{s+1} |w|_2^(-2(s+1)))``, with a flag when the argument is < 1."""
    _require(norms.l2 > 0 and norms.t_next > 0, "weight norms must be positive", norms=tuple(norms))
    value = log2(norms.t_next) - 2 * (s + 1) * log2(norms.l2)
    consistent = value >= -1e-9
    if not consistent:
        logger.warning(f"T_{s + 1}(w) < |w|_2^{2 * (s + 1)}: the weight norms are inconsistent")
    return max(value, 0.0), consistent


def radziwill_rhs(n, norms, s=1, c=1.0):
    """Both forms of the bound for ``E(P, w)`` over primes up to ``n``."""
    _require(n >= 3, "N must be at least 3 so that log log N is defined", n=n)
    _require(s >= 1, "s must be a positive integer", s=s)
    loglog = log2(log2(n))
    inner, consistent = _norm_log(norms, s)
    base = n * norms.l2**2
    t_form = base * _exp(c * math.sqrt(inner * loglog / s) + 2 * loglog)
    ratio = log2(norms.l1 / norms.l2) if norms.l1 > 0 else 0.0
    l1_consistent = ratio >= -1e-9
    l1_form = base * _exp(c * math.sqrt(max(ratio, 0.0) * loglog) + 2 * loglog)
    return RadziwillBound(
        t_form=t_form,
        l1_form=l1_form,
        flags={"norms_consistent": consistent and l1_consistent},
    )


def _cond_l(inner, s, z):
    return inner <= s * z / log2(z)


def pz_rhs(z, norms, s=1, alpha=1.0, c=1.0):
    """``z^(2 alpha) |w|_2^2 exp(C z^(1/2 - alpha) sqrt(log(...) / (s log z)))``."""
    _require(z >= 3, "z must be at least 3", z=z)
    inner, consistent = _norm_log(norms, s)
    value = z ** (2 * alpha) * norms.l2**2 * _exp(c * z ** (0.5 - alpha) * math.sqrt(inner / (s * log2(z))))
    return FlaggedValue(value, {"cond_l": _cond_l(inner, s, z), "norms_consistent": consistent})


def pz_rhs_eps(z, norms, s=1, eps=1.0, c=1.0):
    _require(z >= 3, "z must be at least 3", z=z)
    _require(eps > 0, "eps must be positive", eps=eps)
    inner, consistent = _norm_log(norms, s)
    value = (eps * z) ** 2 * norms.l2**2 * _exp(c / eps * z**-0.5 * math.sqrt(inner / (s * log2(z))))
    return FlaggedValue(value, {"cond_l": _cond_l(inner, s, z), "norms_consistent": consistent})


class ApInGCheck(NamedTuple):
    holds: bool
    lhs: float
    rhs: float
    threshold: float


def ap_in_g_check(l, s_size, eps, prime_count=None, constant=None):
    """Size condition ``log|S| <= K eps l / log l`` and the energy threshold
    ``eps |P^(l)|^2 |S|``."""
    _require(l >= 3, "l must be at least 3", l=l)
    _require(s_size >= 1, "S must be nonempty", s_size=s_size)
    constant = settings.AP_IN_G_CONSTANT if constant is None else constant
    if prime_count is None:
        prime_count = len(prime_table(l))
    lhs = log2(s_size)
    rhs = constant * eps * l / log2(l)
    return ApInGCheck(
        holds=lhs <= rhs,
        lhs=lhs,
        rhs=rhs,
        threshold=eps * prime_count**2 * s_size,
    )


def tl_rhs(i_size, l, c=1.0):
    """``|I|^(2^(l+1) - c log l)``."""
    _require(i_size >= 2, "|I| must be at least 2", i_size=i_size)
    _require(l >= 1, "l must be positive", l=l)
    return float(i_size) ** (2 ** (l + 1) - c * log2(l))


def tl_exponent(l, c=1.0):
    return 2 ** (l + 1) - c * log2(l)


def t_as_rhs(a_size, alpha, c=1.0, s_size=1):
    """``|S| exp(C log^(1 - 3 alpha) |A|)``."""
    _require(a_size >= 2, "|A| must be at least 2", a_size=a_size)
    return s_size * _exp(c * log2(a_size) ** (1 - 3 * alpha))


def t_as_witness_fraction(a_size, alpha, c=1.0):
    """``exp(-C log^(1 - 6 alpha) |A|)``: the guaranteed share of good shifts."""
    _require(a_size >= 2, "|A| must be at least 2", a_size=a_size)
    return math.exp(-c * log2(a_size) ** (1 - 6 * alpha))


def inc_rhs(i_size, b_size, c_size, delta=0.0):
    """``sqrt(|B||C|) |I| |B|^(-delta)``."""
    _require(min(i_size, b_size, c_size) >= 1, "sizes must be positive")
    return math.sqrt(b_size * c_size) * i_size * b_size**-delta


def c_alpha(alpha):
    """``alpha / (1 - alpha) + alpha / (2 alpha - 1)`` for ``1/2 < alpha < 1``."""
    _require(0.5 < alpha < 1, "C(alpha) needs 1/2 < alpha < 1", alpha=alpha)
    return alpha / (1 - alpha) + alpha / (2 * alpha - 1)


def e_f_rhs(i_size, b_size, delta=0.0):
    """``|I|^2 |B|^(1 - delta)``."""
    _require(i_size >= 1 and b_size >= 1, "sizes must be positive")
    return float(i_size) ** 2 * float(b_size) ** (1 - delta)


def product_growth_rhs(a_size, m, c=1.0):
    """``|A_1|^(c log m)``."""
    _require(a_size >= 1 and m >= 1, "sizes must be positive", a_size=a_size, m=m)
    return float(a_size) ** (c * log2(m))


def plunnecke_rhs(a_size, doubling_size, n, m=0):
    """``(|A + A| / |A|)^(n + m) |A|``."""
    _require(a_size >= 1, "A must be nonempty")
    return (doubling_size / a_size) ** (n + m) * a_size


def solymosi_ratio(energy, sumset_size, s_size):
    """``E(S) / (|S + S|^2 log |S|)``."""
    _require(s_size >= 2, "|S| must be at least 2", s_size=s_size)
    return energy / (sumset_size**2 * log2(s_size))


def lemma_moment_regimes(alpha, l):
    """The three stated growth rates of ``log E|zeta_X(alpha)|^(2l)``.

    Each entry is ``None`` outside the range of ``(alpha, l)`` it is stated for.
    """
    _require(l >= 1, "l must be a positive integer", l=l)
    _require(alpha > 0.5, "the moments are stated for alpha > 1/2", alpha=alpha)
    regimes = {"alpha_one": None, "intermediate": None, "general": l**2 * log2(1 / (2 * alpha - 1))}
    if alpha == 1 and l >= 3:
        regimes["alpha_one"] = l * log2(log2(l))
    if alpha < 1 and l >= 3:
        regimes["intermediate"] = c_alpha(alpha) * l ** (1 / alpha) / log2(l)
    return regimes


def energy_transfer_rhs(z, alpha, second_moment):
    """``4^alpha z^(2 alpha) E|Fg Z_X(alpha)|^2``."""
    _require(z >= 1, "z must be positive", z=z)
    return 4**alpha * z ** (2 * alpha) * second_moment
