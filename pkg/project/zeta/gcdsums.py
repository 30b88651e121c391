"""GCD sums and the second moment of ``Fw * zeta_X``.

For ``2 alpha > 1``::

    E|Fw(X) zeta_X(alpha)|^2
        = sum_{n1 m1 = n2 m2} w(m1) w(m2) / (n1 n2)^alpha
        = zeta(2 alpha) sum_{m1, m2} w(m1) w(m2) gcd(m1, m2)^(2 alpha) / (m1 m2)^alpha
"""

import logging
import math
from typing import NamedTuple

import numpy as np
from django.conf import settings

from bounds.formulas import energy_transfer_rhs
from bounds.reports import BoundReport
from common.choices import RepOperation
from common.exceptions import DivergenceError
from energy.weighted import weighted_common_energy
from energy.weights import Weight
from numtheory.arithmetic import partial_zeta
from zeta.moments import fourier_euler_expression, mc_moment
from zeta.series import euler_primes

logger = logging.getLogger(__name__)


class GcdSum(NamedTuple):
    value: float
    interval_width: float
    double_sum: float
    zeta_value: float

    @property
    def interval(self):
        return self.value - self.interval_width, self.value + self.interval_width

    def contains(self, x):
        low, high = self.interval
        return low <= x <= high


def _check_alpha(alpha):
    if 2 * alpha <= 1:
        raise DivergenceError("gcd sums need 2 alpha > 1", alpha=alpha)


def gcd_double_sum(w, alpha):
    """``sum w(m1) w(m2) (gcd(m1, m2)^2 / (m1 m2))^alpha`` over the support."""
    w.require_positive_support()
    m = w.support
    ratio = np.gcd.outer(m, m).astype(np.float64) ** 2 / np.multiply.outer(m, m).astype(np.float64)
    terms = np.multiply.outer(w.values, w.values) * ratio**alpha
    return math.fsum(terms.ravel().tolist())


def gcd_sum(w, alpha, zeta_trunc=None):
    """The closed form, with ``zeta(2 alpha)`` truncated at ``zeta_trunc``.

    The certified tail of the truncated zeta value times the double sum is
    returned as ``interval_width``.
    """
    _check_alpha(alpha)
    if zeta_trunc is None:
        zeta_trunc = settings.GCD_ZETA_TRUNCATION
    double_sum = gcd_double_sum(w, alpha)
    zeta = partial_zeta(alpha, zeta_trunc)
    return GcdSum(
        value=zeta.value * double_sum,
        interval_width=zeta.tail_bound * double_sum,
        double_sum=double_sum,
        zeta_value=zeta.value,
    )


def gcd_sum_lhs(w, alpha, t_max):
    """Direct enumeration of ``n1 m1 = n2 m2`` with ``n1, n2`` built from ``t <= t_max``.

    Writing ``g = gcd(m1, m2)`` and ``m_i = g u_i``, the solutions are
    ``n1 = t u2`` and ``n2 = t u1``.
    """
    _check_alpha(alpha)
    w.require_positive_support()
    t = np.arange(1, t_max + 1, dtype=np.float64)
    partials = []
    for m1, w1 in w.items():
        for m2, w2 in w.items():
            g = math.gcd(m1, m2)
            n1 = t * (m2 // g)
            n2 = t * (m1 // g)
            partials.append(w1 * w2 * float(np.sum((n1 * n2) ** -alpha)))
    return math.fsum(partials)


def energy_transfer_check(g, z, alpha, samples, seed):
    """Exact ``E(g, P_z)`` against ``4^alpha z^(2 alpha) E|Fg Z_X(alpha)|^2``."""
    primes = euler_primes(z)
    measured = weighted_common_energy(g, Weight.indicator(primes), RepOperation.PRODUCT)
    moment = mc_moment(fourier_euler_expression(g, alpha, z), 1, samples, seed)
    rhs = energy_transfer_rhs(z, alpha, moment.mean)
    logger.info(f"energy transfer at z={z}: E={measured:.6g}, rhs={rhs:.6g}")
    return BoundReport(
        name="energy_transfer",
        measured=measured,
        bound_rhs=rhs,
        constants={
            "z": z,
            "alpha": alpha,
            "second_moment": moment.mean,
            "std_error": moment.std_error,
            "rhs_std_error": energy_transfer_rhs(z, alpha, moment.std_error),
        },
        hypothesis_flags={"primes_in_range": len(primes) > 0},
    )
