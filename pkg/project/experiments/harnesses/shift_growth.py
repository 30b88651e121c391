"""Growth of ``(A - a)S`` over the shifts ``a`` in ``A``."""

import itertools
import logging
import math

import numpy as np
from django.conf import settings

from bounds.formulas import t_as_rhs, t_as_witness_fraction
from bounds.reports import BoundReport
from experiments.choices import ExperimentKind
from experiments.harnesses.base import Harness, build_set
from setcore.arithmetic import product_set, sumset
from setcore.intset import IntSet

logger = logging.getLogger(__name__)


def choose_shifts(values, seed, samples=None):
    """Every element of ``A`` up to the exhaustive limit, else a seeded sample."""
    limit = settings.SHIFT_EXHAUSTIVE_LIMIT
    if samples is None:
        if len(values) <= limit:
            return values.to_list()
        samples = limit
    if samples >= len(values):
        return values.to_list()
    rng = np.random.Generator(np.random.Philox(seed))
    picked = rng.choice(len(values), size=samples, replace=False)
    logger.info(f"sampling {samples} of {len(values)} shifts")
    return values.elements[np.sort(picked)].tolist()


def shift_hypotheses(a_size, doubling, s_size, alpha, constant=1.0, s_doubling=None):
    """The doubling and size conditions on ``A`` and ``S``.

    Returns ``None`` for a condition whose right-hand side is undefined.
    """
    log_a = math.log2(a_size)
    flags = {"doubling": doubling <= constant * math.exp(log_a**alpha)}
    if a_size > 2 and math.log2(log_a) > 0:
        exponent = log_a ** (2 - 6 * alpha) / math.log2(log_a)
        ceiling = math.exp(exponent) if exponent < 700 else math.inf
        flags["set_size"] = s_size <= ceiling
        if s_doubling is not None:
            flags["set_doubling"] = s_doubling * math.log2(max(s_size, 2)) <= ceiling
    else:
        flags["set_size"] = None
        if s_doubling is not None:
            flags["set_doubling"] = None
    return flags


class ShiftGrowthHarness(Harness):
    kind = ExperimentKind.SHIFT_GROWTH
    stochastic = True

    def points(self, config):
        return [
            {"a_gen": a_gen, "s_gen": s_gen, "alpha": alpha}
            for a_gen, s_gen, alpha in itertools.product(config["a_gens"], config["s_gens"], config["alphas"])
        ]

    def measure(self, config, point):
        a_values = build_set(point["a_gen"])
        s_values = build_set(point["s_gen"])
        alpha = point["alpha"]
        c = self.constant(config, "t_as", 1.0)
        shifts = choose_shifts(a_values, config["seed"], config.get("shift_samples"))

        sizes = []
        for a in shifts:
            shifted = IntSet(a_values.elements - a)
            sizes.append(len(product_set(shifted, s_values)))
        s_size = len(s_values)
        ratios = [size / s_size for size in sizes]

        a_size = len(a_values)
        doubling = len(sumset(a_values, a_values)) / a_size
        s_doubling = len(sumset(s_values, s_values)) / s_size
        growth = t_as_rhs(a_size, alpha, c=c) if a_size >= 2 else None
        witnesses = sum(r >= growth for r in ratios) / len(ratios) if growth is not None else None
        flags = shift_hypotheses(
            a_size,
            doubling,
            s_size,
            alpha,
            constant=self.constant(config, "doubling", 1.0),
            s_doubling=s_doubling,
        )
        measured = {
            "a_size": a_size,
            "s_size": s_size,
            "shifts": len(shifts),
            "exhaustive": len(shifts) == a_size,
            "doubling": doubling,
            "s_doubling": s_doubling,
            "ratio_min": min(ratios),
            "ratio_max": max(ratios),
            "min_size": min(sizes),
            "min_nonzero_size": min(sizes) - 1,
            "fractions": {str(level): sum(r > level for r in ratios) / len(ratios) for level in config["growth_levels"]},
            "witness_fraction": witnesses,
        }
        bounds = []
        if growth is not None:
            bounds.append(
                BoundReport(
                    name="shifted_product_growth",
                    measured=max(ratios),
                    bound_rhs=growth,
                    constants={
                        "c": c,
                        "alpha": alpha,
                        "guaranteed_fraction": t_as_witness_fraction(a_size, alpha, c=c),
                    },
                    hypothesis_flags=flags,
                )
            )
        return measured, bounds
