"""Longest zero-based progression against the product-set doubling of S."""

import math

from bounds.reports import BoundReport
from common.exceptions import NumericalError
from energy.search import longest_zero_based_ap
from experiments.choices import ExperimentKind
from experiments.harnesses.base import Harness, build_set
from setcore.arithmetic import product_set


def reference_length(s_size):
    """``log|S| log log|S|``, undefined below ``|S| = 2``."""
    if s_size < 2:
        return None
    return math.log2(s_size) * math.log2(math.log2(s_size))


class ApSearchHarness(Harness):
    kind = ExperimentKind.AP_SEARCH

    def points(self, config):
        return [{"s_gen": s_gen} for s_gen in config["s_gens"]]

    def measure(self, config, point):
        values = build_set(point["s_gen"])
        length, step = longest_zero_based_ap(values)
        if length and length * abs(step) > values.max_abs():
            raise NumericalError(
                f"progression {step}, ..., {length * step} escapes the set range",
                point=point,
            )
        doubling = len(product_set(values, values)) / len(values) if len(values) else None
        reference = reference_length(len(values))
        measured = {
            "s_size": len(values),
            "product_doubling": doubling,
            "ap_length": length,
            "ap_step": step,
            "reference": reference,
        }
        bounds = []
        if reference is not None:
            bounds.append(
                BoundReport(
                    name="zero_based_ap",
                    measured=length,
                    bound_rhs=reference,
                    constants={"product_doubling": doubling},
                    hypothesis_flags={"small_doubling": doubling is not None and doubling <= 4},
                )
            )
        return measured, bounds
