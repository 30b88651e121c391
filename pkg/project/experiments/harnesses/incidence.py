"""Incidences ``f(i) + b = c`` and shifted product growth."""

import itertools
import math

from bounds.formulas import e_f_rhs, inc_rhs, product_growth_rhs
from bounds.reports import BoundReport
from common.choices import Flag, RepOperation
from common.exceptions import NumericalError
from energy.counting import additive_energy, t_energy
from energy.search import incidence_cauchy_schwarz_ceiling, incidence_count
from experiments.choices import ExperimentKind
from experiments.harnesses.base import Harness, build_set
from setcore.arithmetic import product_set, sumset
from setcore.intset import IntSet


class IncidenceHarness(Harness):
    kind = ExperimentKind.INCIDENCE

    def points(self, config):
        return [{"f_gen": config["f_gen"], "b_gen": b_gen, "c_gen": config["c_gen"]} for b_gen in config["b_gens"]]

    def measure(self, config, point):
        image = build_set(point["f_gen"])
        shifts = build_set(point["b_gen"])
        targets = build_set(point["c_gen"])
        delta = config["delta"]
        count = incidence_count(image, shifts, targets)
        ceiling = incidence_cauchy_schwarz_ceiling(image, shifts, targets)
        if count**4 > ceiling:
            raise NumericalError(f"{count} incidences break the Cauchy-Schwarz ceiling {ceiling}", point=point)
        energy = additive_energy(image, shifts).value
        measured = {
            "i_size": len(image),
            "b_size": len(shifts),
            "c_size": len(targets),
            "incidences": count,
            "cauchy_schwarz_ceiling": ceiling,
            "energy": energy,
            "sumset_size": len(sumset(image, shifts)),
        }
        bounds = [
            BoundReport(
                name="convex_incidences",
                measured=count,
                bound_rhs=inc_rhs(len(image), len(shifts), len(targets), delta),
                constants={"delta": delta},
            ),
            BoundReport(
                name="convex_energy",
                measured=energy,
                bound_rhs=e_f_rhs(len(image), len(shifts), delta),
                constants={"delta": delta},
            ),
        ]
        return measured, bounds


def shifted_factors(values, shifts, count):
    """``A + z_j`` for ``count`` shifts taken cyclically."""
    return [IntSet(values.elements + shifts[j % len(shifts)]) for j in range(count)]


def holder_floor(factors):
    """``prod |A_j|^2 / prod T_N(A_j)^(1/N)`` over ``N`` factors, or ``None``
    when a factor contains zero."""
    if any(0 in factor for factor in factors):
        return None
    n = len(factors)
    log_floor = 2 * math.fsum(math.log(len(f)) for f in factors)
    log_floor -= math.fsum(math.log(t_energy(f, n, RepOperation.PRODUCT).value) for f in factors) / n
    return math.exp(log_floor) if log_floor < 700 else math.inf


class ProductGrowthHarness(Harness):
    kind = ExperimentKind.PRODUCT_GROWTH

    def points(self, config):
        return [{"a_gen": a_gen, "m": m} for a_gen, m in itertools.product(config["a_gens"], config["m_values"])]

    def measure(self, config, point):
        values = build_set(point["a_gen"])
        factors = shifted_factors(values, config["shifts"], 2 ** point["m"])
        product = factors[0]
        for factor in factors[1:]:
            product = product_set(product, factor)
        size = len(product)
        floor = holder_floor(factors)
        if floor is not None and size < floor * (1 - 1e-9):
            raise NumericalError(f"|product| = {size} fell below the Hoelder floor {floor}", point=point)
        c = self.constant(config, "product_growth", 1.0)
        measured = {
            "a_size": len(values),
            "factors": len(factors),
            "product_size": size,
            "holder_floor": floor,
            "flags": [str(Flag.ZERO_IN_PRODUCT)] if floor is None else [],
        }
        report = BoundReport(
            name="shifted_product_growth",
            measured=size,
            bound_rhs=product_growth_rhs(len(values), point["m"], c=c),
            constants={"c": c, "shifts": list(config["shifts"])},
        )
        return measured, [report]
