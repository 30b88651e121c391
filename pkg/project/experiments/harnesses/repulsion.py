"""Multiplicative energy of dilated primes against arbitrary sets."""

import itertools

from bounds.formulas import ap_in_g_check
from bounds.reports import BoundReport
from common.exceptions import NumericalError
from energy.counting import multiplicative_energy
from experiments.choices import ExperimentKind
from experiments.harnesses.base import Harness, build_set
from numtheory.primes import prime_table
from setcore.arithmetic import dilate


class RepulsionHarness(Harness):
    kind = ExperimentKind.REPULSION

    def points(self, config):
        return [
            {"l": l, "s_gen": s_gen, "d": d}
            for l, s_gen, d in itertools.product(config["l_values"], config["s_gens"], config["d_values"])
        ]

    def measure(self, config, point):
        primes = prime_table(point["l"]).as_intset()
        values = build_set(point["s_gen"])
        energy = multiplicative_energy(dilate(primes, point["d"]), values)
        prime_count, s_size = len(primes), len(values)
        normalized = energy.value / (prime_count**2 * s_size)
        floor = 1 / prime_count
        if normalized < floor * (1 - 1e-12):
            raise NumericalError(
                f"normalized energy {normalized} fell below the diagonal floor {floor}",
                point=point,
            )
        eps = config["eps"]
        check = ap_in_g_check(
            point["l"],
            s_size,
            eps,
            prime_count=prime_count,
            constant=self.constant(config, "ap_in_g", None),
        )
        measured = {
            "prime_count": prime_count,
            "s_size": s_size,
            "energy": energy.value,
            "normalized_energy": normalized,
            "diagonal_floor": floor,
            "flags": list(energy.flags),
        }
        report = BoundReport(
            name="prime_repulsion",
            measured=energy.value,
            bound_rhs=check.threshold,
            constants={"eps": eps, "log_s": check.lhs, "size_condition_rhs": check.rhs},
            hypothesis_flags={"size_condition": check.holds},
        )
        return measured, [report]
