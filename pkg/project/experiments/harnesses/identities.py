"""Exact identities of the random zeta function checked at desk scale."""

import math

import numpy as np

from bounds.formulas import WeightNorms, radziwill_rhs
from bounds.reports import BoundReport
from common.choices import RepOperation
from energy.weighted import weighted_common_energy, weighted_t_energy
from energy.weights import Weight
from experiments.choices import ExperimentKind, IdentityCheck
from experiments.harnesses.base import Harness
from zeta.gcdsums import energy_transfer_check, gcd_sum, gcd_sum_lhs
from zeta.moments import euler_expression, exact_Z_moment, fourier_expression, mc_moment

AGREEMENT_ERRORS = 5


def random_weight(seed, index, support_max):
    """The ``index``-th seeded weight on a random subset of ``[1, support_max]``."""
    rng = np.random.Generator(np.random.Philox([seed, index]))
    size = int(rng.integers(1, support_max + 1))
    support = rng.choice(np.arange(1, support_max + 1), size=size, replace=False)
    values = rng.uniform(0.1, 1.0, size=size)
    return Weight(dict(zip(support.tolist(), values.tolist())))


def agreement(measured, estimate):
    """Whether ``measured`` lies within a few standard errors of the estimate."""
    slack = AGREEMENT_ERRORS * estimate.std_error
    return abs(estimate.mean - measured) <= max(slack, 1e-12 * abs(measured))


class IdentitiesHarness(Harness):
    kind = ExperimentKind.IDENTITIES
    stochastic = True

    def points(self, config):
        points = []
        for index in range(config["weights"]):
            points.append({"check": IdentityCheck.PARSEVAL.value, "weight": index})
            points.append({"check": IdentityCheck.FOURTH_MOMENT.value, "weight": index})
            for alpha in config["gcd_alphas"]:
                points.append({"check": IdentityCheck.GCD.value, "weight": index, "alpha": alpha})
        for z in config["z_values"]:
            for l in config["moment_ls"]:
                for alpha in config["euler_alphas"]:
                    points.append({"check": IdentityCheck.EULER_MOMENT.value, "z": z, "l": l, "alpha": alpha})
        points.append({"check": IdentityCheck.RADZIWILL.value, "weight": 0, "n": config["radziwill_n"]})
        for z in config["z_values"]:
            points.append({"check": IdentityCheck.ENERGY_TRANSFER.value, "weight": 0, "z": z, "alpha": 1.0})
        return points

    def weight(self, config, point):
        return random_weight(config["seed"], point["weight"], config["support_max"])

    def measure(self, config, point):
        check = IdentityCheck(point["check"])
        return getattr(self, f"check_{check.value}")(config, point)

    def check_parseval(self, config, point):
        w = self.weight(config, point)
        estimate = mc_moment(fourier_expression(w), 1, config["samples"], config["seed"])
        exact = w.l2_squared
        return self._moment_row(exact, estimate, "parseval")

    def check_fourth_moment(self, config, point):
        w = self.weight(config, point)
        estimate = mc_moment(fourier_expression(w), 2, config["samples"], config["seed"])
        exact = weighted_t_energy(w, 2, RepOperation.PRODUCT)
        return self._moment_row(exact, estimate, "fourth_moment")

    def _moment_row(self, exact, estimate, name):
        holds = agreement(exact, estimate)
        measured = {"exact": exact, **estimate.to_dict(), "agrees": holds}
        report = BoundReport(
            name=name,
            measured=estimate.mean,
            bound_rhs=exact,
            constants={"std_error": estimate.std_error, "tolerance_errors": AGREEMENT_ERRORS},
            hypothesis_flags={"agrees": holds},
        )
        return measured, [report]

    def check_gcd(self, config, point):
        w = self.weight(config, point)
        closed = gcd_sum(w, point["alpha"], zeta_trunc=config["t_max"])
        lhs = gcd_sum_lhs(w, point["alpha"], config["t_max"])
        low, high = closed.interval
        measured = {
            "lhs": lhs,
            "rhs": closed.value,
            "interval_low": low,
            "interval_high": high,
            "contains": closed.contains(lhs),
        }
        report = BoundReport(
            name="gcd_identity",
            measured=lhs,
            bound_rhs=closed.value,
            constants={"interval_width": closed.interval_width, "t_max": config["t_max"]},
            hypothesis_flags={"contains": closed.contains(lhs)},
        )
        return measured, [report]

    def check_euler_moment(self, config, point):
        z, l, alpha = point["z"], point["l"], point["alpha"]
        exact = exact_Z_moment(z, alpha, l)
        if not exact.primes:
            return {**exact.to_dict(), "skipped": "no primes in [z, 2z)"}, []
        estimate = mc_moment(euler_expression(alpha, z), l, config["samples"], config["seed"])
        holds = agreement(exact.value, estimate)
        measured = {
            "exact": exact.value,
            **estimate.to_dict(),
            "agrees": holds,
            "log_exact": math.log(exact.value),
            "exponent": exact.exponent,
            "hypothesis_holds": exact.hypothesis_holds,
        }
        report = BoundReport(
            name="euler_moment",
            measured=exact.value,
            bound_rhs=exact.bound,
            constants={"exponent": exact.exponent},
            hypothesis_flags={"l_at_most_z_alpha": exact.hypothesis_holds, "agrees": holds},
        )
        return measured, [report]

    def check_radziwill(self, config, point):
        w = self.weight(config, point)
        n = point["n"]
        interval = Weight.indicator(range(1, n + 1))
        energy = weighted_common_energy(interval, w, RepOperation.PRODUCT)
        norms = WeightNorms(l1=w.l1, l2=w.l2, t_next=weighted_t_energy(w, 2, RepOperation.PRODUCT))
        c = self.constant(config, "radziwill", 1.0)
        bound = radziwill_rhs(n, norms, s=1, c=c)
        measured = {"energy": energy, "t_form": bound.t_form, "l1_form": bound.l1_form, **norms._asdict()}
        report = BoundReport(
            name="interval_weight_energy",
            measured=energy,
            bound_rhs=bound.t_form,
            constants={"c": c, "s": 1, "l1_form": bound.l1_form},
            hypothesis_flags=bound.flags,
        )
        return measured, [report]

    def check_energy_transfer(self, config, point):
        w = self.weight(config, point)
        report = energy_transfer_check(w, point["z"], point["alpha"], config["samples"], config["seed"])
        measured = {
            "energy": report.measured,
            "rhs": report.bound_rhs,
            "second_moment": report.constants["second_moment"],
            "std_error": report.constants["std_error"],
        }
        return measured, [report]
