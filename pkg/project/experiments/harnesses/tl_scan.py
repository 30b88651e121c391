"""Decay of ``T_{2^j}`` for convex images ``f(I)``."""

import itertools
import math

from bounds.formulas import tl_exponent, tl_rhs
from bounds.reports import BoundReport
from common.choices import Flag
from energy.counting import t_energy
from experiments.choices import ExperimentKind
from experiments.harnesses.base import Harness, build_set
from setcore.arithmetic import k_fold_sumset


def tripling_ratio(interval, eps):
    """``|I + I - I| / |I|^(1 + eps)``."""
    return len(k_fold_sumset(interval, 2, 1)) / len(interval) ** (1 + eps)


class TlScanHarness(Harness):
    kind = ExperimentKind.TL_SCAN

    def points(self, config):
        return [
            {"f_gen": f_gen, "j": j}
            for f_gen, j in itertools.product(config["f_gens"], range(config["j_max"] + 1))
        ]

    def measure(self, config, point):
        image = build_set(point["f_gen"])
        interval = build_set(config.get("i_gen") or f"interval:{len(image)}")
        j, size = point["j"], len(image)
        energy = t_energy(image, 2**j)
        measured = {
            "i_size": size,
            "k": 2**j,
            "t_energy": energy.value,
            "exponent": math.log(energy.value, size) if size >= 2 else None,
            "tripling": tripling_ratio(interval, config["eps"]),
        }
        if j == 0:
            # T_1 is |A| by definition; the proofs count it as |A|^2
            measured["t_energy_proof_convention"] = size**2
            measured["flags"] = [str(Flag.PROOF_CONVENTION)]
            return measured, []

        c = self.constant(config, "tl", 1.0)
        measured["rhs_exponent"] = tl_exponent(j, c=c)
        report = BoundReport(
            name="higher_energy_decay",
            measured=energy.value,
            bound_rhs=tl_rhs(size, j, c=c) if size >= 2 else None,
            constants={"c": c, "eps": config["eps"]},
            hypothesis_flags={"tripling": measured["tripling"] <= 1, "eps_range": config["eps"] <= math.log2(j) / j},
        )
        return measured, [report]
