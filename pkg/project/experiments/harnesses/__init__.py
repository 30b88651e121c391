from experiments.choices import ExperimentKind
from experiments.harnesses.ap_search import ApSearchHarness
from experiments.harnesses.identities import IdentitiesHarness
from experiments.harnesses.incidence import IncidenceHarness, ProductGrowthHarness
from experiments.harnesses.repulsion import RepulsionHarness
from experiments.harnesses.shift_growth import ShiftGrowthHarness
from experiments.harnesses.tl_scan import TlScanHarness

HARNESSES = {
    harness.kind: harness()
    for harness in (
        RepulsionHarness,
        ApSearchHarness,
        ShiftGrowthHarness,
        TlScanHarness,
        IncidenceHarness,
        ProductGrowthHarness,
        IdentitiesHarness,
    )
}


def get_harness(kind):
    return HARNESSES[ExperimentKind(kind)]
