from django.db.models import TextChoices


class ExperimentKind(TextChoices):
    REPULSION = "repulsion", "Prime repulsion"
    AP_SEARCH = "ap_search", "Zero-based progression search"
    SHIFT_GROWTH = "shift_growth", "Shifted product-set growth"
    TL_SCAN = "tl_scan", "Higher energy decay scan"
    INCIDENCE = "incidence", "Convex incidences"
    PRODUCT_GROWTH = "product_growth", "Shifted product growth"
    IDENTITIES = "identities", "Random zeta identities"


class OutputFormat(TextChoices):
    JSONL = "jsonl", "JSON Lines"
    CSV = "csv", "CSV"


class IdentityCheck(TextChoices):
    PARSEVAL = "parseval", "Second moment of Fw"
    FOURTH_MOMENT = "fourth_moment", "Fourth moment of Fw"
    GCD = "gcd", "GCD-sum identity"
    EULER_MOMENT = "euler_moment", "Restricted Euler product moment"
    RADZIWILL = "radziwill", "Energy of an interval with a weight"
    ENERGY_TRANSFER = "energy_transfer", "Energy transfer to Euler products"
