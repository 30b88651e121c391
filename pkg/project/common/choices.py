from django.db.models import TextChoices


class RepOperation(TextChoices):
    SUM = "sum", "Sum"
    DIFFERENCE = "difference", "Difference"
    PRODUCT = "product", "Product"


class EnergyKind(TextChoices):
    ADDITIVE = "E+", "Additive energy"
    MULTIPLICATIVE = "Ex", "Multiplicative energy"
    T_SUM = "T+", "Higher additive energy"
    T_PRODUCT = "Tx", "Higher multiplicative energy"
    WEIGHTED = "weighted", "Weighted energy"


class GeneratorKind(TextChoices):
    AP = "ap", "Arithmetic progression"
    GEO = "geo", "Geometric progression"
    GRID = "grid", "Prime-power grid"
    INTERVAL = "interval", "Interval [1..n]"
    SMOOTH = "smooth", "Smooth numbers"
    POW = "pow", "Power image"
    FILE = "file", "Set file"


class Flag(TextChoices):
    ZERO_IN_PRODUCT = "zero_in_product", "Zero absorbs products"
    HYPOTHESIS_VIOLATED = "hypothesis_violated", "Stated hypothesis does not hold"
    UNCONTROLLED_TRUNCATION = "uncontrolled_truncation", "Truncation without tail bound"
    PROOF_CONVENTION = "proof_convention", "Local convention, not the definition"
