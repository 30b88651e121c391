import math
from dataclasses import dataclass, field

from common.helpers import finite_or_none

RECORD_FIELDS = ("kind", "params", "measured", "bounds", "seed", "duration_ms")


def clean(value):
    """JSON-ready copy: tuples become lists, non-finite floats become null."""
    if isinstance(value, dict):
        return {str(k): clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [clean(v) for v in value]
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        value = value.item()
    if isinstance(value, str):
        return str(value)
    return finite_or_none(value)


@dataclass
class ResultRecord:
    """One parameter point of an experiment."""

    kind: str
    params: dict
    measured: dict
    bounds: list = field(default_factory=list)
    seed: int | None = None
    duration_ms: float | None = None

    def to_dict(self):
        return {
            "kind": str(self.kind),
            "params": clean(self.params),
            "measured": clean(self.measured),
            "bounds": [clean(b.to_dict() if hasattr(b, "to_dict") else b) for b in self.bounds],
            "seed": self.seed,
            "duration_ms": finite_or_none(self.duration_ms),
        }

    def summary(self):
        head = ", ".join(f"{k}={v}" for k, v in self.params.items())
        shown = []
        for key, value in self.measured.items():
            if isinstance(value, float) and math.isfinite(value):
                shown.append(f"{key}={value:.6g}")
            elif isinstance(value, (int, bool, str)) or value is None:
                shown.append(f"{key}={value}")
        return f"[{self.kind}] {head} | {', '.join(shown)}"
