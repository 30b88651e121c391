import math
from dataclasses import dataclass, field

from common.helpers import finite_or_none


@dataclass(frozen=True)
class BoundReport:
    """A measured quantity next to a stated right-hand side.

    ``ratio`` is ``measured / bound_rhs`` whenever the bound is positive and
    finite, otherwise ``None``.
    """

    name: str
    measured: float
    bound_rhs: float
    constants: dict = field(default_factory=dict)
    hypothesis_flags: dict = field(default_factory=dict)

    @property
    def ratio(self):
        if self.bound_rhs is None or not 0 < self.bound_rhs < math.inf:
            return None
        return self.measured / self.bound_rhs

    @property
    def holds(self):
        """Whether every recorded hypothesis held."""
        return all(self.hypothesis_flags.values())

    def to_dict(self):
        return {
            "name": self.name,
            "measured": finite_or_none(self.measured),
            "bound_rhs": finite_or_none(self.bound_rhs),
            "ratio": finite_or_none(self.ratio),
            "constants": {k: finite_or_none(v) for k, v in self.constants.items()},
            "hypothesis_flags": dict(self.hypothesis_flags),
        }
