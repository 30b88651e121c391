import logging
import time

from experiments.records import ResultRecord
from setcore.generators import generate, parse_generator

logger = logging.getLogger(__name__)


def build_set(text):
    return generate(parse_generator(text))


class Harness:
    """One experiment kind: a sweep of parameter points and their evaluation.

    Subclasses set ``kind`` and implement ``points`` and ``measure``;
    ``measure`` returns ``(measured, bounds)`` for a single point.
    """

    kind = None
    stochastic = False

    def points(self, config):
        raise NotImplementedError

    def measure(self, config, point):
        raise NotImplementedError

    def constant(self, config, name, default=1.0):
        return config.get("constants", {}).get(name, default)

    def evaluate(self, config, index):
        point = self.points(config)[index]
        started = time.perf_counter()
        measured, bounds = self.measure(config, point)
        duration_ms = (time.perf_counter() - started) * 1000
        logger.info(f"{self.kind} point {index}: {point} in {duration_ms:.1f} ms")
        return ResultRecord(
            kind=str(self.kind.value),
            params=point,
            measured=measured,
            bounds=bounds,
            seed=config.get("seed"),
            duration_ms=duration_ms,
        )
