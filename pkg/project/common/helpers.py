"""Helper functions shared across apps"""

import math

from django.conf import settings

from common.exceptions import CeilingExceededError

INT63_LIMIT = 2**63

def check_pair_ceiling(left_size, right_size, hint=""):
    """Refuse pairwise work over more than ``PAIR_CEILING`` pairs."""
    pairs = left_size * right_size
    if pairs > settings.PAIR_CEILING:
        raise CeilingExceededError(
            f"{pairs} pairs exceed the pair ceiling {settings.PAIR_CEILING}{hint}",
            pairs=pairs,
            ceiling=settings.PAIR_CEILING,
        )
    return pairs


def finite_or_none(value):
    """JSON has no spelling for inf/nan."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value
