from dataclasses import dataclass, field

import numpy as np

from common.exceptions import CeilingExceededError
from common.helpers import check_pair_ceiling
from setcore.intset import IntSet
from setcore.pairs import check_range, merge_counts, pair_values, row_chunks


@dataclass(frozen=True)
class RepFunction:
    """Multiplicity table x -> r(x) of a binary sum, difference or product."""

    op: str
    values: np.ndarray = field(repr=False, compare=False)
    counts: np.ndarray = field(repr=False, compare=False)

    def __getitem__(self, x):
        index = np.searchsorted(self.values, x)
        if index < self.values.size and self.values[index] == x:
            return int(self.counts[index])
        return 0

    def __len__(self):
        return int(self.values.size)

    @property
    def mass(self):
        return int(self.counts.sum(dtype=np.int64))

    @property
    def support(self):
        return IntSet.from_sorted_array(self.values)

    def items(self):
        return zip(self.values.tolist(), self.counts.tolist())

    def as_dict(self):
        return dict(self.items())

    def sum_of_squares(self):
        return sum(c * c for c in self.counts.tolist())


def rep_function(left, right, op):
    if not len(left) or not len(right):
        empty = np.array([], dtype=np.int64)
        return RepFunction(op=op, values=empty, counts=empty)
    try:
        check_pair_ceiling(len(left), len(right))
    except CeilingExceededError as exc:
        raise CeilingExceededError(
            f"{exc.message}; use the streamed energy operations instead",
            **exc.detail,
        ) from None
    check_range(left, right, op)
    values, counts = [], []
    for rows in row_chunks(len(left), len(right)):
        chunk_values, chunk_counts = np.unique(
            pair_values(left.elements[rows], right.elements, op), return_counts=True
        )
        values.append(chunk_values)
        counts.append(chunk_counts.astype(np.int64))
    merged, totals = merge_counts(values, counts)
    return RepFunction(op=op, values=merged, counts=totals)
