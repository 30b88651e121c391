"""The finite integer set every computation works on."""

import numpy as np

from common.exceptions import ArithmeticOverflowError

INT64_MIN = np.iinfo(np.int64).min


class IntSet:
    """Sorted, duplicate-free, immutable set of signed integers.

    Elements are stored as a read-only ``int64`` array; magnitudes must stay
    below 2**63 so the most negative ``int64`` is rejected as well.
    """

    __slots__ = ("_elements", "_members")

    def __init__(self, elements=()):
        if isinstance(elements, np.ndarray):
            array = np.unique(elements.astype(np.int64, copy=False))
        else:
            values = list(elements)
            try:
                array = np.unique(np.array(values, dtype=np.int64))
            except OverflowError:
                offending = next(v for v in values if abs(v) >= 2**63)
                raise ArithmeticOverflowError(
                    "element magnitude must stay below 2**63", value=offending
                ) from None
        if array.size and array[0] == INT64_MIN:
            raise ArithmeticOverflowError("element magnitude must stay below 2**63", value=int(array[0]))
        array.setflags(write=False)
        self._elements = array
        self._members = None

    @classmethod
    def from_sorted_array(cls, array):
        """Wrap an array already known to be sorted and unique."""
        instance = cls.__new__(cls)
        array = np.ascontiguousarray(array, dtype=np.int64)
        array.setflags(write=False)
        instance._elements = array
        instance._members = None
        return instance

    @property
    def elements(self):
        return self._elements

    def members(self):
        if self._members is None:
            self._members = frozenset(self._elements.tolist())
        return self._members

    def to_list(self):
        return self._elements.tolist()

    def min(self):
        return int(self._elements[0])

    def max(self):
        return int(self._elements[-1])

    def max_abs(self):
        if not self._elements.size:
            return 0
        return max(abs(self.min()), abs(self.max()))

    def positive(self):
        return IntSet.from_sorted_array(self._elements[self._elements > 0])

    def without_zero(self):
        return IntSet.from_sorted_array(self._elements[self._elements != 0])

    def __len__(self):
        return int(self._elements.size)

    def __iter__(self):
        return iter(self._elements.tolist())

    def __contains__(self, value):
        if not self._elements.size or not -(2**63) < value < 2**63:
            return False
        index = np.searchsorted(self._elements, value)
        return bool(index < self._elements.size and self._elements[index] == value)

    def __eq__(self, other):
        if not isinstance(other, IntSet):
            return NotImplemented
        return np.array_equal(self._elements, other._elements)

    def __hash__(self):
        return hash(self._elements.tobytes())

    def __repr__(self):
        if len(self) <= 8:
            return f"IntSet({self.to_list()})"
        head = ", ".join(str(v) for v in self._elements[:4].tolist())
        return f"IntSet([{head}, ...] size={len(self)})"
