"""Finitely supported non-negative weights on the integers."""

import math
from pathlib import Path

import numpy as np

from common.exceptions import DataFileError, DomainError


class Weight:
    """``n -> w(n)`` with finite support, stored as sorted parallel arrays.

    Weights on the zeta side live on the nonzero integers. Indicators used as
    energy inputs may put mass on 0 when built with ``allow_zero``.
    """

    __slots__ = ("support", "values")

    def __init__(self, mapping, allow_zero=False):
        items = sorted((int(n), float(w)) for n, w in dict(mapping).items())
        for n, w in items:
            if n == 0 and not allow_zero:
                raise DomainError("0 cannot carry weight")
            if not math.isfinite(w) or w < 0:
                raise DomainError("weights must be finite and non-negative", n=n, w=w)
        items = [(n, w) for n, w in items if w > 0]
        self.support = np.array([n for n, _ in items], dtype=np.int64)
        self.values = np.array([w for _, w in items], dtype=np.float64)
        self.support.setflags(write=False)
        self.values.setflags(write=False)

    @classmethod
    def indicator(cls, values):
        return cls({n: 1.0 for n in values}, allow_zero=True)

    def __len__(self):
        return int(self.support.size)

    def __getitem__(self, n):
        index = np.searchsorted(self.support, n)
        if index < self.support.size and self.support[index] == n:
            return float(self.values[index])
        return 0.0

    def __repr__(self):
        return f"Weight(size={len(self)}, l1={self.l1:.6g})"

    def items(self):
        return zip(self.support.tolist(), self.values.tolist())

    def as_dict(self):
        return dict(self.items())

    @property
    def l1(self):
        return math.fsum(self.values.tolist())

    @property
    def l2_squared(self):
        return math.fsum((self.values * self.values).tolist())

    @property
    def l2(self):
        return math.sqrt(self.l2_squared)

    def scaled(self, factor):
        if factor < 0:
            raise DomainError("weights stay non-negative", factor=factor)
        return Weight({n: w * factor for n, w in self.items()}, allow_zero=True)

    def require_positive_support(self):
        if self.support.size and self.support[0] <= 0:
            raise DomainError(
                "support must consist of positive integers",
                offending=int(self.support[0]),
            )
        return self


def weight_from_set(values):
    return Weight.indicator(values)


def read_weight_file(path):
    """Lines ``n<TAB>w``; '#' starts a comment."""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise DataFileError(f"cannot read weight file: {exc.strerror}", path) from exc
    except UnicodeDecodeError as exc:
        raise DataFileError(f"weight file is not UTF-8 text: {exc.reason}", path, offset=exc.start) from None
    mapping = {}
    for number, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise DataFileError(f"line {number} must read 'n<TAB>w'", path, line=number)
        try:
            n, w = int(fields[0]), float(fields[1])
        except ValueError:
            raise DataFileError(f"line {number} is not 'integer<TAB>number'", path, line=number) from None
        mapping[n] = mapping.get(n, 0.0) + w
    try:
        return Weight(mapping)
    except DomainError as exc:
        raise DataFileError(exc.message, path, **exc.detail) from None
