"""Exact energies of integer sets.

``E(A, B) = sum_x r(x)**2`` where ``r`` is the representation function of
``A + B`` (or ``AB``). Pair keys are generated once per row chunk and
scattered into hash-partition spill files, so only one partition is ever
sorted in memory. When the pair values fit in 63 bits the keys are the
values themselves; otherwise keys are values modulo 2**64 and every key
collision is re-checked with exact integer arithmetic.
"""

import logging
import math
import tempfile
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from django.conf import settings

from common.choices import EnergyKind, Flag, RepOperation
from common.exceptions import ArithmeticOverflowError, BoundsError, CeilingExceededError
from common.helpers import INT63_LIMIT, check_pair_ceiling
from setcore.pairs import UFUNCS, combine, fits_int64, merge_counts, pair_keys, row_chunks

logger = logging.getLogger(__name__)

GOLDEN = np.uint64(0x9E3779B97F4A7C15)


@dataclass(frozen=True)
class EnergyValue:
    value: int
    kind: str
    diagonal_floor: int
    sizes: tuple = ()
    flags: tuple = field(default=())

    def __int__(self):
        return int(self.value)

    def to_dict(self):
        return {
            "kind": str(self.kind),
            "value": self.value,
            "diagonal_floor": self.diagonal_floor,
            "sizes": list(self.sizes),
            "flags": [str(f) for f in self.flags],
        }


def square_sum(counts):
    """Exact ``sum(c*c)`` of an integer count array."""
    if not counts.size:
        return 0
    largest = int(counts.max())
    if largest * largest * counts.size < INT63_LIMIT:
        return int(np.dot(counts, counts))
    return sum(c * c for c in counts.tolist())


def _partition_ids(keys, bits):
    return (keys * GOLDEN) >> np.uint64(64 - bits)


def _verified_square_sum(keys, indices, left, right, op):
    """Square sum of exact multiplicities for keys taken modulo 2**64."""
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    indices = indices[order]
    starts = np.flatnonzero(np.concatenate(([True], keys[1:] != keys[:-1])))
    sizes = np.diff(np.append(starts, keys.size))
    total = int(np.count_nonzero(sizes == 1))
    width = len(right)
    for start, size in zip(starts[sizes > 1].tolist(), sizes[sizes > 1].tolist()):
        exact = Counter()
        for flat in indices[start:start + size].tolist():
            i, j = divmod(flat, width)
            exact[combine(int(left.elements[i]), int(right.elements[j]), op)] += 1
        total += sum(c * c for c in exact.values())
    return total


def _count_keys(keys, indices, left, right, op):
    if indices is None:
        _, counts = np.unique(keys, return_counts=True)
        return square_sum(counts.astype(np.int64))
    return _verified_square_sum(keys, indices, left, right, op)


def _spill_path(directory, name, partition):
    return directory / f"{name}-{partition}.bin"


def _append(path, values):
    with open(path, "ab") as handle:
        values.tofile(handle)


def scatter_partitions(left, right, op, exact, bits, directory):
    """Write every pair key once, into the spill file of its hash partition."""
    width = len(right)
    partitions = 1 << bits
    id_type = np.uint16 if bits <= 16 else np.uint32
    for rows in row_chunks(len(left), width):
        keys = pair_keys(left.elements[rows], right.elements, op)
        ids = _partition_ids(keys, bits).astype(id_type)
        order = np.argsort(ids, kind="stable")
        bounds = np.searchsorted(ids[order], np.arange(partitions + 1)).tolist()
        keys = keys[order]
        indices = None if exact else rows.start * width + order
        for partition in range(partitions):
            low, high = bounds[partition], bounds[partition + 1]
            if low == high:
                continue
            _append(_spill_path(directory, "keys", partition), keys[low:high])
            if indices is not None:
                _append(_spill_path(directory, "indices", partition), indices[low:high])


def _count_partition(left, right, op, exact, directory, partition):
    keys_path = _spill_path(directory, "keys", partition)
    if not keys_path.exists():
        return 0
    keys = np.fromfile(keys_path, dtype=np.uint64)
    indices = None
    if not exact:
        indices = np.fromfile(_spill_path(directory, "indices", partition), dtype=np.int64)
    return _count_keys(keys, indices, left, right, op)


def collision_count(left, right, op, workers=None):
    """``sum_x r(x)**2`` for the pairwise ``op`` of two sets."""
    if not len(left) or not len(right):
        return 0
    pairs = check_pair_ceiling(len(left), len(right))
    exact = fits_int64(left, right, op)
    partition_size = settings.ENERGY_PARTITION_SIZE
    bits = max(0, math.ceil(math.log2(pairs / partition_size))) if pairs > partition_size else 0
    if workers is None:
        workers = settings.ENERGY_WORKERS
    logger.debug(
        f"{op} collisions over {pairs} pairs: {1 << bits} partition(s), "
        f"{'exact' if exact else 'modular'} keys, {workers} worker(s)"
    )

    if bits == 0:
        keys = pair_keys(left.elements, right.elements, op)
        indices = None if exact else np.arange(keys.size, dtype=np.int64)
        return _count_keys(keys, indices, left, right, op)

    with tempfile.TemporaryDirectory(prefix="energy-lab-", dir=settings.ENERGY_SPILL_DIR) as spill:
        directory = Path(spill)
        scatter_partitions(left, right, op, exact, bits, directory)

        def run(partition):
            return _count_partition(left, right, op, exact, directory, partition)

        if workers <= 1:
            return sum(run(p) for p in range(1 << bits))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return sum(pool.map(run, range(1 << bits)))


def _flags_for(op, *sets):
    if op == RepOperation.PRODUCT and any(0 in s for s in sets):
        logger.warning("zero in a multiplicative input absorbs products")
        return (Flag.ZERO_IN_PRODUCT,)
    return ()


def common_energy(left, right, op, workers=None):
    kind = EnergyKind.MULTIPLICATIVE if op == RepOperation.PRODUCT else EnergyKind.ADDITIVE
    return EnergyValue(
        value=collision_count(left, right, op, workers=workers),
        kind=kind,
        diagonal_floor=len(left) * len(right),
        sizes=(len(left), len(right)),
        flags=_flags_for(op, left, right),
    )


def additive_energy(left, right, workers=None):
    return common_energy(left, right, RepOperation.SUM, workers=workers)


def multiplicative_energy(left, right, workers=None):
    return common_energy(left, right, RepOperation.PRODUCT, workers=workers)


def _check_k_fold(values, k, op):
    if len(values) ** k >= INT63_LIMIT:
        raise CeilingExceededError(
            f"|A|**k = {len(values)}**{k} multiplicities overflow the counters",
            size=len(values),
            k=k,
        )
    largest = values.max_abs()
    reach = k * largest if op == RepOperation.SUM else largest**k
    if reach >= INT63_LIMIT:
        raise ArithmeticOverflowError(
            f"{k}-fold {op} of {largest} leaves the 63-bit range; use a smaller set",
            pair=(largest, k),
        )


def _dense_k_fold(values, k):
    """Multiplicities of ``kA`` on the window ``[k min A, k max A]``."""
    offsets = values.elements - values.min()
    counts = np.zeros(int(offsets[-1]) + 1, dtype=np.int64)
    counts[offsets] = 1
    width = counts.size
    for _ in range(k - 1):
        extended = np.zeros(counts.size + width - 1, dtype=np.int64)
        for offset in offsets.tolist():
            extended[offset:offset + counts.size] += counts
        counts = extended
    return counts[counts > 0]


def k_fold_table(values, k, op):
    """Sorted (value, multiplicity) arrays of ``kA`` or ``A^k``."""
    values_table = values.elements
    counts_table = np.ones(len(values), dtype=np.int64)
    ufunc = UFUNCS[op]
    for _ in range(k - 1):
        check_pair_ceiling(values_table.size, len(values), "; k-fold table too wide")
        parts, weights = [], []
        for rows in row_chunks(values_table.size, len(values)):
            parts.append(ufunc.outer(values_table[rows], values.elements).ravel())
            weights.append(np.repeat(counts_table[rows], len(values)))
        values_table, counts_table = merge_counts(parts, weights)
    return values_table, counts_table


def t_energy(values, k, op=RepOperation.SUM):
    """``T_k(A)``: 2k-tuples with equal k-fold sums (or products).

    ``T_1(A) = |A|`` under the definition.
    """
    if k < 1:
        raise BoundsError("k must be positive", k=k)
    kind = EnergyKind.T_PRODUCT if op == RepOperation.PRODUCT else EnergyKind.T_SUM
    flags = _flags_for(op, values)
    if not len(values):
        return EnergyValue(value=0, kind=kind, diagonal_floor=0, sizes=(0,), flags=flags)
    _check_k_fold(values, k, op)
    span = k * (values.max() - values.min()) + 1
    dense = span <= settings.DENSE_SPAN_CEILING and len(values) * span <= settings.PAIR_CEILING
    if op == RepOperation.SUM and dense:
        counts = _dense_k_fold(values, k)
    else:
        _, counts = k_fold_table(values, k, op)
    return EnergyValue(
        value=square_sum(counts),
        kind=kind,
        diagonal_floor=len(values) ** k,
        sizes=(len(values),),
        flags=flags,
    )
