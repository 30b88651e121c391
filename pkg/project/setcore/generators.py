"""The generator mini-language for structured sets.

Grammar::

    ap:a0,d,n          {a0 + i*d : 0 <= i < n}
    geo:g0,r,n         {g0 * r**i : 0 <= i < n}
    grid:p1,...,pk,e   {p1**e1 * ... * pk**ek : 0 <= ej < e}
    interval:n         {1, ..., n}
    smooth:y,N         every y-smooth integer in [1, N]
    pow:k,n            {i**k : 1 <= i <= n}
    file:path          one integer per line, '#' comments
"""

import logging
import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from django.conf import settings

from common.choices import GeneratorKind
from common.exceptions import (
    ArithmeticOverflowError,
    CeilingExceededError,
    DataFileError,
    GeneratorSyntaxError,
)
from common.helpers import INT63_LIMIT
from setcore.intset import IntSet

logger = logging.getLogger(__name__)

INTEGER = re.compile(r"\s*([+-]?\d+)\s*")

# kind -> (minimum arity, maximum arity, parameter names)
ARITY = {
    GeneratorKind.AP: (3, 3, ("a0", "d", "n")),
    GeneratorKind.GEO: (3, 3, ("g0", "r", "n")),
    GeneratorKind.GRID: (2, None, ("p1..pk", "e")),
    GeneratorKind.INTERVAL: (1, 1, ("n",)),
    GeneratorKind.SMOOTH: (2, 2, ("y", "N")),
    GeneratorKind.POW: (2, 2, ("k", "n")),
}


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    params: tuple = ()
    path: str = ""

    def render(self):
        if self.kind == GeneratorKind.FILE:
            return f"file:{self.path}"
        return f"{self.kind}:{','.join(str(p) for p in self.params)}"

    def __str__(self):
        return self.render()


def parse_generator(text):
    kind_text, colon, body = text.partition(":")
    kind_text = kind_text.strip().lower()
    if not colon:
        raise GeneratorSyntaxError("expected '<kind>:<parameters>'", text, len(text))
    if kind_text not in GeneratorKind.values:
        raise GeneratorSyntaxError(
            f"unknown generator kind {kind_text!r}; expected one of {', '.join(GeneratorKind.values)}",
            text,
            0,
        )
    kind = GeneratorKind(kind_text)
    offset = len(kind_text) + 1
    if kind == GeneratorKind.FILE:
        if not body.strip():
            raise GeneratorSyntaxError("file generator needs a path", text, offset)
        return GeneratorSpec(kind=kind.value, path=body.strip())

    params = []
    position = offset
    for field_text in body.split(","):
        match = INTEGER.fullmatch(field_text)
        if match is None:
            raise GeneratorSyntaxError("expected an integer", text, position)
        params.append(int(match.group(1)))
        position += len(field_text) + 1

    low, high, names = ARITY[kind]
    if len(params) < low or (high is not None and len(params) > high):
        raise GeneratorSyntaxError(
            f"{kind.value} takes {', '.join(names)}; got {len(params)} parameter(s)",
            text,
            len(text),
        )
    _check_parameters(kind, params, text)
    return GeneratorSpec(kind=kind.value, params=tuple(params))


def _check_parameters(kind, params, text):
    def fail(message):
        raise GeneratorSyntaxError(message, text, len(text))

    if kind in (GeneratorKind.AP, GeneratorKind.GEO) and params[2] <= 0:
        fail("length must be positive")
    if kind == GeneratorKind.GEO and (params[0] == 0 or params[1] == 0):
        fail("geometric progression needs nonzero start and ratio")
    if kind == GeneratorKind.GRID:
        if params[-1] <= 0:
            fail("exponent bound must be positive")
        if any(p < 2 for p in params[:-1]):
            fail("grid bases must be at least 2")
    if kind == GeneratorKind.INTERVAL and params[0] <= 0:
        fail("interval length must be positive")
    if kind == GeneratorKind.SMOOTH and (params[0] < 2 or params[1] <= 0):
        fail("smooth needs y >= 2 and N >= 1")
    if kind == GeneratorKind.POW and (params[0] <= 0 or params[1] <= 0):
        fail("pow needs positive exponent and length")


def _check_size(size, spec):
    ceiling = settings.SET_SIZE_CEILING
    if size > ceiling:
        raise CeilingExceededError(
            f"{spec} would hold {size} elements, above the set ceiling {ceiling}",
            size=size,
            ceiling=ceiling,
        )


def _check_magnitude(value, spec):
    if abs(value) >= INT63_LIMIT:
        raise ArithmeticOverflowError(f"{spec} leaves the 63-bit range", value=value)


def generate(spec):
    kind = GeneratorKind(spec.kind)
    if kind == GeneratorKind.FILE:
        return read_set_file(spec.path)
    p = spec.params

    if kind == GeneratorKind.AP:
        a0, d, n = p
        _check_size(n, spec)
        _check_magnitude(a0, spec)
        _check_magnitude((n - 1) * d, spec)
        _check_magnitude(a0 + (n - 1) * d, spec)
        return IntSet(a0 + d * np.arange(n, dtype=np.int64))

    if kind == GeneratorKind.GEO:
        g0, r, n = p
        _check_size(n, spec)
        _check_magnitude(g0 * abs(r) ** (n - 1), spec)
        return IntSet([g0 * r**i for i in range(n)])

    if kind == GeneratorKind.GRID:
        *bases, e = p
        _check_size(e ** len(bases), spec)
        _check_magnitude(math.prod(b ** (e - 1) for b in bases), spec)
        values = np.ones(1, dtype=np.int64)
        for base in bases:
            powers = np.array([base**i for i in range(e)], dtype=np.int64)
            values = np.multiply.outer(values, powers).ravel()
        return IntSet(values)

    if kind == GeneratorKind.INTERVAL:
        (n,) = p
        _check_size(n, spec)
        _check_magnitude(n, spec)
        return IntSet.from_sorted_array(np.arange(1, n + 1, dtype=np.int64))

    if kind == GeneratorKind.SMOOTH:
        return _smooth_numbers(*p, spec=spec)

    k, n = p
    _check_size(n, spec)
    _check_magnitude(n**k, spec)
    return IntSet.from_sorted_array(np.array([i**k for i in range(1, n + 1)], dtype=np.int64))


def _smooth_numbers(y, bound, spec):
    """Products of prime powers, never scanning ``[1, bound]``."""
    from numtheory.primes import prime_table

    _check_magnitude(bound, spec)
    ceiling = settings.SET_SIZE_CEILING
    values = [1]
    for p in prime_table(max(2, min(y, bound))).primes.tolist():
        if p > bound:
            break
        extended = []
        for v in values:
            m = v * p
            while m <= bound:
                extended.append(m)
                m *= p
        values.extend(extended)
        if len(values) > ceiling:
            _check_size(len(values), spec)
    logger.debug(f"{spec} enumerated {len(values)} smooth numbers")
    return IntSet(values)


def read_set_file(path):
    """One decimal integer per line; '#' starts a comment; duplicates merge."""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise DataFileError(f"cannot read set file: {exc.strerror}", path) from exc
    except UnicodeDecodeError as exc:
        raise DataFileError(f"set file is not UTF-8 text: {exc.reason}", path, offset=exc.start) from None
    values = []
    for number, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(int(line))
        except ValueError:
            raise DataFileError(f"line {number} is not an integer", path, line=number) from None
    return IntSet(values)


def render_generator(spec):
    """Inverse of ``parse_generator``."""
    return spec.render()
