"""Brute-force tuple enumeration, used only to cross-check the fast paths."""

import math
from functools import reduce
from itertools import product

from common.choices import RepOperation
from setcore.pairs import combine


def _fold(terms, op):
    return reduce(lambda acc, v: combine(acc, v, op), terms)


def oracle_energy(left, right, op=RepOperation.SUM):
    return sum(
        1
        for a1, a2, b1, b2 in product(left, left, right, right)
        if combine(a1, b1, op) == combine(a2, b2, op)
    )


def oracle_t_energy(values, k, op=RepOperation.SUM):
    return sum(
        1
        for terms in product(values, repeat=2 * k)
        if _fold(terms[:k], op) == _fold(terms[k:], op)
    )


def oracle_weighted_energy(f1, f2, f3, f4):
    terms = []
    for x, w1 in f1.items():
        for x3, w3 in f3.items():
            z = x3 - x
            for y, w2 in f2.items():
                terms.append(w1 * w2 * w3 * f4[y + z])
    return math.fsum(terms)


def oracle_incidence(image, shifts, targets):
    members = targets.members()
    return sum(1 for v, b in product(image, shifts) if v + b in members)


def oracle_longest_ap(values):
    members = values.members()
    best = (0, 0)
    for d in values.without_zero():
        n = 0
        while (n + 1) * d in members:
            n += 1
        if (n, -abs(d), -d) > (best[0], -abs(best[1]), -best[1]):
            best = (n, d)
    return best
