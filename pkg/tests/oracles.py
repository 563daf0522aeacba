"""Brute-force reference computations that share no code with the package.

Everything here works on raw exponent tuples and enumerates boxes, so it is
slow but easy to audit.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product


def in_ideal(gens, a) -> bool:
    return any(all(g[i] <= a[i] for i in range(len(a))) for g in gens)


def product_gens(gens_list):
    """Generators (not minimal) of the product of ideals given by generator lists."""
    out = [tuple(0 for _ in gens_list[0][0])]
    for gens in gens_list:
        out = [tuple(x + y for x, y in zip(a, g)) for a in out for g in gens]
    return out


def power_gens(gens, n, d):
    return product_gens([gens] * n) if n else [(0,) * d]


def multi_power_gens(family, n, d):
    out = [(0,) * d]
    for gens, k in zip(family, n):
        out = product_gens([out] + [gens] * k)
    return out


def in_m_saturation(gens, a) -> bool:
    """``X^a`` in ``I : m^oo``: for every variable a high enough power of it pushes ``X^a`` into ``I``.

    Uses ``I : m^oo = intersection over i of I : X_i^oo``, with ``X_i^N``
    enough once ``N`` exceeds every generator exponent.
    """
    d = len(a)
    big = max(max(g) for g in gens) + 1
    for i in range(d):
        b = list(a)
        b[i] += big
        if not in_ideal(gens, b):
            return False
    return True


def box(bound, d):
    return product(*(range(bound + 1) for _ in range(d)))


def minimal(points):
    pts = set(points)
    return sorted(p for p in pts if not any(q != p and all(x <= y for x, y in zip(q, p)) for q in pts))


def torsion_count(gens, bound):
    """Monomials of ``I : m^oo`` not in ``I`` inside ``[0, bound]^d``."""
    d = len(gens[0])
    return sum(1 for a in box(bound, d) if in_m_saturation(gens, a) and not in_ideal(gens, a))


def brute_force_quotient(big_gens, small_gens, bound):
    """Points of ``[0, bound]^d`` in the first ideal but not the second."""
    d = len(big_gens[0])
    return sum(1 for a in box(bound, d) if in_ideal(big_gens, a) and not in_ideal(small_gens, a))


def lagrange_eval(xs, ys, t):
    """Value at ``t`` of the interpolating polynomial through ``(xs, ys)``."""
    total = Fraction(0)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = Fraction(yi)
        for j, xj in enumerate(xs):
            if j != i:
                term *= Fraction(t - xj, xi - xj)
        total += term
    return total
