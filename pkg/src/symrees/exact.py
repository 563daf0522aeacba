"""Exact rational linear algebra and LP feasibility.

Everything here works on lists of lists of ``Fraction`` (or ints) and never
touches floating point.  Problem sizes are desk scale, so plain Gaussian
elimination and a dense Bland-rule simplex are adequate.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def row_echelon(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = to_matrix(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q.  Rows may be sparse-ish integer lists."""
    if not rows or not rows[0]:
        return 0
    return len(row_echelon(rows)[1])


def sparse_rank(cols: list[dict[int, int]]) -> int:
    """Rank over Q of a matrix given as a list of sparse columns ``{row: value}``."""
    pivots: dict[int, dict[int, Fraction]] = {}
    rk = 0
    for col in cols:
        v = {k: Fraction(x) for k, x in col.items() if x}
        while v:
            lead = min(v)
            if lead not in pivots:
                pivots[lead] = v
                rk += 1
                break
            p = pivots[lead]
            f = v[lead] / p[lead]
            for k, x in p.items():
                y = v.get(k, 0) - f * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
    return rk


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Unique solution of ``a x = b`` (a possibly overdetermined), or None.

    Returns None if the system is inconsistent or underdetermined.
    """
    n = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = row_echelon(aug)
    if n in pivots or len(pivots) < n:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, pivots):
        x[c] = row[n]
    return x


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine hull of ``points`` (-1 for the empty set)."""
    if not points:
        return -1
    base = points[0]
    return rank([[x - y for x, y in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0


def lp_feasible(a_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
                a_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
                nvars: int | None = None) -> list[Fraction] | None:
    """Find ``x >= 0`` with ``a_eq x = b_eq`` and ``a_ub x <= b_ub``.

    Returns a feasible point or None.  Phase-one simplex with Bland's rule,
    exact arithmetic.
    """
    if nvars is None:
        nvars = len(a_eq[0]) if a_eq else len(a_ub[0])
    n_slack = len(a_ub)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for row, bi in zip(a_eq, b_eq):
        rows.append([Fraction(x) for x in row] + [Fraction(0)] * n_slack)
        rhs.append(Fraction(bi))
    for k, (row, bi) in enumerate(zip(a_ub, b_ub)):
        slack = [Fraction(0)] * n_slack
        slack[k] = Fraction(1)
        rows.append([Fraction(x) for x in row] + slack)
        rhs.append(Fraction(bi))
    m = len(rows)
    ncols = nvars + n_slack
    if m == 0:
        return [Fraction(0)] * nvars
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
    # Artificial variables occupy columns ncols .. ncols+m-1.
    total = ncols + m
    tab = [rows[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [ncols + i for i in range(m)]
    # Objective: minimise sum of artificials; reduced-cost row.
    obj = [Fraction(0)] * (total + 1)
    for i in range(m):
        for j in range(total + 1):
            obj[j] -= tab[i][j]
    for i in range(m):
        obj[ncols + i] += 1
    while True:
        enter = next((j for j in range(total) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded; cannot happen for phase one
            break
        _pivot(tab, obj, best[1], enter)
        basis[best[1]] = enter
    if obj[-1] != 0:
        return None
    x = [Fraction(0)] * total
    for i, b in enumerate(basis):
        x[b] = tab[i][-1]
    return x[:nvars]


def _pivot(tab: Matrix, obj: list[Fraction], r: int, c: int) -> None:
    inv = 1 / tab[r][c]
    tab[r] = [x * inv for x in tab[r]]
    for i in range(len(tab)):
        if i != r and tab[i][c] != 0:
            f = tab[i][c]
            tab[i] = [x - f * y for x, y in zip(tab[i], tab[r])]
    if obj[c] != 0:
        f = obj[c]
        obj[:] = [x - f * y for x, y in zip(obj, tab[r])]
