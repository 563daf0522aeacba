"""Graded Betti numbers and Castelnuovo-Mumford regularity of monomial ideals.

Betti numbers of ``R/I`` over Q are computed two ways:

* :func:`taylor_betti` splits the Taylor complex tensored with the residue
  field into strands, one per distinct lcm multidegree, and takes exact
  ranks.  It enumerates all ``2^s`` generator subsets, so it is guarded by a
  generator budget.
* :func:`koszul_betti` uses the upper Koszul simplicial complex
  ``K^a(I) = {F squarefree : X^(a-F) in I}`` at each lcm-lattice element
  ``a``; it never looks at more than ``2^d`` faces per multidegree.

:func:`regularity` uses the second route; the first is the independent check.
"""
from __future__ import annotations

import csv
import io
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .exact import sparse_rank
from .ideal import DomainError, Exponent, MonomialIdeal, MultiIndex, exp_lcm, multi_power
from .saturation import IdealFamily, saturate

TAYLOR_BUDGET = 14


class ResourceError(RuntimeError):
    """The requested computation exceeds a configured budget."""


BettiTable = dict[tuple[int, Exponent], int]


def _check(ideal: MonomialIdeal):
    if ideal.is_zero():
        raise DomainError("Betti numbers of R/(0) are not supported")


def _unit_table(ideal: MonomialIdeal) -> BettiTable:
    return {}  # R/R = 0


# -- Taylor strands -----------------------------------------------------------

def _subset_lcms(gens: Sequence[Exponent]) -> list[Exponent]:
    s = len(gens)
    d = len(gens[0])
    lcms: list[Exponent] = [(0,) * d] * (1 << s)
    for mask in range(1, 1 << s):
        low = mask & -mask
        j = low.bit_length() - 1
        lcms[mask] = exp_lcm(lcms[mask ^ low], gens[j])
    return lcms


def _boundary_columns(masks: Sequence[int], index: dict[int, int], lcms):
    """Columns of the Taylor boundary tensored with the residue field.

    A face survives only when dropping the generator keeps the lcm (the
    coefficient is otherwise a nonconstant monomial); rows index ``index``.
    """
    cols = []
    for mask in masks:
        col = {}
        pos = 0
        bits = mask
        while bits:
            low = bits & -bits
            face = mask ^ low
            if lcms[face] == lcms[mask] and face in index:
                col[index[face]] = -1 if pos % 2 else 1
            pos += 1
            bits ^= low
        cols.append(col)
    return cols


def taylor_betti(ideal: MonomialIdeal, budget: int = TAYLOR_BUDGET) -> BettiTable:
    """Graded Betti numbers of ``R/ideal`` from the strands of the Taylor complex."""
    _check(ideal)
    if ideal.is_unit():
        return _unit_table(ideal)
    gens = ideal.gens
    if len(gens) > budget:
        raise ResourceError(f"{len(gens)} generators exceed the Taylor budget of {budget}")
    lcms = _subset_lcms(gens)
    strands: dict[Exponent, dict[int, list[int]]] = defaultdict(lambda: defaultdict(list))
    for mask, a in enumerate(lcms):
        strands[a][bin(mask).count("1")].append(mask)
    table: BettiTable = {}
    for a, by_size in strands.items():
        ranks = {}
        for k, masks in by_size.items():
            if k == 0:
                ranks[k] = 0
                continue
            lower = by_size.get(k - 1, [])
            index = {m: i for i, m in enumerate(lower)}
            ranks[k] = sparse_rank(_boundary_columns(masks, index, lcms)) if lower else 0
        for k, masks in by_size.items():
            beta = len(masks) - ranks[k] - ranks.get(k + 1, 0)
            if beta:
                table[(k, a)] = beta
    return table


def taylor_degree_betti(ideal: MonomialIdeal, budget: int = 10) -> dict[tuple[int, int], int]:
    """Betti numbers ``beta_{k,j}(R/I)`` graded by total degree only.

    Homology of the whole Taylor complex tensored with the residue field,
    split only by homological and total degree.  Used as a brute-force
    cross-check for :func:`taylor_betti`.
    """
    _check(ideal)
    if ideal.is_unit():
        return {}
    gens = ideal.gens
    if len(gens) > budget:
        raise ResourceError(f"{len(gens)} generators exceed the budget of {budget}")
    lcms = _subset_lcms(gens)
    cells: dict[tuple[int, int], list[int]] = defaultdict(list)
    for mask, a in enumerate(lcms):
        cells[(bin(mask).count("1"), sum(a))].append(mask)
    ranks: dict[tuple[int, int], int] = {}
    for (k, j), masks in cells.items():
        lower = cells.get((k - 1, j), [])
        index = {m: i for i, m in enumerate(lower)}
        ranks[(k, j)] = sparse_rank(_boundary_columns(masks, index, lcms)) if lower and k else 0
    out = {}
    for (k, j), masks in cells.items():
        beta = len(masks) - ranks[(k, j)] - ranks.get((k + 1, j), 0)
        if beta:
            out[(k, j)] = beta
    return out


# -- upper Koszul simplicial complexes ---------------------------------------

def lcm_lattice(gens: Sequence[Exponent]) -> set[Exponent]:
    """All lcms of nonempty generator subsets."""
    lattice: set[Exponent] = set()
    for g in gens:
        lattice |= {exp_lcm(a, g) for a in lattice}
        lattice.add(g)
    return lattice


def _reduced_homology(faces: list[frozenset[int]]) -> dict[int, int]:
    """Reduced Betti numbers of a simplicial complex given by all its faces (including the empty face)."""
    by_dim: dict[int, list[frozenset[int]]] = defaultdict(list)
    for f in faces:
        by_dim[len(f) - 1].append(f)
    ranks = {}
    for q, fs in by_dim.items():
        lower = by_dim.get(q - 1)
        if not lower:
            ranks[q] = 0
            continue
        index = {f: i for i, f in enumerate(lower)}
        cols = []
        for f in fs:
            verts = sorted(f)
            cols.append({index[f - {v}]: (-1 if p % 2 else 1) for p, v in enumerate(verts)})
        ranks[q] = sparse_rank(cols)
    return {q: len(fs) - ranks[q] - ranks.get(q + 1, 0) for q, fs in by_dim.items()}


def koszul_betti(ideal: MonomialIdeal) -> BettiTable:
    """Graded Betti numbers of ``R/ideal`` via upper Koszul simplicial complexes."""
    _check(ideal)
    if ideal.is_unit():
        return _unit_table(ideal)
    d = ideal.ring.num_vars
    table: BettiTable = {(0, (0,) * d): 1}
    for a in lcm_lattice(ideal.gens):
        supp = [i for i in range(d) if a[i]]
        faces = []
        for size in range(len(supp) + 1):
            for f in combinations(supp, size):
                b = tuple(x - (1 if i in f else 0) for i, x in enumerate(a))
                if ideal.contains(b):
                    faces.append(frozenset(f))
        for q, h in _reduced_homology(faces).items():
            if h:
                # beta_{i,a}(I) = h~_{i-1}(K^a) and beta_{i+1,a}(R/I) = beta_{i,a}(I).
                table[(q + 2, a)] = h
    return table


def regularity_from_betti(table: BettiTable) -> int:
    """``reg(R/I) = max |a| - k`` over nonzero ``beta_{k,a}``."""
    return max(sum(a) - k for (k, a) in table)


def regularity(ideal: MonomialIdeal, method: str = "koszul") -> int:
    """``reg(I)``; the unit ideal has regularity 0 by convention."""
    _check(ideal)
    if ideal.is_unit():
        return 0
    if method == "koszul":
        table = koszul_betti(ideal)
    elif method == "taylor":
        table = taylor_betti(ideal)
    else:
        raise ValueError(f"unknown method {method!r}")
    return regularity_from_betti(table) + 1


def d_of(ideal: MonomialIdeal) -> int:
    """Largest total degree of a minimal generator."""
    if ideal.is_zero():
        raise DomainError("d(I) is undefined for the zero ideal")
    return max(sum(g) for g in ideal.gens)


def betti_to_csv(table: BettiTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "multidegree", "beta"])
    for (k, a), beta in sorted(table.items(), key=lambda t: (t[0][0], sum(t[0][1]), t[0][1])):
        w.writerow([k, ":".join(str(x) for x in a), beta])
    return buf.getvalue()


@dataclass
class LinearBoundReport:
    """Empirical check of ``reg(I^n) <= sum n_i d(I_i) + e + 1``."""

    d_values: tuple[int, ...]
    regs: dict[MultiIndex, int]
    defects: dict[MultiIndex, int]
    e_emp: int
    stabilized: bool
    saturated_regs: dict[MultiIndex, int] = field(default_factory=dict)
    closure_regs: dict[MultiIndex, int] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def bound(self, n: MultiIndex) -> int:
        return sum(k * dv for k, dv in zip(n, self.d_values)) + self.e_emp + 1

    def render(self) -> str:
        lines = [
            f"d = {list(self.d_values)}",
            f"e_emp = {self.e_emp}",
            f"stabilized = {self.stabilized}",
        ]
        for n in sorted(self.regs, key=lambda n: (sum(n), n)):
            row = f"n = {','.join(map(str, n))}: reg = {self.regs[n]}, defect = {self.defects[n]}, bound = {self.bound(n)}"
            if n in self.saturated_regs:
                row += f", reg_sat = {self.saturated_regs[n]}"
            if n in self.closure_regs:
                row += f", reg_closure = {self.closure_regs[n]}"
            lines.append(row)
        lines.append("result = " + ("PASS" if self.passed else "FAIL: " + "; ".join(self.failures)))
        return "\n".join(lines) + "\n"


def linear_bound_check(
    family: IdealFamily,
    grid: Sequence[MultiIndex],
    with_saturation: bool = False,
    with_closure: bool = False,
) -> LinearBoundReport:
    """Defects ``reg(I^n) - sum n_i d(I_i)`` over ``grid`` and the ceiling ``e_emp``.

    ``e_emp`` is the smallest constant making the linear bound hold on the
    grid for the powers themselves.  The saturated (and integrally closed)
    variants are then checked against the same bound.  ``stabilized``
    records whether the defect is constant on the two outermost norm layers.
    """
    if with_saturation:
        family.require_j()
        if family.ring.num_vars < 2:
            raise DomainError("the saturated variant needs at least two variables")
    grid = [tuple(n) for n in grid]
    d_values = tuple(d_of(ideal) for ideal in family.ideals)
    regs, defects, sat_regs, clo_regs = {}, {}, {}, {}
    for n in grid:
        power = multi_power(family.ideals, n)
        regs[n] = regularity(power)
        defects[n] = regs[n] - sum(k * dv for k, dv in zip(n, d_values))
    e_emp = max(defects.values()) - 1
    top = max(sum(n) for n in grid)
    outer = {defects[n] for n in grid if sum(n) >= top - 1}
    report = LinearBoundReport(d_values, regs, defects, e_emp, len(outer) == 1 and len(grid) > 1)
    for n in grid:
        bound = report.bound(n)
        if regs[n] > bound:
            report.failures.append(f"reg(I^{n}) = {regs[n]} > {bound}")
        if with_saturation:
            sat = saturate(multi_power(family.ideals, n), family.j_gens)
            sat_regs[n] = regularity(sat) if not sat.is_zero() else 0
            if sat_regs[n] > bound:
                report.failures.append(f"reg(I^{n} : J^oo) = {sat_regs[n]} > {bound}")
        if with_closure:
            from .geometry import closure_of_multi_power

            clo = closure_of_multi_power(family.ideals, n)
            clo_regs[n] = regularity(clo)
            if clo_regs[n] > bound:
                report.failures.append(f"reg(closure of I^{n}) = {clo_regs[n]} > {bound}")
    report.saturated_regs = sat_regs
    report.closure_regs = clo_regs
    return report
