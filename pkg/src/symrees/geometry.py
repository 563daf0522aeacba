"""Newton polyhedra of monomial ideals.

``NP(I)`` is the convex hull of the generator exponents plus the
nonnegative orthant.  Its lattice points are the exponents of the integral
closure of ``I``, and the largest compact face gives the analytic spread.

Feasibility questions (vertex detection, membership, positive supporting
normals) are exact rational LPs.  Bulk membership for closures uses the
inequality description obtained from the vertices of the blocking
polyhedron ``{w >= 0 : <w, v> >= 1 for all vertices v}``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import lcm
from typing import Sequence

import numpy as np

from .exact import affine_rank, lp_feasible, solve
from .ideal import DomainError, Exponent, MonomialIdeal, RingCtx, multi_power, project
from .saturation import IdealFamily, saturate_certified


def _in_hull_plus_orthant(point: Sequence[int], others: Sequence[Exponent]) -> bool:
    """Is ``point`` in conv(others) + R^d_{>=0}?"""
    if not others:
        return False
    k = len(others)
    d = len(point)
    a_ub = [[u[i] for u in others] for i in range(d)]
    return lp_feasible(a_eq=[[1] * k], b_eq=[1], a_ub=a_ub, b_ub=list(point), nvars=k) is not None


@dataclass(frozen=True)
class NewtonPolyhedron:
    ring: RingCtx
    vertices: tuple[Exponent, ...]
    # Integer inequalities <w, x> >= c describing NP together with x >= 0.
    facets: tuple[tuple[tuple[int, ...], int], ...] = field(default=(), compare=False, repr=False)

    def contains(self, point: Sequence[int]) -> bool:
        """Exact LP membership test."""
        if len(point) != self.ring.num_vars:
            raise DomainError("point has the wrong dimension")
        if any(v == p for v, p in ((tuple(v), tuple(point)) for v in self.vertices)):
            return True
        return _in_hull_plus_orthant(tuple(point), self.vertices)

    def satisfies_facets(self, point: Sequence[int]) -> bool:
        """Membership through the inequality description (fast path)."""
        return all(sum(w * x for w, x in zip(ws, point)) >= c for ws, c in self.facets)

    def scaled_box(self) -> Exponent:
        """Componentwise maximum of the vertices."""
        return tuple(max(v[i] for v in self.vertices) for i in range(self.ring.num_vars))


def newton_vertices(points: Sequence[Exponent]) -> tuple[Exponent, ...]:
    """Points not lying in the hull-plus-orthant of the remaining points."""
    pts = sorted(set(points))
    verts = []
    for i, v in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        if not _in_hull_plus_orthant(v, others):
            verts.append(v)
    return tuple(verts)


def _blocker_facets(vertices: Sequence[Exponent], d: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    if any(not any(v) for v in vertices):
        return ()  # unit ideal: NP is the whole orthant
    rows = [list(v) for v in vertices] + [[1 if j == i else 0 for j in range(d)] for i in range(d)]
    rhs = [1] * len(vertices) + [0] * d
    found = set()
    for idx in combinations(range(len(rows)), d):
        w = solve([rows[i] for i in idx], [rhs[i] for i in idx])
        if w is None or any(x < 0 for x in w):
            continue
        if all(sum(wi * vi for wi, vi in zip(w, v)) >= 1 for v in vertices):
            scale = lcm(*(x.denominator for x in w))
            found.add((tuple(int(x * scale) for x in w), scale))
    return tuple(sorted(found))


def _polyhedron_from_points(ring: RingCtx, points: Sequence[Exponent]) -> NewtonPolyhedron:
    verts = newton_vertices(points)
    return NewtonPolyhedron(ring, verts, _blocker_facets(verts, ring.num_vars))


@lru_cache(maxsize=4096)
def newton_polyhedron(ideal: MonomialIdeal) -> NewtonPolyhedron:
    if ideal.is_zero():
        raise DomainError("the zero ideal has no Newton polyhedron")
    return _polyhedron_from_points(ideal.ring, ideal.gens)


def multi_power_polyhedron(ideals: Sequence[MonomialIdeal], n: Sequence[int]) -> NewtonPolyhedron:
    """``NP(I_1^{n_1} ... I_r^{n_r}) = sum_k n_k NP(I_k)``, from the factors' vertices."""
    ring = ideals[0].ring
    if any(ideal.is_zero() for ideal, k in zip(ideals, n) if k):
        raise DomainError("the zero ideal has no Newton polyhedron")
    vert_sets = [newton_polyhedron(ideal).vertices for ideal, k in zip(ideals, n) if k]
    if not vert_sets:
        return newton_polyhedron(ring.unit_ideal())
    scales = [k for k in n if k]
    candidates = set()
    for combo in product(*vert_sets):
        candidates.add(tuple(sum(s * v[i] for s, v in zip(scales, combo)) for i in range(ring.num_vars)))
    # Discard candidates dominated by another candidate before the LP filter.
    cands = MonomialIdeal(ring, candidates).gens
    return _polyhedron_from_points(ring, cands)


def _closure_from_polyhedron(poly: NewtonPolyhedron) -> MonomialIdeal:
    ring = poly.ring
    if not poly.facets:
        return ring.unit_ideal()
    box = poly.scaled_box()
    grids = np.indices(tuple(b + 1 for b in box)).reshape(ring.num_vars, -1).T
    inside = np.ones(len(grids), dtype=bool)
    for ws, c in poly.facets:
        inside &= grids @ np.asarray(ws, dtype=np.int64) >= c
    mask = inside.reshape(tuple(b + 1 for b in box))
    minimal = mask.copy()
    for axis in range(ring.num_vars):
        below = np.zeros_like(mask)
        sl_dst = [slice(None)] * ring.num_vars
        sl_src = [slice(None)] * ring.num_vars
        sl_dst[axis] = slice(1, None)
        sl_src[axis] = slice(None, -1)
        below[tuple(sl_dst)] = mask[tuple(sl_src)]
        minimal &= ~below
    gens = [tuple(int(x) for x in p) for p in np.argwhere(minimal)]
    return MonomialIdeal(ring, gens)


def integral_closure(ideal: MonomialIdeal) -> MonomialIdeal:
    """Monomials whose exponents lie in ``NP(ideal)``."""
    if ideal.is_zero():
        raise DomainError("integral closure of the zero ideal is not supported")
    return _closure_from_polyhedron(newton_polyhedron(ideal))


def closure_of_multi_power(ideals: Sequence[MonomialIdeal], n: Sequence[int]) -> MonomialIdeal:
    return _closure_from_polyhedron(multi_power_polyhedron(ideals, n))


def closure_by_lp(ideal: MonomialIdeal) -> MonomialIdeal:
    """Integral closure by one LP per box point; slow reference implementation."""
    poly = newton_polyhedron(ideal)
    box = poly.scaled_box()
    pts = [p for p in product(*(range(b + 1) for b in box)) if poly.contains(p)]
    return MonomialIdeal(ideal.ring, pts)


def _has_positive_normal(face: Sequence[Exponent], vertices: Sequence[Exponent]) -> bool:
    """Is there ``w > 0`` minimised over ``vertices`` on all of ``face``?

    Variables: ``w = 1 + w'`` with ``w' >= 0`` (scaling makes ``w >= 1``
    equivalent to ``w > 0``) and the level ``h = h+ - h-``.
    """
    d = len(face[0])
    a_eq, b_eq, a_ub, b_ub = [], [], [], []
    for t in face:
        a_eq.append(list(t) + [-1, 1])
        b_eq.append(-sum(t))
    for u in vertices:
        if u in face:
            continue
        a_ub.append([-x for x in u] + [1, -1])
        b_ub.append(sum(u))
    return lp_feasible(a_eq, b_eq, a_ub, b_ub, nvars=d + 2) is not None


def max_compact_face_dim(poly: NewtonPolyhedron) -> int:
    verts = list(poly.vertices)
    d = poly.ring.num_vars
    for k in range(min(d, len(verts)) - 1, -1, -1):
        for face in combinations(verts, k + 1):
            if affine_rank(face) == k and _has_positive_normal(face, verts):
                return k
    raise AssertionError("every vertex is a compact face")


def analytic_spread(ideal: MonomialIdeal) -> int:
    """One plus the largest dimension of a compact face of ``NP(ideal)``."""
    if ideal.is_zero() or ideal.is_unit():
        raise DomainError("analytic spread needs a nonzero proper ideal")
    return 1 + max_compact_face_dim(newton_polyhedron(ideal))


def multi_analytic_spread(ideals: Sequence[MonomialIdeal]) -> int:
    """Spread of the multi-Rees algebra: spread of the product plus ``r - 1``."""
    return analytic_spread(multi_power(ideals, (1,) * len(ideals))) + len(ideals) - 1


class Inclusion(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    NOT_APPLICABLE = "not-applicable"


def _candidate_prime_supports(family: IdealFamily) -> list[frozenset[int]]:
    """Variable sets ``S`` that may occur as ``{i : X_i in P}`` for a prime ``P`` containing ``J``.

    ``S`` is dropped only when some generator of ``J``, after killing the
    variables in ``S``, becomes a nonzero monomial in the remaining
    variables (which no such prime can contain).
    """
    d = family.ring.num_vars
    out = []
    for size in range(d + 1):
        for s in combinations(range(d), size):
            s = frozenset(s)
            ok = True
            for f in family.j_gens:
                rest = [e for e in f.support() if not any(e[i] for i in s)]
                if len(rest) == 1:
                    ok = False
                    break
            if ok:
                out.append(s)
    return out


def spread_hypothesis_holds(family: IdealFamily) -> bool:
    """Spread of the localised product at most ``dim R_P - 1`` for every prime ``P`` over ``J``.

    Localising a monomial ideal at ``P`` inverts the variables outside
    ``P``; the spread only depends on the variable set ``S`` of ``P`` and
    ``dim R_P >= |S|``, so checking ``spread(project(product, S^c)) <= |S| - 1``
    over all candidate ``S`` is sufficient.  Primes where the product
    becomes the unit ideal impose no condition.
    """
    family.require_j()
    prod = multi_power(family.ideals, (1,) * family.r)
    if prod.is_zero():
        return False
    d = family.ring.num_vars
    for s in _candidate_prime_supports(family):
        local = project(prod, [i for i in range(d) if i not in s])
        if local.is_unit():
            continue
        if analytic_spread(local) > len(s) - 1:
            return False
    return True


def closure_inclusion_check(family: IdealFamily, n: Sequence[int]) -> Inclusion:
    """``I^n : J^oo`` contained in the integral closure of ``I^n``, when the spread hypothesis holds."""
    if not spread_hypothesis_holds(family):
        return Inclusion.NOT_APPLICABLE
    n = tuple(n)
    sat = saturate_certified(family, n)
    poly = multi_power_polyhedron(family.ideals, n)
    ok = all(poly.satisfies_facets(g) for g in sat.gens)
    return Inclusion.HOLDS if ok else Inclusion.FAILS
