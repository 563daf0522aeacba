"""Saturations of products of powers of monomial ideals.

Two independent routes compute ``I^n : J^oo``:

* the certified route (:func:`saturate_certified`) saturates the product by
  each generator ``f`` of ``J`` through a chain of colons by support ideals
  of powers of ``f``, and only returns once the result is provably
  saturated;
* the planned route (:func:`saturate_planned`) precomputes, once per family,
  the variable subsets ``F`` cut out by the squarefree ideals attached to
  the generators of ``J``, and then writes the saturation as an
  intersection of products of powers of projected ideals.  No colon is
  evaluated per multi-index.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import ceil
from typing import Iterable, Sequence

from .ideal import (
    DimensionError,
    DomainError,
    MonomialIdeal,
    MultiIndex,
    RingCtx,
    SparsePoly,
    colon,
    intersect,
    intersect_all,
    irreducible_decomposition,
    multi_indices,
    multi_power,
    poly_power,
    project,
    radical,
    support,
)

log = logging.getLogger(__name__)


class PlanValidationError(RuntimeError):
    """A saturation plan disagreed with the certified route after all escalations."""

    def __init__(self, message: str, counterexample: MultiIndex):
        super().__init__(message)
        self.counterexample = counterexample


@dataclass(frozen=True)
class IdealFamily:
    """Monomial ideals ``I_1, ..., I_r`` together with generators of ``J``.

    An empty ``j_gens`` means ``J`` is unspecified; operations that need
    ``J`` reject such a family.
    """

    ring: RingCtx
    ideals: tuple[MonomialIdeal, ...]
    j_gens: tuple[SparsePoly, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ideals", tuple(self.ideals))
        object.__setattr__(self, "j_gens", tuple(self.j_gens))
        if not self.ideals:
            raise DomainError("a family needs at least one ideal")
        for ideal in self.ideals:
            if ideal.ring != self.ring:
                raise DimensionError("family members must share the ring")
        for f in self.j_gens:
            if f.ring != self.ring:
                raise DimensionError("generators of J must live in the family's ring")
            if f.is_zero():
                raise DomainError("generators of J must be nonzero")

    @classmethod
    def saturated(cls, ideals: Sequence[MonomialIdeal]) -> IdealFamily:
        """Family with ``J`` the maximal ideal of the variables."""
        ring = ideals[0].ring
        return cls(ring, tuple(ideals), maximal_ideal_gens(ring))

    @classmethod
    def with_monomial_j(cls, ideals: Sequence[MonomialIdeal], j: MonomialIdeal) -> IdealFamily:
        return cls(j.ring, tuple(ideals), tuple(SparsePoly.monomial(j.ring, g) for g in j.gens))

    @property
    def r(self) -> int:
        return len(self.ideals)

    def replace_ideals(self, ideals: Sequence[MonomialIdeal]) -> IdealFamily:
        return IdealFamily(self.ring, tuple(ideals), self.j_gens)

    def j_is_monomial(self) -> bool:
        return all(f.is_monomial() for f in self.j_gens)

    def j_monomial_ideal(self) -> MonomialIdeal:
        if not self.j_is_monomial():
            raise DomainError("J is not generated by monomials")
        return MonomialIdeal(self.ring, [f.support()[0] for f in self.j_gens])

    def require_j(self):
        if not self.j_gens:
            raise DomainError("this operation needs generators of J")


def maximal_ideal_gens(ring: RingCtx) -> tuple[SparsePoly, ...]:
    return tuple(SparsePoly.variable(ring, i) for i in range(ring.num_vars))


# ---------------------------------------------------------------------------
# Colons and saturations by a single polynomial
# ---------------------------------------------------------------------------

def _nonzero(f: SparsePoly):
    if f.is_zero():
        raise DomainError("the zero polynomial is not allowed here")


def colon_by_poly(ideal: MonomialIdeal, f: SparsePoly) -> MonomialIdeal:
    """Monomials ``m`` with ``m f`` in ``ideal``, i.e. ``ideal : J_f``.

    A monomial times ``f`` has distinct terms, so it lies in a monomial
    ideal exactly when every term does.
    """
    _nonzero(f)
    return colon(ideal, f.support_ideal())


@lru_cache(maxsize=65536)
def saturate_by_poly(ideal: MonomialIdeal, f: SparsePoly) -> MonomialIdeal:
    """``ideal : (f)^oo`` through colons by support ideals of ``f^k``.

    ``T_k = ideal : J_{f^k}`` is an ascending chain inside the saturation.
    The loop stops at the first ``T_k`` with ``T_k : J_f = T_k``; such a
    ``T_k`` contains ``ideal : J_f^oo``, which equals the saturation, so the
    returned value is exact rather than a heuristic fixed point.  ``k`` runs
    through 1, 2, 4, ... because the certificate does not need consecutive
    indices.
    """
    _nonzero(f)
    if ideal.is_zero() or ideal.is_unit():
        return ideal
    jf = f.support_ideal()
    if jf.is_unit():
        return ideal
    k = 1
    while True:
        current = colon(ideal, poly_power(f, k).support_ideal())
        if colon(current, jf) == current:
            return current
        k *= 2


def saturate(ideal: MonomialIdeal, j_gens: Sequence[SparsePoly]) -> MonomialIdeal:
    """``ideal : J^oo`` as the intersection of saturations by the generators of ``J``."""
    if not j_gens:
        raise DomainError("J has no generators")
    return intersect_all((saturate_by_poly(ideal, f) for f in j_gens), ideal.ring)


def saturate_by_monomial_ideal(ideal: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    """``ideal : j^oo`` by the colon chain ``ideal : j^k`` (stable once two steps agree)."""
    if j.is_zero():
        raise DomainError("saturation by the zero ideal")
    current = ideal
    while True:
        nxt = colon(current, j)
        if nxt == current:
            return current
        current = nxt


def saturate_via_decomposition(ideal: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    """``ideal : j^oo`` by discarding irreducible components whose radical contains ``j``."""
    if ideal.is_zero():
        return ideal
    keep = [q for q in irreducible_decomposition(ideal) if not j.issubset(radical(q))]
    return intersect_all(keep, ideal.ring)


# ---------------------------------------------------------------------------
# Squarefree ideal attached to a polynomial
# ---------------------------------------------------------------------------

def radical_support(f: SparsePoly, n: int) -> MonomialIdeal:
    """``sqrt(J_{f^n})``."""
    return radical(poly_power(f, n).support_ideal())


def associated_squarefree_witness(f: SparsePoly, start: int = 1, max_n: int = 1 << 12) -> tuple[MonomialIdeal, int]:
    """Stable value of ``sqrt(J_{f^n})`` and the witness ``n`` of the doubling test.

    Returns ``(Q, n)`` with ``Q = sqrt(J_{f^n}) = sqrt(J_{f^{2n}})``.
    """
    _nonzero(f)
    n = max(1, start)
    while n <= max_n:
        q = radical_support(f, n)
        if radical_support(f, 2 * n) == q:
            return q, n
        n *= 2
    raise RuntimeError(f"radical chain of {f} did not settle by n = {max_n}")


def associated_squarefree(f: SparsePoly) -> MonomialIdeal:
    return associated_squarefree_witness(f)[0]


# ---------------------------------------------------------------------------
# Saturation plans
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SaturationPlan:
    """Projection data for n-independent saturation of multi-powers.

    ``projections[j]`` is a variable subset ``F``; ``projected[j][k]`` is the
    ideal obtained from ``ideals[k]`` by setting the variables in ``F`` to 1.
    ``probes`` lists the multi-indices on which the plan was validated.
    """

    ring: RingCtx
    ideals: tuple[MonomialIdeal, ...]
    projections: tuple[frozenset[int], ...]
    projected: tuple[tuple[MonomialIdeal, ...], ...]
    window: int = 1
    probes: tuple[MultiIndex, ...] = field(default=(), compare=False)


def _plan_projections(family: IdealFamily, window: int) -> list[frozenset[int]]:
    subsets: set[frozenset[int]] = set()
    for f in family.j_gens:
        if f.is_monomial():
            # The squarefree ideal of a monomial is generated by its support.
            subsets.add(support(f.support()[0]))
            continue
        q, _ = associated_squarefree_witness(f, start=window)
        subsets.update(support(g) for g in q.gens)
    return sorted(subsets, key=lambda s: (len(s), sorted(s)))


def build_plan(family: IdealFamily, probe_norm: int = 3, escalations: int = 3) -> SaturationPlan:
    """Construct and validate a :class:`SaturationPlan` for ``family``.

    The plan is checked against :func:`saturate_certified` on every
    multi-index of norm at most ``probe_norm``.  On a mismatch the doubling
    window is widened and the plan rebuilt, up to ``escalations`` times.
    """
    family.require_j()
    probes = tuple(multi_indices(family.r, probe_norm))
    window = 1
    bad: MultiIndex | None = None
    for attempt in range(escalations + 1):
        subsets = _plan_projections(family, window)
        plan = SaturationPlan(
            family.ring,
            family.ideals,
            tuple(subsets),
            tuple(tuple(project(ideal, s) for ideal in family.ideals) for s in subsets),
            window,
            probes,
        )
        bad = next((n for n in probes if saturate_planned(plan, family, n) != saturate_certified(family, n)), None)
        if bad is None:
            return plan
        log.warning("saturation plan failed at n=%s (window %d); escalating", bad, window)
        window *= 2
    raise PlanValidationError(f"saturation plan still disagrees at n={bad} after {escalations} escalations", bad)


def saturate_planned(plan: SaturationPlan, family: IdealFamily, n: Sequence[int]) -> MonomialIdeal:
    if plan.ring != family.ring:
        raise DimensionError("plan and family live in different rings")
    if plan.ideals != family.ideals:
        raise DomainError("plan was built for a different family")
    n = tuple(n)
    return intersect_all((multi_power(list(proj), n) for proj in plan.projected), family.ring)


def saturate_certified(family: IdealFamily, n: Sequence[int]) -> MonomialIdeal:
    """``I^n : J^oo`` via certified colon chains, one generator of ``J`` at a time."""
    family.require_j()
    return saturate(multi_power(family.ideals, tuple(n)), family.j_gens)


# ---------------------------------------------------------------------------
# Identities and empirical invariants
# ---------------------------------------------------------------------------

def double_saturation_check(family: IdealFamily, a: Sequence[int]) -> bool:
    """Compare ``(prod (I_i : J^oo)^{a_i}) : J^oo`` with ``(prod I_i^{a_i}) : J^oo``."""
    family.require_j()
    saturated = [saturate(ideal, family.j_gens) for ideal in family.ideals]
    lhs = saturate(multi_power(saturated, tuple(a)), family.j_gens)
    rhs = saturate_certified(family, a)
    return lhs == rhs


def j_power_surrogate(family: IdealFamily, k: int) -> MonomialIdeal:
    """Monomial ideal whose colon gives the monomials of ``I : J^k``.

    ``J^k`` is generated by the products ``f^beta`` with ``|beta| = k``; a
    monomial lies in ``I : (g)`` iff it lies in ``I : J_g``.  For monomial
    ``J`` this is just ``J^k``.
    """
    if family.j_is_monomial():
        return family.j_monomial_ideal() ** k
    ring = family.ring
    gens = list(family.j_gens)
    result = ring.zero_ideal()
    for beta in multi_indices(len(gens), k, k):
        g = SparsePoly.constant(ring, 1)
        for f, e in zip(gens, beta):
            if e:
                g = g * poly_power(f, e)
        result = result + g.support_ideal()
    return result


@dataclass
class AlphaReport:
    """Stabilisation indices ``k(n)`` and the empirical slope ``alpha``."""

    k: dict[MultiIndex, int]
    alpha: int

    def bound_holds(self, alpha: int | None = None) -> bool:
        a = self.alpha if alpha is None else alpha
        return all(k <= a * sum(n) for n, k in self.k.items())


def stabilization_index(family: IdealFamily, n: Sequence[int]) -> int:
    """Least ``k`` with ``I^n : J^k = I^n : J^{k+1}`` (= the saturation)."""
    family.require_j()
    base = multi_power(family.ideals, tuple(n))
    target = saturate_certified(family, n)

    def reached(k: int) -> bool:
        return colon(base, j_power_surrogate(family, k)) == target

    if base == target:
        return 0
    hi = 1
    while not reached(hi):
        hi *= 2
    lo = hi // 2  # reached(lo) is False (or lo == 0, already excluded)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if reached(mid):
            hi = mid
        else:
            lo = mid
    return hi


def alpha_stabilization(family: IdealFamily, grid_bound: int) -> AlphaReport:
    ks = {n: stabilization_index(family, n) for n in multi_indices(family.r, grid_bound, 1)}
    alpha = max((ceil(k / sum(n)) for n, k in ks.items()), default=0)
    return AlphaReport(ks, alpha)


def rees_generation_degrees(family: IdealFamily, max_norm: int) -> list[tuple[MultiIndex, int]]:
    """Count minimal generators of each graded piece not produced by lower pieces.

    For each ``n`` with ``1 <= |n| <= max_norm`` the piece ``S_n`` is compared
    with the sum of ``S_a S_b`` over ``a + b = n`` with ``a, b != 0``.  The
    algebra is standard graded up to ``max_norm`` iff every count with
    ``|n| >= 2`` is zero.
    """
    if max_norm < 1:
        raise DomainError("max_norm must be at least 1")
    family.require_j()
    ring = family.ring
    pieces: dict[MultiIndex, MonomialIdeal] = {}
    out = []
    for n in multi_indices(family.r, max_norm, 1):
        s_n = saturate_certified(family, n)
        pieces[n] = s_n
        lower = ring.zero_ideal()
        for a in _proper_parts(n):
            b = tuple(x - y for x, y in zip(n, a))
            lower = lower + pieces[a] * pieces[b]
        out.append((n, sum(1 for g in s_n.gens if not lower.contains(g))))
    return out


def _proper_parts(n: MultiIndex) -> Iterable[MultiIndex]:
    for a in multi_indices(len(n), sum(n) - 1, 1):
        if all(x <= y for x, y in zip(a, n)):
            yield a
