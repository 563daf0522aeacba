"""Exact monomial-ideal arithmetic over a fixed polynomial ring.

Monomials are exponent tuples; a :class:`MonomialIdeal` is stored as its
minimal generating antichain, sorted lexicographically, so equal ideals
compare (and hash) equal.  Variable indices are 0-based throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

Exponent = tuple[int, ...]
MultiIndex = tuple[int, ...]


class DimensionError(ValueError):
    """Exponent lengths or ring contexts do not match."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation (e.g. a zero ideal)."""


@dataclass(frozen=True)
class RingCtx:
    """Polynomial ring ``Q[X_1, ..., X_d]`` identified by its ordered variable names."""

    var_names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.var_names)
        object.__setattr__(self, "var_names", names)
        if not names:
            raise DomainError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate variable names in {names}")

    @classmethod
    def of(cls, names: str | Iterable[str]) -> RingCtx:
        if isinstance(names, str):
            names = names.replace(",", " ").split()
        return cls(tuple(names))

    @property
    def num_vars(self) -> int:
        return len(self.var_names)

    def zero_exponent(self) -> Exponent:
        return (0,) * self.num_vars

    def unit_vector(self, i: int) -> Exponent:
        return tuple(1 if j == i else 0 for j in range(self.num_vars))

    def check(self, exp: Sequence[int]) -> Exponent:
        exp = tuple(int(a) for a in exp)
        if len(exp) != self.num_vars:
            raise DimensionError(f"exponent {exp} has length {len(exp)}, ring has {self.num_vars} variables")
        if any(a < 0 for a in exp):
            raise DomainError(f"negative exponent in {exp}")
        return exp

    def maximal_ideal(self) -> MonomialIdeal:
        return MonomialIdeal(self, [self.unit_vector(i) for i in range(self.num_vars)])

    def unit_ideal(self) -> MonomialIdeal:
        return MonomialIdeal._from_minimal(self, (self.zero_exponent(),))

    def zero_ideal(self) -> MonomialIdeal:
        return MonomialIdeal._from_minimal(self, ())


def divides(a: Exponent, b: Exponent) -> bool:
    """True iff ``X^a`` divides ``X^b``."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def exp_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x if x > y else y for x, y in zip(a, b))


def exp_add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _minimal(exps: Iterable[Exponent]) -> tuple[Exponent, ...]:
    uniq = sorted(set(exps))
    if not uniq:
        return ()
    if len(uniq[0]) == 1:
        return (uniq[0],)
    if len(uniq[0]) == 2:
        # Staircase sweep: sorted by first exponent, keep strict drops in the second.
        kept2 = []
        best = None
        for e in uniq:
            if best is None or e[1] < best:
                kept2.append(e)
                best = e[1]
        return tuple(kept2)
    if len(uniq) > 96:
        return _minimal_numpy(uniq)
    # Ascending total degree guarantees a divisor is seen before its multiples.
    kept: list[Exponent] = []
    for e in sorted(uniq, key=sum):
        for k in kept:
            if divides(k, e):
                break
        else:
            kept.append(e)
    kept.sort()
    return tuple(kept)


def _minimal_numpy(uniq: list[Exponent]) -> tuple[Exponent, ...]:
    arr = np.asarray(uniq, dtype=np.int64)
    keep = np.ones(len(uniq), dtype=bool)
    for start in range(0, len(uniq), 512):
        block = arr[start:start + 512]
        # divides[i, j]: arr[i] divides block[j]; entries are distinct so i == j is the only self-hit.
        divides_ = (arr[:, None, :] <= block[None, :, :]).all(axis=2)
        keep[start:start + len(block)] &= divides_.sum(axis=0) == 1
    return tuple(e for e, k in zip(uniq, keep) if k)


@dataclass(frozen=True, init=False)
class MonomialIdeal:
    """Monomial ideal given by its canonical minimal generators.

    ``gens == ()`` is the zero ideal, ``gens == ((0,)*d,)`` the unit ideal.
    """

    ring: RingCtx
    gens: tuple[Exponent, ...]

    def __init__(self, ring: RingCtx, gens: Iterable[Sequence[int]] = ()):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "gens", _minimal(ring.check(g) for g in gens))

    @classmethod
    def _from_minimal(cls, ring: RingCtx, gens: tuple[Exponent, ...]) -> MonomialIdeal:
        obj = object.__new__(cls)
        object.__setattr__(obj, "ring", ring)
        object.__setattr__(obj, "gens", gens)
        return obj

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return len(self.gens) == 1 and not any(self.gens[0])

    def is_squarefree(self) -> bool:
        return all(a <= 1 for g in self.gens for a in g)

    def ngens(self) -> int:
        return len(self.gens)

    def contains(self, m: Sequence[int]) -> bool:
        m = self.ring.check(m)
        return any(divides(g, m) for g in self.gens)

    def __contains__(self, m) -> bool:
        return self.contains(m)

    def issubset(self, other: MonomialIdeal) -> bool:
        _same_ring(self, other)
        return all(other.contains(g) for g in self.gens)

    def __le__(self, other: MonomialIdeal) -> bool:
        return self.issubset(other)

    def __ge__(self, other: MonomialIdeal) -> bool:
        return other.issubset(self)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        _same_ring(self, other)
        return MonomialIdeal._from_minimal(self.ring, _minimal(self.gens + other.gens))

    def __mul__(self, other: MonomialIdeal) -> MonomialIdeal:
        _same_ring(self, other)
        return MonomialIdeal._from_minimal(
            self.ring, _minimal(exp_add(g, h) for g in self.gens for h in other.gens)
        )

    def __pow__(self, k: int) -> MonomialIdeal:
        return power(self, k)

    def __and__(self, other: MonomialIdeal) -> MonomialIdeal:
        return intersect(self, other)

    def colon(self, other: MonomialIdeal) -> MonomialIdeal:
        return colon(self, other)

    def max_exponents(self) -> Exponent:
        d = self.ring.num_vars
        return tuple(max((g[i] for g in self.gens), default=0) for i in range(d))

    def __str__(self) -> str:
        if self.is_zero():
            return "(0)"
        return "(" + ", ".join(format_monomial(g, self.ring) for g in reversed(self.gens)) + ")"

    def __repr__(self) -> str:
        return f"MonomialIdeal{self}"


def _same_ring(*ideals) -> RingCtx:
    ring = ideals[0].ring
    for other in ideals[1:]:
        if other.ring != ring:
            raise DimensionError(f"ring mismatch: {ring.var_names} vs {other.ring.var_names}")
    return ring


def format_monomial(exp: Exponent, ring: RingCtx) -> str:
    factors = []
    for name, a in zip(ring.var_names, exp):
        if a == 1:
            factors.append(name)
        elif a > 1:
            factors.append(f"{name}^{a}")
    return "*".join(factors) if factors else "1"


# ---------------------------------------------------------------------------
# Module-level operations
# ---------------------------------------------------------------------------

def minimalize(gens: Iterable[Sequence[int]], ring: RingCtx) -> MonomialIdeal:
    return MonomialIdeal(ring, gens)


def contains(ideal: MonomialIdeal, m: Sequence[int]) -> bool:
    return ideal.contains(m)


@lru_cache(maxsize=8192)
def power(ideal: MonomialIdeal, k: int) -> MonomialIdeal:
    """``ideal**k``; ``k = 0`` gives the unit ideal (also for the zero ideal)."""
    if k < 0:
        raise DomainError("negative power")
    if k == 0:
        return ideal.ring.unit_ideal()
    if k == 1:
        return ideal
    half = power(ideal, k // 2)
    result = half * half
    return result * ideal if k % 2 else result


def multi_power(family: Sequence[MonomialIdeal], n: Sequence[int]) -> MonomialIdeal:
    """``I_1^{n_1} ... I_r^{n_r}``."""
    if len(family) != len(n):
        raise DimensionError(f"{len(family)} ideals but multi-index {tuple(n)}")
    if not family:
        raise DomainError("empty family")
    ring = _same_ring(*family)
    result = ring.unit_ideal()
    for ideal, k in zip(family, n):
        if k:
            result = result * power(ideal, int(k))
    return result


def intersect(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    ring = _same_ring(a, b)
    return MonomialIdeal._from_minimal(ring, _minimal(exp_lcm(g, h) for g in a.gens for h in b.gens))


def intersect_all(ideals: Iterable[MonomialIdeal], ring: RingCtx) -> MonomialIdeal:
    result = ring.unit_ideal()
    for ideal in ideals:
        result = intersect(result, ideal)
    return result


def colon_monomial(ideal: MonomialIdeal, b: Exponent) -> MonomialIdeal:
    gens = (tuple(x - y if x > y else 0 for x, y in zip(g, b)) for g in ideal.gens)
    return MonomialIdeal._from_minimal(ideal.ring, _minimal(gens))


def colon(ideal: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    """``ideal : j`` for a nonzero monomial ideal ``j``."""
    ring = _same_ring(ideal, j)
    if j.is_zero():
        raise DomainError("colon by the zero ideal")
    return intersect_all((colon_monomial(ideal, h) for h in j.gens), ring)


def radical(ideal: MonomialIdeal) -> MonomialIdeal:
    gens = (tuple(1 if a else 0 for a in g) for g in ideal.gens)
    return MonomialIdeal._from_minimal(ideal.ring, _minimal(gens))


def project(ideal: MonomialIdeal, subset: Iterable[int]) -> MonomialIdeal:
    """Set the variables indexed by ``subset`` to 1 and extend back to the ring."""
    d = ideal.ring.num_vars
    subset = frozenset(subset)
    for i in subset:
        if not 0 <= i < d:
            raise DimensionError(f"variable index {i} out of range for {d} variables")
    gens = (tuple(0 if i in subset else a for i, a in enumerate(g)) for g in ideal.gens)
    return MonomialIdeal._from_minimal(ideal.ring, _minimal(gens))


def support(exp: Exponent) -> frozenset[int]:
    return frozenset(i for i, a in enumerate(exp) if a)


def is_irreducible(ideal: MonomialIdeal) -> bool:
    """Generated by pure powers of variables (the unit ideal does not count)."""
    return not ideal.is_unit() and all(len(support(g)) == 1 for g in ideal.gens)


def irreducible_decomposition(ideal: MonomialIdeal) -> list[MonomialIdeal]:
    """Irredundant decomposition into ideals generated by pure variable powers."""
    if ideal.is_zero():
        raise DomainError("the zero ideal has no irreducible decomposition")
    if ideal.is_unit():
        return []
    comps = set(_split(ideal))
    # For irreducible monomial ideals, C is redundant iff it contains another component.
    irredundant = [c for c in comps if not any(o != c and o.issubset(c) for o in comps)]
    return sorted(irredundant, key=lambda c: c.gens)


def _split(ideal: MonomialIdeal) -> list[MonomialIdeal]:
    ring = ideal.ring
    for g in ideal.gens:
        supp = sorted(support(g))
        if len(supp) >= 2:
            i = supp[0]
            pure = tuple(g[i] if j == i else 0 for j in range(ring.num_vars))
            rest = tuple(0 if j == i else a for j, a in enumerate(g))
            left = ideal + MonomialIdeal._from_minimal(ring, (pure,))
            right = ideal + MonomialIdeal._from_minimal(ring, (rest,))
            return _split(left) + _split(right)
    return [ideal]


# ---------------------------------------------------------------------------
# Sparse rational polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True, init=False)
class SparsePoly:
    """Polynomial with exact rational coefficients; ``terms`` is sorted by exponent."""

    ring: RingCtx
    terms: tuple[tuple[Exponent, Fraction], ...]

    def __init__(self, ring: RingCtx, terms: Mapping[Sequence[int], object] | Iterable = ()):
        acc: dict[Exponent, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, c in items:
            exp = ring.check(exp)
            acc[exp] = acc.get(exp, Fraction(0)) + Fraction(c)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", tuple(sorted((e, c) for e, c in acc.items() if c != 0)))

    @classmethod
    def monomial(cls, ring: RingCtx, exp: Sequence[int], coeff=1) -> SparsePoly:
        return cls(ring, {tuple(exp): coeff})

    @classmethod
    def variable(cls, ring: RingCtx, i: int) -> SparsePoly:
        return cls.monomial(ring, ring.unit_vector(i))

    @classmethod
    def constant(cls, ring: RingCtx, c) -> SparsePoly:
        return cls.monomial(ring, ring.zero_exponent(), c)

    def as_dict(self) -> dict[Exponent, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e, _ in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def support(self) -> list[Exponent]:
        return [e for e, _ in self.terms]

    def support_ideal(self) -> MonomialIdeal:
        """The monomial ideal generated by the monomials occurring in ``self``."""
        return MonomialIdeal(self.ring, self.support())

    def __add__(self, other: SparsePoly) -> SparsePoly:
        _same_poly_ring(self, other)
        return SparsePoly(self.ring, list(self.terms) + list(other.terms))

    def __neg__(self) -> SparsePoly:
        return SparsePoly(self.ring, [(e, -c) for e, c in self.terms])

    def __sub__(self, other: SparsePoly) -> SparsePoly:
        return self + (-other)

    def __mul__(self, other: SparsePoly) -> SparsePoly:
        _same_poly_ring(self, other)
        acc: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = exp_add(e1, e2)
                acc[e] = acc.get(e, 0) + c1 * c2
        return SparsePoly(self.ring, acc)

    def __pow__(self, k: int) -> SparsePoly:
        return poly_power(self, k)

    def __str__(self) -> str:
        return format_poly(self)


def _same_poly_ring(a: SparsePoly, b: SparsePoly):
    if a.ring != b.ring:
        raise DimensionError("polynomials live in different rings")


@lru_cache(maxsize=1024)
def poly_power(f: SparsePoly, k: int) -> SparsePoly:
    if k < 0:
        raise DomainError("negative power")
    if k == 0:
        return SparsePoly.constant(f.ring, 1)
    if k == 1:
        return f
    half = poly_power(f, k // 2)
    result = half * half
    return result * f if k % 2 else result


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(f: SparsePoly) -> str:
    if f.is_zero():
        return "0"
    # Highest total degree first, then reverse lex, for readability.
    ordered = sorted(f.terms, key=lambda t: (-sum(t[0]), tuple(-a for a in t[0])))
    out = []
    for idx, (exp, c) in enumerate(ordered):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        mono = format_monomial(exp, f.ring)
        if mono == "1":
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if idx == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# ---------------------------------------------------------------------------
# Multi-index helpers
# ---------------------------------------------------------------------------

def norm(n: Sequence[int]) -> int:
    return sum(n)


def multi_indices(r: int, max_norm: int, min_norm: int = 0) -> list[MultiIndex]:
    """All ``n`` in N^r with ``min_norm <= |n| <= max_norm`` in graded lexicographic order."""
    out = [n for n in product(range(max_norm + 1), repeat=r) if min_norm <= sum(n) <= max_norm]
    out.sort(key=lambda n: (sum(n), tuple(-a for a in n)))
    return out


def box_indices(lo: Sequence[int], hi: Sequence[int]) -> list[MultiIndex]:
    """All integer points of the box ``prod [lo_i, hi_i]`` in lexicographic order."""
    return list(product(*(range(a, b + 1) for a, b in zip(lo, hi))))
