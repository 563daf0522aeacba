"""Random instance generators and the property suites run by ``symrees check``."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Callable

from .asymptotics import INFINITE, closed_form_2d, count_quotient
from .geometry import Inclusion, closure_by_lp, closure_inclusion_check, integral_closure
from .ideal import (
    MonomialIdeal,
    RingCtx,
    SparsePoly,
    box_indices,
    colon,
    intersect_all,
    irreducible_decomposition,
    multi_power,
    radical,
)
from .regularity import koszul_betti, taylor_betti
from .saturation import (
    IdealFamily,
    build_plan,
    double_saturation_check,
    saturate_certified,
    saturate_planned,
    saturate_via_decomposition,
)

VAR_NAMES = "XYZWUV"


def ring_of(d: int) -> RingCtx:
    return RingCtx(tuple(VAR_NAMES[:d]))


def random_ideal(rng: random.Random, ring: RingCtx, max_gens: int = 4, max_exp: int = 3) -> MonomialIdeal:
    """Nonzero proper monomial ideal with up to ``max_gens`` generators."""
    d = ring.num_vars
    while True:
        gens = [tuple(rng.randint(0, max_exp) for _ in range(d)) for _ in range(rng.randint(1, max_gens))]
        ideal = MonomialIdeal(ring, gens)
        if not ideal.is_unit():
            return ideal


def random_poly(rng: random.Random, ring: RingCtx, max_terms: int = 3, max_exp: int = 2) -> SparsePoly:
    """Nonconstant polynomial with small integer coefficients."""
    d = ring.num_vars
    while True:
        terms = [
            (tuple(rng.randint(0, max_exp) for _ in range(d)), rng.choice([-2, -1, 1, 1, 2, 3]))
            for _ in range(rng.randint(1, max_terms))
        ]
        f = SparsePoly(ring, terms)
        if not f.is_zero() and not f.is_constant():
            return f


def random_family(
    rng: random.Random,
    d: int,
    r: int,
    j_kind: str = "m",
    max_gens: int = 4,
    max_exp: int = 3,
) -> IdealFamily:
    """``j_kind`` is ``"m"``, ``"poly"`` (one polynomial) or ``"monomial"`` (a random monomial ideal)."""
    ring = ring_of(d)
    ideals = [random_ideal(rng, ring, max_gens, max_exp) for _ in range(r)]
    if j_kind == "m":
        return IdealFamily.saturated(ideals)
    if j_kind == "poly":
        return IdealFamily(ring, tuple(ideals), (random_poly(rng, ring),))
    if j_kind == "monomial":
        return IdealFamily.with_monomial_j(ideals, random_ideal(rng, ring, 3, 2))
    raise ValueError(f"unknown J kind {j_kind!r}")


def random_index(rng: random.Random, r: int, max_norm: int, min_norm: int = 1) -> tuple[int, ...]:
    while True:
        n = tuple(rng.randint(0, max_norm) for _ in range(r))
        if min_norm <= sum(n) <= max_norm:
            return n


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

@dataclass
class Outcome:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def _run(name: str, trials: int, body: Callable[[int], str | None]) -> Outcome:
    for t in range(trials):
        problem = body(t)
        if problem:
            return Outcome(name, False, f"trial {t}: {problem}")
    return Outcome(name, True, f"{trials} trials")


def suite_ideal(rng: random.Random, trials: int) -> list[Outcome]:
    def decomposition(_):
        ring = ring_of(rng.randint(1, 4))
        ideal = random_ideal(rng, ring, 5, 4)
        comps = irreducible_decomposition(ideal)
        if intersect_all(comps, ring) != ideal:
            return f"components of {ideal} do not intersect back"
        return None

    def colon_law(_):
        ring = ring_of(rng.randint(1, 4))
        a, b, c = (random_ideal(rng, ring, 3, 3) for _ in range(3))
        if colon(colon(a, b), c) != colon(a, b * c):
            return f"(I:J):K != I:JK for {a}, {b}, {c}"
        if not (colon(a, b) * b).issubset(a):
            return f"(I:J)J not in I for {a}, {b}"
        return None

    def radical_law(_):
        ring = ring_of(rng.randint(1, 4))
        a = random_ideal(rng, ring, 4, 4)
        if radical(a * a) != radical(a) or not radical(a).is_squarefree():
            return f"radical misbehaves on {a}"
        return None

    return [
        _run("ideal.decomposition_reconstructs", trials, decomposition),
        _run("ideal.colon_laws", trials, colon_law),
        _run("ideal.radical_of_square", trials, radical_law),
    ]


def suite_saturation(rng: random.Random, trials: int) -> list[Outcome]:
    def paths(_):
        kind = rng.choice(["m", "monomial", "poly"])
        fam = random_family(rng, rng.randint(2, 3), rng.randint(1, 2), kind)
        plan = build_plan(fam)
        n = random_index(rng, fam.r, 3)
        cert = saturate_certified(fam, n)
        if saturate_planned(plan, fam, n) != cert:
            return f"planned != certified at n={n}"
        if fam.j_is_monomial():
            if saturate_via_decomposition(multi_power(fam.ideals, n), fam.j_monomial_ideal()) != cert:
                return f"decomposition route disagrees at n={n}"
        return None

    def double(_):
        fam = random_family(rng, rng.randint(2, 3), rng.randint(1, 2), rng.choice(["m", "monomial", "poly"]))
        a = random_index(rng, fam.r, 3)
        return None if double_saturation_check(fam, a) else f"double saturation fails at a={a}"

    return [
        _run("saturation.paths_agree", trials, paths),
        _run("saturation.double_saturation", trials, double),
    ]


def brute_count(big: MonomialIdeal, small: MonomialIdeal, box: int) -> int:
    """Count ``big \\ small`` inside ``[0, box]^d`` by direct membership tests."""
    d = big.ring.num_vars
    return sum(1 for a in product(range(box + 1), repeat=d) if big.contains(a) and not small.contains(a))


def suite_asymptotics(rng: random.Random, trials: int) -> list[Outcome]:
    def counting(_):
        ring = ring_of(rng.randint(1, 3))
        small = random_ideal(rng, ring, 4, 4)
        big = small + random_ideal(rng, ring, 2, 3)
        value = count_quotient(big, small)
        bound = max(max(g) for g in big.gens + small.gens)
        near, far = brute_count(big, small, bound), brute_count(big, small, bound + 3)
        if value == INFINITE:
            return None if far > near else f"INF claimed for {big} / {small}"
        if value != far:
            return f"count {value} != brute force {far} for {big} / {small}"
        return None

    def closed_form(_):
        fam = random_family(rng, 2, rng.randint(1, 3), "m", 5, 6)
        for n in box_indices((1,) * fam.r, (3,) * fam.r):
            if closed_form_2d(fam, n) != saturate_certified(fam, n):
                return f"closed form disagrees at n={n}"
        return None

    return [
        _run("asymptotics.count_matches_brute_force", trials, counting),
        _run("asymptotics.closed_form_2d", max(1, trials // 2), closed_form),
    ]


def suite_geometry(rng: random.Random, trials: int) -> list[Outcome]:
    def closure(_):
        ring = ring_of(rng.randint(1, 3))
        ideal = random_ideal(rng, ring, 3, 4)
        clo = integral_closure(ideal)
        if clo != closure_by_lp(ideal):
            return f"facet and LP closures disagree on {ideal}"
        if not ideal.issubset(clo) or integral_closure(clo) != clo:
            return f"closure is not an idempotent extension of {ideal}"
        return None

    def inclusion(_):
        fam = random_family(rng, rng.randint(2, 3), rng.randint(1, 2), "m")
        n = random_index(rng, fam.r, 3)
        return None if closure_inclusion_check(fam, n) != Inclusion.FAILS else f"inclusion fails at n={n}"

    return [
        _run("geometry.closure_routes_agree", trials, closure),
        _run("geometry.saturation_in_closure", trials, inclusion),
    ]


def suite_regularity(rng: random.Random, trials: int) -> list[Outcome]:
    def betti(_):
        ring = ring_of(rng.randint(2, 4))
        ideal = random_ideal(rng, ring, 5, 3)
        if taylor_betti(ideal) != koszul_betti(ideal):
            return f"Taylor and Koszul Betti tables differ on {ideal}"
        return None

    return [_run("regularity.betti_routes_agree", trials, betti)]


SUITES: dict[str, Callable[[random.Random, int], list[Outcome]]] = {
    "ideal": suite_ideal,
    "saturation": suite_saturation,
    "asymptotics": suite_asymptotics,
    "geometry": suite_geometry,
    "regularity": suite_regularity,
}


def run_suites(names: list[str], seed: int = 0, trials: int = 20) -> list[Outcome]:
    if names == ["all"]:
        names = list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    out = []
    for name in names:
        out.extend(SUITES[name](random.Random(f"{seed}:{name}"), trials))
    return out
