from collections import Counter
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symrees.ideal import DomainError, MonomialIdeal, RingCtx, exp_lcm, power
from symrees.regularity import (
    ResourceError,
    betti_to_csv,
    d_of,
    koszul_betti,
    linear_bound_check,
    regularity,
    regularity_from_betti,
    taylor_betti,
    taylor_degree_betti,
)
from symrees.saturation import IdealFamily

R1 = RingCtx.of("X")
R2 = RingCtx.of("X Y")
R3 = RingCtx.of("X Y Z")
TRI = MonomialIdeal(R3, [(1, 1, 0), (0, 1, 1), (1, 0, 1)])


def test_betti_examples():
    assert taylor_betti(MonomialIdeal(R1, [(2,)])) == {(0, (0,)): 1, (1, (2,)): 1}
    xy = MonomialIdeal(R2, [(1, 0), (0, 1)])
    assert taylor_betti(xy) == {(0, (0, 0)): 1, (1, (1, 0)): 1, (1, (0, 1)): 1, (2, (1, 1)): 1}
    tri = taylor_betti(TRI)
    assert tri == {(0, (0, 0, 0)): 1, (1, (1, 1, 0)): 1, (1, (0, 1, 1)): 1, (1, (1, 0, 1)): 1, (2, (1, 1, 1)): 2}
    assert koszul_betti(TRI) == tri


def test_regularity_examples():
    assert regularity(MonomialIdeal(R2, [(1, 0), (0, 1)])) == 1
    for deg in range(1, 6):
        assert regularity(MonomialIdeal(R1, [(deg,)])) == deg
    assert regularity(TRI) == 2
    assert regularity(TRI, method="taylor") == 2
    assert regularity(R2.unit_ideal()) == 0
    with pytest.raises(DomainError):
        regularity(R2.zero_ideal())


def test_full_taylor_homology_oracle_on_triangle():
    by_degree = taylor_degree_betti(TRI)
    assert max(j - k for k, j in by_degree) + 1 == 2


def test_powers_of_triangle():
    assert [regularity(power(TRI, n)) for n in range(1, 5)] == [2, 4, 6, 8]


def test_taylor_budget():
    big = power(TRI, 4)
    with pytest.raises(ResourceError):
        taylor_betti(big)


def test_d_of_examples():
    assert d_of(TRI) == 2
    assert d_of(MonomialIdeal(R2, [(2, 0), (1, 3)])) == 4
    assert d_of(R2.unit_ideal()) == 0


def test_betti_csv():
    text = betti_to_csv(taylor_betti(TRI))
    assert text.splitlines()[0] == "i,multidegree,beta"
    assert "2,1:1:1,2" in text


def test_linear_bound_examples():
    report = linear_bound_check(IdealFamily.saturated([TRI]), [(n,) for n in range(1, 4)])
    assert all(v >= 0 for v in report.defects.values()) and report.passed
    principal = linear_bound_check(IdealFamily.saturated([MonomialIdeal(R2, [(2, 1)])]), [(n,) for n in range(1, 5)])
    assert set(principal.defects.values()) == {0}
    assert all(principal.regs[(n,)] == 3 * n for n in range(1, 5))
    variables = IdealFamily.saturated([MonomialIdeal(R3, [(1, 0, 0)]), MonomialIdeal(R3, [(0, 1, 0)])])
    grid = [(a, b) for a in range(1, 4) for b in range(1, 4)]
    assert set(linear_bound_check(variables, grid).defects.values()) == {0}


gens_3d = st.lists(st.tuples(*[st.integers(0, 2)] * 3), min_size=1, max_size=5)


def _proper(gens, ring=R3):
    ideal = MonomialIdeal(ring, gens)
    return None if ideal.is_unit() else ideal


@settings(max_examples=50, deadline=None)
@given(gens_3d)
def test_routes_agree_with_each_other_and_full_taylor(gens):
    ideal = _proper(gens)
    if ideal is None:
        return
    strands = taylor_betti(ideal)
    assert koszul_betti(ideal) == strands
    by_degree = Counter()
    for (k, a), b in strands.items():
        by_degree[(k, sum(a))] += b
    assert dict(by_degree) == taylor_degree_betti(ideal)


@settings(max_examples=50, deadline=None)
@given(gens_3d)
def test_euler_characteristic_per_strand(gens):
    ideal = _proper(gens)
    if ideal is None:
        return
    table = taylor_betti(ideal)
    subsets = Counter()
    s = len(ideal.gens)
    for k in range(1, s + 1):
        for sub in combinations(ideal.gens, k):
            a = sub[0]
            for g in sub[1:]:
                a = exp_lcm(a, g)
            subsets[a] += (-1) ** k
    subsets[(0, 0, 0)] += 1
    euler = Counter()
    for (k, a), b in table.items():
        euler[a] += (-1) ** k * b
    keys = set(subsets) | set(euler)
    assert all(subsets[a] == euler[a] for a in keys)


@settings(max_examples=40, deadline=None)
@given(gens_3d, st.permutations([0, 1, 2]))
def test_regularity_symmetric_under_variable_permutation(gens, perm):
    ideal = _proper(gens)
    if ideal is None:
        return
    moved = MonomialIdeal(R3, [tuple(g[perm[i]] for i in range(3)) for g in ideal.gens])
    assert regularity(moved) == regularity(ideal)


@settings(max_examples=40, deadline=None)
@given(gens_3d)
def test_multiplying_by_new_variable_shifts_regularity(gens):
    ideal = _proper(gens)
    if ideal is None:
        return
    r4 = RingCtx.of("X Y Z W")
    shifted = MonomialIdeal(r4, [g + (1,) for g in ideal.gens])
    assert regularity(shifted) == regularity(ideal) + 1


@settings(max_examples=30, deadline=None)
@given(gens_3d)
def test_power_regularity_at_most_n_times_d_plus_slack(gens):
    ideal = _proper(gens)
    if ideal is None:
        return
    regs = [regularity(power(ideal, n)) for n in range(1, 4)]
    assert all(r <= n * d_of(ideal) + regs[0] for n, r in enumerate(regs, start=1))
    assert regularity_from_betti(koszul_betti(ideal)) + 1 == regs[0]
