import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_quotient, lagrange_eval, torsion_count
from symrees.asymptotics import (
    INFINITE,
    LengthTable,
    NumericalPolynomial,
    PreconditionError,
    check_bounds,
    closed_form_2d,
    count_quotient,
    epsilon_estimate,
    fit_polynomial,
    fit_quasipolynomial_ray,
    fit_to_json,
    length_table,
)
from symrees.ideal import DomainError, MonomialIdeal, RingCtx, multi_power, power
from symrees.saturation import IdealFamily, saturate_certified

R1 = RingCtx.of("X")
R2 = RingCtx.of("X Y")
R3 = RingCtx.of("X Y Z")
TRI = MonomialIdeal(R3, [(1, 1, 0), (0, 1, 1), (1, 0, 1)])
A = MonomialIdeal(R2, [(2, 0), (1, 1)])


def I2(*gens):
    return MonomialIdeal(R2, gens)


def table_1d(values, start=1):
    return LengthTable(1, {(i + start,): v for i, v in enumerate(values)})


def test_count_quotient_examples():
    sat = saturate_certified(IdealFamily.saturated([TRI]), (2,))
    assert count_quotient(sat, power(TRI, 2)) == 1
    assert count_quotient(TRI, TRI) == 0
    assert count_quotient(I2((1, 0)), I2((2, 0))) == INFINITE
    with pytest.raises(PreconditionError):
        count_quotient(I2((2, 0)), I2((1, 0)))


def test_torsion_table_matches_oracle():
    fam = IdealFamily.saturated([A])
    table = length_table(fam, [(n,) for n in range(1, 7)])
    expected = [n * (n + 1) // 2 for n in range(1, 7)]
    assert [table.values[(n,)] for n in range(1, 7)] == expected
    for n in range(1, 5):
        gens = power(A, n).gens
        assert torsion_count(gens, 2 * n + 1) == expected[n - 1]


def test_quotient_table_examples():
    small = IdealFamily.saturated([MonomialIdeal(R1, [(2,)])])
    big = IdealFamily.saturated([MonomialIdeal(R1, [(1,)])])
    table = length_table(small, [(n,) for n in range(1, 5)], "quotient", big)
    assert [table.values[(n,)] for n in range(1, 5)] == [1, 2, 3, 4]
    # Infinite colength is reported, not raised.
    inf = length_table(IdealFamily.saturated([I2((2, 0))]), [(1,)], "quotient", IdealFamily.saturated([I2((1, 0))]))
    assert inf.values[(1,)] == INFINITE
    with pytest.raises(PreconditionError):
        length_table(big, [(1,)], "quotient", small)


def test_principal_torsion_is_zero():
    fam = IdealFamily.saturated([I2((1, 0))])
    table = length_table(fam, [(n,) for n in range(1, 5)])
    assert set(table.values.values()) == {0}


def test_epsilon_examples():
    assert epsilon_estimate(IdealFamily.saturated([A]), 3) == [2, Fraction(3, 2), Fraction(4, 3)]
    assert set(epsilon_estimate(IdealFamily.saturated([I2((1, 1))]), 3)) == {0}
    m = IdealFamily.saturated([R2.maximal_ideal()])
    seq = epsilon_estimate(m, 6)
    assert seq == [Fraction(t * (t + 1), t * t) for t in range(1, 7)]


def test_epsilon_rejects_infinite_values():
    fam = IdealFamily.with_monomial_j([I2((2, 1))], I2((0, 1)))
    with pytest.raises(DomainError):
        epsilon_estimate(fam, 2)


def test_csv_round_trip_with_infinity():
    table = LengthTable(2, {(1, 1): 3, (1, 2): INFINITE, (2, 1): 0})
    text = table.to_csv()
    assert text.splitlines()[0] == "n_1,n_2,value"
    assert "1,2,INF" in text
    assert LengthTable.from_csv(text) == table


def test_fit_examples():
    tri = table_1d([1, 3, 6, 10, 15, 21])
    fit = fit_polynomial(tri, 2, start=1, holdout=3)
    assert str(fit) == "1/2*n^2 + 1/2*n" and fit.degree == 2
    with pytest.raises(PreconditionError, match="grid too small"):
        fit_polynomial(tri, 2)
    const = fit_polynomial(table_1d([7] * 10), 2)
    assert const.degree == 0 and str(const) == "7"
    assert fit_polynomial(table_1d([2 ** n for n in range(1, 14)]), 3) is None


def test_fit_rejects_off_by_one_at_a_single_point():
    values = [n * n for n in range(1, 12)]
    values[-1] += 1
    assert fit_polynomial(table_1d(values), 2) is None


def test_fit_two_parameters():
    table = LengthTable(2, {(a, b): a * b + 2 * a + 1 for a in range(1, 10) for b in range(1, 10)})
    fit = fit_polynomial(table, 2)
    assert fit.degree == 2
    assert all(fit(n) == v for n, v in table.values.items())
    assert fit_polynomial(table, 1) is None


def test_fit_json_uses_rational_strings():
    fit = fit_polynomial(table_1d([n * (n + 1) // 2 for n in range(1, 10)]), 2)
    obj = json.loads(fit_to_json(fit))
    assert {c["value"] for c in obj["coefficients"]} == {"1/2"}
    assert NumericalPolynomial.from_json_obj(obj) == fit
    assert json.loads(fit_to_json(None)) == {"fit": None}


def test_quasipolynomial_examples():
    quarter = {t: t * t // 4 for t in range(0, 30)}
    q = fit_quasipolynomial_ray(quarter, 3, 2)
    assert q.period == 2
    assert q.pieces[0](2) == 1 and str(q.pieces[0]) == "1/4*n^2"
    assert str(q.pieces[1]) == "1/4*n^2 - 1/4"
    assert all(q(t) == v for t, v in quarter.items())
    poly = fit_quasipolynomial_ray({t: 3 * t * t + 1 for t in range(1, 20)}, 2, 2, start=1)
    assert poly.period == 1
    primes = {t: int(t in {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) for t in range(40)}
    assert fit_quasipolynomial_ray(primes, 4, 2) is None
    with pytest.raises(PreconditionError):
        fit_quasipolynomial_ray({t: t for t in range(5)}, 3, 2)


def test_check_bounds_examples():
    fam = IdealFamily.saturated([A])
    fit = fit_polynomial(length_table(fam, [(n,) for n in range(1, 10)]), 2)
    report = check_bounds(fam, fit)
    status = {name[0]: s for name, s, _ in report.checks}
    assert report.spread == 2 and status == {"a": "PASS", "b": "N/A", "c": "PASS"}
    assert "trend" in report.render()
    principal = IdealFamily.saturated([I2((1, 2))])
    fit = fit_polynomial(length_table(principal, [(n,) for n in range(1, 10)]), 2)
    report = check_bounds(principal, fit)
    status = {name[0]: s for name, s, _ in report.checks}
    assert fit.degree == 0 and status["b"] == "PASS" and report.passed
    # Zero polynomial counts as a constant.
    assert check_bounds(None, NumericalPolynomial.from_dict(1, {}), 1, 2).passed


def test_spread_one_two_variable_family_is_eventually_constant():
    # A monomial ideal has spread 1 exactly when its Newton polyhedron has one vertex.
    fam = IdealFamily.saturated([I2((2, 1)), I2((0, 3))])
    grid = [(a, b) for a in range(1, 10) for b in range(1, 10)]
    fit = fit_polynomial(length_table(fam, grid), 2)
    assert fit is not None and fit.degree == 0
    assert check_bounds(fam, fit).passed


def test_closed_form_examples():
    fam = IdealFamily.saturated([A, I2((0, 1))])
    for n in [(1, 1), (3, 2), (2, 5)]:
        assert closed_form_2d(fam, n) == I2(n)
        assert closed_form_2d(fam, n) == saturate_certified(fam, n)
    assert closed_form_2d(IdealFamily.saturated([I2((2, 3))]), (4,)) == I2((8, 12))
    assert closed_form_2d(IdealFamily.saturated([R2.maximal_ideal()]), (3,)).is_unit()
    with pytest.raises(PreconditionError):
        closed_form_2d(IdealFamily.saturated([TRI]), (1,))


gens_2d = st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=4)
gens_3d = st.lists(st.tuples(*[st.integers(0, 3)] * 3), min_size=1, max_size=4)


@settings(max_examples=50, deadline=None)
@given(gens_3d, gens_3d)
def test_count_quotient_matches_larger_box(g1, g2):
    small = MonomialIdeal(R3, g1)
    big = small + MonomialIdeal(R3, g2)
    value = count_quotient(big, small)
    if value != INFINITE:
        assert value == brute_force_quotient(big.gens, small.gens, 7)
    else:
        assert brute_force_quotient(big.gens, small.gens, 7) < brute_force_quotient(big.gens, small.gens, 9)


@settings(max_examples=30, deadline=None)
@given(gens_2d, gens_2d)
def test_torsion_table_symmetric_under_family_permutation(g1, g2):
    a, b = MonomialIdeal(R2, g1), MonomialIdeal(R2, g2)
    if a.is_unit() or b.is_unit():
        return
    grid = [(i, j) for i in range(1, 3) for j in range(1, 4)]
    t1 = length_table(IdealFamily.saturated([a, b]), grid)
    t2 = length_table(IdealFamily.saturated([b, a]), [(j, i) for i, j in grid])
    assert all(t1.values[(i, j)] == t2.values[(j, i)] for i, j in grid)


@settings(max_examples=30, deadline=None)
@given(gens_2d)
def test_two_variable_torsion_fits_degree_two(gens):
    ideal = MonomialIdeal(R2, gens)
    if ideal.is_unit():
        return
    fam = IdealFamily.saturated([ideal])
    table = length_table(fam, [(n,) for n in range(1, 10)])
    fit = fit_polynomial(table, 2)
    assert fit is not None
    assert all(fit(n) == v for n, v in table.values.items() if n[0] >= 3)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_fit_recovers_polynomials(coeffs):
    values = [sum(c * n ** k for k, c in enumerate(coeffs)) for n in range(1, 13)]
    fit = fit_polynomial(table_1d(values), 3)
    assert fit is not None
    for t in (20, 31):
        assert fit(t) == lagrange_eval(list(range(1, 5)), values[:4], t)


@settings(max_examples=20, deadline=None)
@given(gens_2d, gens_2d, st.integers(1, 4), st.integers(1, 4))
def test_quotient_tables_fit_degree_at_most_dimension(g1, g2, a, b):
    # Adding pure powers makes both ideals m-primary, so every colength is finite.
    small = MonomialIdeal(R2, g1 + [(a + 2, 0), (0, b + 2)])
    big = small + MonomialIdeal(R2, g2)
    if big.is_unit():
        return
    grid = [(n,) for n in range(1, 10)]
    table = length_table(IdealFamily.saturated([small]), grid, "quotient", IdealFamily.saturated([big]))
    assert INFINITE not in table.values.values()
    fit = fit_polynomial(table, 2)
    assert fit is not None and fit.degree <= 2
