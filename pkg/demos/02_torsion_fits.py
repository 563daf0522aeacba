"""Torsion lengths of powers and their exact fits.

Two variables give a polynomial of degree <= 2; the triangle ideal in three
variables gives a period-2 quasi-polynomial instead.
"""
from symrees import IdealFamily, MonomialIdeal, RingCtx, analytic_spread, check_bounds, fit_polynomial, length_table
from symrees.asymptotics import epsilon_estimate, fit_quasipolynomial_ray

plane = RingCtx.of("X Y")
a = MonomialIdeal(plane, [(2, 0), (1, 1)])
fam = IdealFamily.saturated([a])

table = length_table(fam, [(n,) for n in range(1, 10)])
print(table.to_csv())
fit = fit_polynomial(table, 2)
print("fit:", fit)
print(check_bounds(fam, fit).render())

eps = epsilon_estimate(fam, 40)
print("d! L(n) / n^d at n = 10, 20, 40:", [float(eps[t - 1]) for t in (10, 20, 40)])

space = RingCtx.of("X Y Z")
tri = MonomialIdeal(space, [(1, 1, 0), (0, 1, 1), (1, 0, 1)])
tri_fam = IdealFamily.saturated([tri])
tri_table = length_table(tri_fam, [(n,) for n in range(1, 21)])
print("triangle torsion:", [tri_table.values[(n,)] for n in range(1, 11)], "...")
print("spread:", analytic_spread(tri))
print("polynomial fit of degree <= 3:", fit_polynomial(tri_table, 3))
q = fit_quasipolynomial_ray(tri_table.ray((1,)), 2, 3, start=1)
print("quasi-polynomial:", q)
