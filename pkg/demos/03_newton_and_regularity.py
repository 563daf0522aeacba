"""Newton polyhedra, integral closures and the regularity of powers."""
from symrees import IdealFamily, MonomialIdeal, RingCtx, analytic_spread, integral_closure, linear_bound_check, newton_polyhedron, power
from symrees.regularity import betti_to_csv, koszul_betti

ring = RingCtx.of("X Y")
ideal = MonomialIdeal(ring, [(4, 0), (1, 2), (0, 5)])
poly = newton_polyhedron(ideal)
print("vertices:", poly.vertices)
print("inequalities (w . x >= c):", poly.facets)
print("closure:", integral_closure(ideal))
print("spread:", analytic_spread(ideal))

space = RingCtx.of("X Y Z")
tri = MonomialIdeal(space, [(1, 1, 0), (0, 1, 1), (1, 0, 1)])
print(betti_to_csv(koszul_betti(power(tri, 2))))

report = linear_bound_check(IdealFamily.saturated([tri]), [(n,) for n in range(1, 5)], with_saturation=True)
print(report.render())
