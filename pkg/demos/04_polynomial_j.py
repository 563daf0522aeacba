"""Saturating by a non-monomial ideal J = (Y + Z).

The colon by f only sees the support of f, and the saturation plan replaces
the iterated colons by projections onto the variables of the support.
"""
from symrees import IdealFamily, MonomialIdeal, RingCtx, SparsePoly, build_plan, saturate_certified, saturate_planned
from symrees.saturation import alpha_stabilization, associated_squarefree

ring = RingCtx.of("X Y Z")
y, z = SparsePoly.variable(ring, 1), SparsePoly.variable(ring, 2)
f = y + z
ideal = MonomialIdeal(ring, [(2, 1, 0), (1, 2, 1), (0, 0, 3)])
fam = IdealFamily(ring, (ideal,), (f,))

print("associated squarefree ideal of f:", associated_squarefree(f))
plan = build_plan(fam)
print("plan projections:", [sorted(p) for p in plan.projections])
for n in range(1, 4):
    planned, certified = saturate_planned(plan, fam, (n,)), saturate_certified(fam, (n,))
    print(f"n={n}: {planned}  (certified route agrees: {planned == certified})")

report = alpha_stabilization(fam, 6)
print("k(n):", report.k, "alpha:", report.alpha)
