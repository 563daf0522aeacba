"""Saturating powers of the triangle ideal (XY, YZ, XZ).

The square picks up XYZ after saturation even though XYZ is not in I^2,
so the saturated Rees algebra needs a new generator in degree 2.
"""
from symrees import IdealFamily, MonomialIdeal, RingCtx, power, rees_generation_degrees, saturate_certified
from symrees.asymptotics import count_quotient

ring = RingCtx.of("X Y Z")
tri = MonomialIdeal(ring, [(1, 1, 0), (0, 1, 1), (1, 0, 1)])
fam = IdealFamily.saturated([tri])

for n in range(1, 5):
    sat = saturate_certified(fam, (n,))
    extra = count_quotient(sat, power(tri, n))
    print(f"n={n}: {len(sat.gens)} generators, {extra} monomial(s) gained by saturating")

print("XYZ in I^2?", (1, 1, 1) in power(tri, 2))
print("saturation of I^2:", saturate_certified(fam, (2,)))

# new generators of each graded piece, not products of lower pieces
for n, count in rees_generation_degrees(fam, 4):
    print(f"degree {n[0]}: {count} new")
