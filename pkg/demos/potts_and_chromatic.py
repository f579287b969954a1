"""Walk through Z_G for a small graph: the symbolic polynomial, its chromatic
and flow specializations, the coloring sum at q = 3, and chromatic roots."""

from tuttekit import chromatic_poly, chromatic_roots, compute_z, flow_poly
from tuttekit.fixtures import complete, cycle, symbolic
from tuttekit.tutte import potts_coloring_oracle

c4 = symbolic(cycle(4))
z = compute_z(c4)
print("Z_C4(q, v) =", z.pretty())
print("P_C4(q)    =", chromatic_poly(c4).pretty())
print("F_C4(q)    =", flow_poly(c4).pretty())

# the Potts sum over 3^4 colorings agrees with Z at q = 3
print("q = 3 agrees with the coloring sum:",
      z.evaluate({}, q=3) == potts_coloring_oracle(c4, 3))

for n in (4, 5, 6):
    rs = chromatic_roots(complete(n))
    print(f"K{n} chromatic roots:", [round(r.real, 12) for r in rs.roots])
