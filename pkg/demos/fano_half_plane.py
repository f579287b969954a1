"""The Fano matroid's basis polynomial has a zero with every coordinate in
the open right half-plane; find one exactly and re-evaluate it."""

from tuttekit.analysis import hpp_sample_check
from tuttekit.matroid import graphic, linear, q_zero_matroid_limits
from tuttekit.fixtures import complete

FANO = [[1, 0, 0, 1, 1, 0, 1],
        [0, 1, 0, 1, 0, 1, 1],
        [0, 0, 1, 0, 1, 1, 1]]

B = q_zero_matroid_limits(linear(FANO, "GF2"))["B_M"]
rep = hpp_sample_check(B, samples=20, search=2000, complementary=False)
print("verdict:", rep.verdict, "after", rep.samples, "attempts")
point = rep.witness["point"]
for k, z in sorted(point.items()):
    print(f"  x_{k} = {complex(z):.6g}")
print("exact value at the witness:", B.evaluate(point))

# for contrast, a graphic matroid
T = q_zero_matroid_limits(graphic(complete(4)))["B_M"]
print("K4 spanning trees:", hpp_sample_check(T, samples=100).verdict)
