"""Dimension counts for Quad three ways, plus the hypercube counts.

    python3 demos/counting_tour.py
"""

from quadkoszul.counting import (
    dimension_series,
    gk_check,
    hypercube_count,
    hypercube_representative,
    quad_dim_formula,
    root_vectors,
    series_inverse,
)
from quadkoszul.operads import builtin, quadratic_dual

order = 5
quad = builtin("quad")

dual = dimension_series(quad, order, dual=True)
print("dual series      ", [int(x) for x in dual.coeffs])
inverted = series_inverse(dual).twisted()
print("inverted, twisted", [int(x) for x in inverted.coeffs])
print("formula          ", [quad_dim_formula(n) for n in range(1, order + 1)])
print("linear algebra   ", [int(x) for x in dimension_series(quad, order).coeffs])
print("gk check passed:", gk_check(quad, order)["passed"])

m = 2
print(f"\nhypercube counts for m={m}")
for n in range(2, 6):
    counts = {"".join(v): hypercube_count(m, n, v) for v in root_vectors(m)}
    print(f"  n={n}: {counts}  total {sum(counts.values())}")

print("\nrepresentatives of cube coordinates:")
for c in [(1, 1), (1, 2), (2, 2), (3, 1), (3, 2)]:
    t = hypercube_representative(c)
    print(f"  {c}: root {''.join(t.labels[0])} upper {''.join(t.labels[1])}")
