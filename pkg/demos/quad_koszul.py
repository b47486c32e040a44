"""Build Quad as the black square of Dend with itself and check Koszulity.

    python3 demos/quad_koszul.py 5
"""

import sys

from quadkoszul.bar import koszul_check
from quadkoszul.operads import arity_component, black_square, builtin, quadratic_dual

top = int(sys.argv[1]) if len(sys.argv) > 1 else 4

dend = builtin("dend")
quad = black_square(dend, dend)
print(f"{quad.name}: {len(quad.generators)} generators {quad.generators}, {len(quad.relations)} relations")
for rel in quad.relations[:3]:
    print("  ", " + ".join(f"{t.coeff}*{t.shape}({t.root},{t.upper})" for t in rel))
print("   ...")

dual = quadratic_dual(quad)
for n in range(2, top + 1):
    print(f"arity {n}: dim {arity_component(quad, n).dim:5d}   dual {arity_component(dual, n).dim:3d}")

r = koszul_check(quad, top)
for row in r["per_arity"]:
    print(f"bar complex n={row['n']}: dims {row['dims']} homology {row['homology']}")
print("koszul" if r["koszul"] else f"not koszul: {r['failures']}")
