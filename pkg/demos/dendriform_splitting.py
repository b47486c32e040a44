"""Walk through the split complex of the dendriform dual in one arity.

    python3 demos/dendriform_splitting.py 4
"""

import sys

from quadkoszul.associahedron import build_ca, build_split_complex, copy_labeling, summand_check
from quadkoszul.complexes import homology_dims
from quadkoszul.trees import binary_trees, canonical_key

n = int(sys.argv[1]) if len(sys.argv) > 1 else 4

ca = build_ca(n)
print(f"associahedron complex, arity {n}: dims {ca.dims()} homology {homology_dims(ca)}")

# one copy of the associahedron per leaf; copy i marks leaf i
t = binary_trees(n)[0]
print(f"\ncopy labelings of {canonical_key(t).decode()}:")
for i in range(1, n + 1):
    print(f"  copy {i}: {copy_labeling(t, i).labels}")

split = build_split_complex("dend", n)
print(f"\nsplit complex dims {split.dims()}")

r = summand_check("dend", n)
for name, ok in r["checks"].items():
    print(f"  {name:16s} {'ok' if ok else 'FAILED'}")
print(f"top degree: split {r['top_degree']['split']}, bar {r['top_degree']['bar']}")
