"""Associahedron chain complexes and their labeled splittings.

``build_ca(n)`` is the augmented cellular chain complex of the associahedron
graded by minus the cell dimension: degree ``j`` is spanned by the planar
trees with ``n`` leaves and ``n + j - 1`` vertices, degree ``+1`` by the
empty cell.  Signs come from :func:`quadkoszul.trees.vertex_expansions`.

A split complex is a direct sum of copies of ``build_ca(n)`` in which every
tree carries the labels of its copy.  For one ``dend`` factor, copy ``i``
labels a tree by :func:`copy_labeling`; for several factors a copy is a tuple
of copy indices and labels are tuples.  An ``ass`` factor has one copy and
labels every vertex with ``STAR``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Dict, List, Sequence, Tuple

from .complexes import ChainComplex, ChainMap, direct_sum, verify_chain_map
from .linalg import SparseMatrix, Unsolvable, solve_right
from .trees import (
    STAR,
    LabeledTree,
    Tree,
    arities,
    canonical_key,
    connecting_path,
    corolla,
    enumerate_trees,
    left_comb,
    n_leaves,
    vertex_expansions,
    vertex_info,
)

__all__ = [
    "EMPTY_CELL",
    "build_ca",
    "ca_trees",
    "copy_labeling",
    "copies",
    "copy_labels",
    "resolve_label",
    "star_resolutions",
    "build_split_complex",
    "inclusion_map",
    "projection",
    "summand_check",
    "SummandFailure",
    "pentagon_matches",
    "face_lattice_dot",
]

EMPTY_CELL = b"{}"


@lru_cache(maxsize=None)
def ca_trees(n: int) -> Dict[int, Tuple[Tree, ...]]:
    """Trees of each degree ``0 .. -n+2``."""
    return {j: enumerate_trees(n, n + j - 1) for j in range(0, -n + 1, -1)}


@lru_cache(maxsize=None)
def build_ca(n: int) -> ChainComplex:
    if n < 2:
        raise ValueError("arity must be at least 2")
    trees = ca_trees(n)
    degrees = tuple(range(1, -n + 1, -1))
    bases = {1: (EMPTY_CELL,)}
    bases.update({j: tuple(canonical_key(t) for t in ts) for j, ts in trees.items()})
    diffs = {1: SparseMatrix(1, len(trees[0]), ((0, c, 1) for c in range(len(trees[0]))))}
    for j in range(0, -n + 2, -1):
        index = {t: k for k, t in enumerate(trees[j])}
        entries = []
        for c, t in enumerate(trees[j - 1]):
            for x in vertex_expansions(t):
                entries.append((index[x.tree], c, x.sign))
        diffs[j] = SparseMatrix(len(trees[j]), len(trees[j - 1]), entries)
    return ChainComplex(degrees, bases, diffs, f"CA_{n}")


# ---------------------------------------------------------------------------
# copy labelings


def _step(label, arity):
    if label is STAR:
        return 1
    if label < arity:
        return label + 1
    return STAR


@lru_cache(maxsize=None)
def _copy_labels_dend(t: Tree) -> Tuple[Tuple, ...]:
    n = n_leaves(t)
    info = vertex_info(t)
    labels = [1 if vi.lo == 1 else STAR for vi in info]
    out = [tuple(labels)]
    for i in range(1, n):
        for v in connecting_path(t, i):
            labels[v] = _step(labels[v], info[v].arity)
        out.append(tuple(labels))
    return tuple(out)


def copy_labeling(t: Tree, i: int, n: int = None) -> LabeledTree:
    """Labels of copy ``i`` (1-based) of the ``n``-leaf tree ``t``.

    Copy 1 puts ``1`` on the leftmost leg and ``STAR`` elsewhere; going from
    copy ``i`` to ``i + 1`` changes the vertices between leaves ``i`` and
    ``i + 1``: ``r -> r + 1`` below the arity, the arity to ``STAR`` and
    ``STAR`` to ``1``.
    """
    leaves = n_leaves(t)
    if n is not None and n != leaves:
        raise ValueError(f"tree has {leaves} leaves, not {n}")
    if not 1 <= i <= leaves:
        raise ValueError(f"copy index {i} outside 1..{leaves}")
    return LabeledTree(t, _copy_labels_dend(t)[i - 1])


def _factor_copies(factor: str, n: int) -> range:
    if factor == "dend":
        return range(1, n + 1)
    if factor == "ass":
        return range(1, 2)
    raise ValueError(f"unknown factor {factor!r}")


def copies(factors: Sequence[str], n: int) -> List[Tuple[int, ...]]:
    """Copy tuples in lexicographic order."""
    return list(product(*(_factor_copies(f, n) for f in factors)))


def copy_labels(factors: Sequence[str], t: Tree, copy: Sequence[int]) -> Tuple[Tuple, ...]:
    """Per-vertex label tuples (one entry per factor) of a copy of ``t``."""
    cols = []
    for f, i in zip(factors, copy):
        if f == "dend":
            cols.append(_copy_labels_dend(t)[i - 1])
        else:
            cols.append((STAR,) * len(vertex_info(t)))
    return tuple(zip(*cols)) if cols else tuple(() for _ in vertex_info(t))


def resolve_label(factor: str, arity: int, label) -> List[int]:
    """Integer labels a single factor label stands for."""
    if factor == "ass":
        return [1]
    if label is STAR:
        return list(range(1, arity + 1))
    return [label]


def _factor_dim(factor: str, arity: int) -> int:
    return arity if factor == "dend" else 1


def label_index(factors: Sequence[str], arity: int, labels: Sequence[int]) -> int:
    """0-based index of an integer label tuple in the copy order at ``arity``."""
    idx = 0
    for f, r in zip(factors, labels):
        idx = idx * _factor_dim(f, arity) + (r - 1)
    return idx


def star_resolutions(factors: Sequence[str], t: Tree, labels) -> List[Tuple[int, ...]]:
    """Label-index tuples of all resolutions of a labeled tree, in order."""
    ar = arities(t)
    per_vertex = []
    for a, lab in zip(ar, labels):
        choices = product(*(resolve_label(f, a, x) for f, x in zip(factors, lab)))
        per_vertex.append([label_index(factors, a, c) for c in choices])
    return list(product(*per_vertex))


def representative(factors: Sequence[str], t: Tree, labels) -> Tuple[int, ...]:
    """The resolution with every ``STAR`` replaced by ``1``."""
    return tuple(
        label_index(factors, a, [1 if x is STAR else x for x in lab])
        for a, lab in zip(arities(t), labels)
    )


# ---------------------------------------------------------------------------
# split complexes


def _factors_of(kind: str) -> Tuple[str, ...]:
    from .operads import builtin

    p = builtin(kind)
    if p.factors is None:
        raise ValueError(f"{kind!r} has no split structure")
    return p.factors


@lru_cache(maxsize=None)
def build_split_complex(kind: str, n: int) -> ChainComplex:
    """Direct sum of ``n**m`` labeled copies of ``build_ca(n)``.

    Basis elements are ``(copy tuple, labeled key)``; the augmentation cell
    of each copy is ``(copy tuple, EMPTY_CELL)``.
    """
    factors = _factors_of(kind)
    ca = build_ca(n)
    trees = ca_trees(n)
    cs = copies(factors, n)
    summed = direct_sum([ca] * len(cs), f"{kind}-split_{n}")
    bases = {1: tuple((c, EMPTY_CELL) for c in cs)}
    for j, ts in trees.items():
        bases[j] = tuple(
            (c, canonical_key(LabeledTree(t, copy_labels(factors, t, c))))
            for c in cs
            for t in ts
        )
    return ChainComplex(summed.degrees, bases, summed.diffs, summed.name)


def _bar_for(kind: str, n: int):
    from .bar import build_bar
    from .operads import builtin

    return build_bar(builtin(kind), n)


@lru_cache(maxsize=None)
def inclusion_map(kind: str, n: int) -> ChainMap:
    """Split complex into the bar complex: resolve every ``STAR``.

    Degree ``+1`` is the induced map on cokernels: the empty cell of a copy
    goes to the class of the image of the copy's first binary tree.
    """
    factors = _factors_of(kind)
    bar = _bar_for(kind, n)
    split = build_split_complex(kind, n)
    trees = ca_trees(n)
    cs = copies(factors, n)
    maps = {}
    for j, ts in trees.items():
        cols = []
        for c in cs:
            for t in ts:
                labels = copy_labels(factors, t, c)
                cols.append({bar.index(t, r): 1 for r in star_resolutions(factors, t, labels)})
        maps[j] = SparseMatrix.from_columns(bar.complex.dim(j), cols)
    first = len(trees[0])
    pick = SparseMatrix(split.dim(0), len(cs), ((k * first, k, 1) for k in range(len(cs))))
    maps[1] = bar.complex.d(1) @ maps[0] @ pick
    return ChainMap(split, bar.complex, maps)


@lru_cache(maxsize=None)
def projection(kind: str, n: int) -> ChainMap:
    """Bar complex onto the split complex.

    In degrees ``<= 0`` a basis element goes to the copy element whose
    ``STAR -> 1`` representative it is (zero if there is none).  Degree
    ``+1`` is induced: a basis element of the operad is lifted to its
    binary-tree representative.
    """
    factors = _factors_of(kind)
    bar = _bar_for(kind, n)
    split = build_split_complex(kind, n)
    trees = ca_trees(n)
    cs = copies(factors, n)
    maps = {}
    for j, ts in trees.items():
        entries = []
        k = 0
        for c in cs:
            for t in ts:
                labels = copy_labels(factors, t, c)
                entries.append((k, bar.index(t, representative(factors, t, labels)), 1))
                k += 1
        maps[j] = SparseMatrix(split.dim(j), bar.complex.dim(j), entries)
    quotient = bar.quotient
    lift = SparseMatrix(
        bar.complex.dim(0), quotient.dim, ((b, k, 1) for k, b in enumerate(quotient.basis))
    )
    maps[1] = split.d(1) @ maps[0] @ lift
    return ChainMap(bar.complex, split, maps)


class SummandFailure(AssertionError):
    def __init__(self, check: str, degree: int, key=None, detail: str = ""):
        msg = f"{check} failed in degree {degree}"
        if key is not None:
            msg += f" at {key!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.check = check
        self.degree = degree
        self.key = key


def _unique_preimage(f: ChainMap, j: int):
    seen: Dict[int, int] = {}
    m = f.at(j)
    for c in range(m.cols):
        for r, x in m.column(c).items():
            if x != 1:
                raise SummandFailure("unique-preimage", j, f.target.bases[j][r], f"coefficient {x}")
            if r in seen:
                raise SummandFailure("unique-preimage", j, f.target.bases[j][r], "two preimages")
            seen[r] = c
    missing = [r for r in range(m.rows) if r not in seen]
    if missing:
        raise SummandFailure("unique-preimage", j, f.target.bases[j][missing[0]], "no preimage")


def _tensor_power_check(kind: str, n: int, f: ChainMap):
    factors = _factors_of(kind)
    if len(factors) < 2:
        return
    bar = _bar_for(kind, n)
    single = {fac: (inclusion_map(fac, n), _bar_for(fac, n)) for fac in set(factors)}
    trees = ca_trees(n)
    cs = copies(factors, n)
    for j, ts in trees.items():
        m = f.at(j)
        col = 0
        for c in cs:
            for pos, t in enumerate(ts):
                ar = arities(t)
                comps = []
                for fac, i in zip(factors, c):
                    fm, fbar = single[fac]
                    k = (i - 1) * len(ts) + pos
                    comps.append([(fbar.element(j, r).labels, x) for r, x in fm.at(j).column(k).items()])
                want: Dict[int, int] = {}
                for combo in product(*comps):
                    coeff = 1
                    for _, x in combo:
                        coeff *= x
                    labels = []
                    for v, a in enumerate(ar):
                        idx = 0
                        for fac, (labs, _) in zip(factors, combo):
                            idx = idx * _factor_dim(fac, a) + labs[v]
                        labels.append(idx)
                    want[bar.index(t, labels)] = coeff
                if dict(m.column(col)) != want:
                    raise SummandFailure(
                        "tensor-power", j, canonical_key(t), f"copy {c} differs from the factor product"
                    )
                col += 1


def summand_check(kind: str, n: int) -> dict:
    """Direct-summand report for the inclusion of the split complex.

    Checks (a) the chain-map property, (b) that every bar basis element in
    degrees ``<= 0`` is hit by exactly one split basis element, with
    coefficient 1, (c) a left inverse of the inclusion exists degreewise and
    (d) for several factors, the inclusion is degreewise the tuple product of
    the single-factor inclusions.
    """
    report = {"kind": kind, "n": n, "checks": {}, "failures": []}

    def run(name, fn):
        try:
            fn()
            report["checks"][name] = True
        except SummandFailure as exc:
            report["checks"][name] = False
            report["failures"].append({"check": exc.check, "degree": exc.degree, "key": _key_str(exc.key), "message": str(exc)})

    f = inclusion_map(kind, n)

    def chain():
        if not verify_chain_map(f):
            raise SummandFailure("chain-map", f.source.top, None, "d f != f d")

    def unique():
        for j in f.source.degrees[1:]:
            _unique_preimage(f, j)

    def split():
        for j in f.source.degrees:
            m = f.at(j)
            try:
                left = solve_right(m.T, SparseMatrix.identity(m.cols)).T
            except Unsolvable:
                raise SummandFailure("projection", j, None, "no left inverse") from None
            if left @ m != SparseMatrix.identity(m.cols):
                raise SummandFailure("projection", j, None, "left inverse check")

    run("chain_map", chain)
    run("unique_preimage", unique)
    run("projection", split)
    if len(_factors_of(kind)) > 1:
        run("tensor_power", lambda: _tensor_power_check(kind, n, f))
    top = f.at(f.source.bottom)
    report["top_degree"] = {"split": top.cols, "bar": top.rows}
    report["passed"] = not report["failures"]
    return report


def _key_str(key):
    if key is None:
        return None
    if isinstance(key, bytes):
        return key.decode()
    return str(key)


# ---------------------------------------------------------------------------
# pentagon


_PENTAGON = (
    # rows: edges, columns: vertices; incidence pattern of the 5-cycle
    (1, 1, 0, 0, 0),
    (0, 1, 1, 0, 0),
    (0, 0, 1, 1, 0),
    (0, 0, 0, 1, 1),
    (1, 0, 0, 0, 1),
)


def pentagon_matches() -> bool:
    """``build_ca(4)``'s middle differential is a signed pentagon incidence.

    Every entry is ``+-1``, each edge meets two vertices with opposite signs,
    each vertex lies on two edges, and the incidence graph is one 5-cycle.
    """
    ca = build_ca(4)
    m = ca.d(0).T  # edges (degree -1) x vertices (degree 0)
    if m.shape != (5, 5):
        return False
    adj: Dict[int, List[int]] = {v: [] for v in range(5)}
    for e in range(5):
        row = m.row(e)
        if len(row) != 2 or sorted(row.values()) != [-1, 1]:
            return False
        a, b = sorted(row)
        adj[a].append(b)
        adj[b].append(a)
    if any(len(x) != 2 for x in adj.values()):
        return False
    seen, prev, cur = {0}, None, 0
    for _ in range(4):
        nxt = [x for x in adj[cur] if x != prev][0]
        if nxt in seen:
            return False
        seen.add(nxt)
        prev, cur = cur, nxt
    # the top cell's boundary is a signed sum of all five edges
    top = ca.d(-1)
    return len(top.column(0)) == 5 and all(abs(x) == 1 for x in top.column(0).values())


def face_lattice_dot(n: int) -> str:
    """DOT graph of the face lattice: a node per tree, an arc per incidence.

    Arcs go from a tree to each of its expansions and carry the sign.
    """
    ca = build_ca(n)
    lines = [f"digraph CA_{n} {{", "  rankdir=BT;"]
    for j, ts in ca_trees(n).items():
        for t in ts:
            key = canonical_key(t).decode()
            lines.append(f'  "{key}" [label="{key}", degree={j}];')
    for j, ts in ca_trees(n).items():
        for t in ts:
            src = canonical_key(t).decode()
            for x in vertex_expansions(t):
                dst = canonical_key(x.tree).decode()
                lines.append(f'  "{src}" -> "{dst}" [label="{x.sign:+d}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
