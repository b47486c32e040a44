"""Augmented dual bar complexes and the Koszulity check.

For an operad ``P`` and arity ``n`` the complex has ``P(n)`` in degree +1 and,
in degree ``j <= 0``, the trees with ``n`` leaves and ``n + j - 1`` vertices
whose vertices of arity ``l`` carry a basis element of ``P^!(l)``.  The
differential expands one vertex; its coefficient is the associahedron sign
times the structure constant of ``P^!`` that recomposes the two new labels
into the old one.  From degree 0 (binary trees, labels = generators) to
degree +1 it is the reduction onto ``P(n)``.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

from .complexes import (
    ChainComplex,
    Homotopy,
    NotExact,
    chain_homotopy,
    compose,
    euler_characteristic,
    verify_complex,
    verify_homotopy_identity,
)
from .linalg import SparseMatrix, Unsolvable, rank, solve_right
from .operads import LabeledBasis, OperadPresentation, QuotientSpace, arity_component, quadratic_dual
from .trees import LabeledTree, Tree, arities, canonical_key, enumerate_trees, n_vertices, vertex_expansions

__all__ = [
    "BarComplex",
    "build_bar",
    "dual_components",
    "koszul_check",
    "pair_homotopy_transport",
    "dend_homotopy_data",
    "WORKERS_ENV",
]

WORKERS_ENV = "QUADKOSZUL_WORKERS"


@dataclass(frozen=True)
class BarComplex:
    operad: OperadPresentation
    arity: int
    complex: ChainComplex
    quotient: QuotientSpace
    duals: Dict[int, QuotientSpace]
    pieces: Dict[int, LabeledBasis]

    def degree_of(self, t: Tree) -> int:
        return n_vertices(t) - self.arity + 1

    def index(self, t: Tree, labels) -> int:
        """Position of a labeled tree (0-based labels) in its degree piece."""
        return self.pieces[self.degree_of(t)].index(t, labels)

    def element(self, j: int, pos: int) -> LabeledTree:
        return self.pieces[j].element(pos)


def dual_components(p: OperadPresentation, n: int) -> Dict[int, QuotientSpace]:
    """``P^!(l)`` for ``2 <= l <= n`` in the split basis when available."""
    dual = quadratic_dual(p)
    policy = "split" if dual.split_factors is not None else "lex"
    return {l: arity_component(dual, l, policy) for l in range(2, n + 1)}


def _composition_tables(duals: Dict[int, QuotientSpace]):
    """``table[(a, i, b)][c]`` = list of ``(alpha, beta, coeff)`` recomposing to ``c``."""
    table: Dict[Tuple[int, int, int], Dict[int, List]] = {}
    for l, q in duals.items():
        for (a, alpha, i, beta), vec in q.structure.items():
            b = l + 1 - a
            slot = table.setdefault((a, i, b), {})
            for c, x in vec.items():
                slot.setdefault(c, []).append((alpha, beta, x))
    return table


def _key(t: LabeledTree) -> bytes:
    return canonical_key(LabeledTree(t.shape, tuple(x + 1 for x in t.labels)))


@lru_cache(maxsize=None)
def build_bar(p: OperadPresentation, n: int) -> BarComplex:
    """Augmented dual bar complex of ``p`` in arity ``n``.

    Basis keys print labels 1-based; :meth:`BarComplex.index` takes 0-based
    labels.
    """
    if n < 2:
        raise ValueError("arity must be at least 2")
    duals = dual_components(p, n)
    quotient = arity_component(p, n)
    dims = {l: q.dim for l, q in duals.items()}
    pieces = {j: LabeledBasis(enumerate_trees(n, n + j - 1), dims.__getitem__) for j in range(0, -n + 1, -1)}
    table = _composition_tables(duals)
    degrees = tuple(range(1, -n + 1, -1))
    bases = {1: tuple(canonical_key(quotient.lift(k)) for k in range(quotient.dim))}
    for j, basis in pieces.items():
        bases[j] = tuple(_key(t) for t in basis)
    diffs = {1: quotient.reduction_matrix()}
    for j in range(0, -n + 2, -1):
        src, dst = pieces[j - 1], pieces[j]
        entries = []
        col = 0
        for shape in src.shapes:
            moves = vertex_expansions(shape)
            for labels in src.labelings(shape):
                for x in moves:
                    hits = table.get((x.lower, x.position, x.upper), {}).get(labels[x.vertex])
                    if not hits:
                        continue
                    for alpha, beta, c in hits:
                        new = list(labels)
                        new[x.vertex] = alpha
                        new.insert(x.new_vertex, beta)
                        entries.append((dst.index(x.tree, new), col, x.sign * c))
                col += 1
        diffs[j] = SparseMatrix(len(dst), len(src), entries)
    complex_ = ChainComplex(degrees, bases, diffs, f"bar({p.name})_{n}")
    return BarComplex(p, n, complex_, quotient, duals, pieces)


# ---------------------------------------------------------------------------
# Koszulity


def _workers() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    return os.cpu_count() or 1


def _rank_job(m: SparseMatrix) -> int:
    return rank(m)


def _ranks(mats: List[SparseMatrix], workers: int) -> List[int]:
    # small matrices are not worth a process hop
    big = [k for k, m in enumerate(mats) if m.nnz > 20000]
    out = [None] * len(mats)
    if workers > 1 and len(big) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(big))) as pool:
            for k, r in zip(big, pool.map(_rank_job, [mats[k] for k in big])):
                out[k] = r
    for k, m in enumerate(mats):
        if out[k] is None:
            out[k] = rank(m)
    return out


def koszul_check(p: OperadPresentation, max_arity: int, workers: int = None) -> dict:
    """Homology of the augmented bar complexes for ``2 <= n <= max_arity``.

    The verdict ``koszul`` is true iff every homology group vanishes.  Any
    nonzero group is listed under ``failures`` as ``(n, degree, dim)``.
    """
    if max_arity < 2:
        raise ValueError("max_arity must be at least 2")
    workers = workers or _workers()
    start = time.perf_counter()
    per_arity = []
    failures = []
    for n in range(2, max_arity + 1):
        bar = build_bar(p, n)
        c = bar.complex
        euler = euler_characteristic(c)
        mats = [c.d(j) for j in c.degrees[:-1]]
        ranks = dict(zip(c.degrees[:-1], _ranks(mats, workers)))
        homology = []
        for j in c.degrees:
            h = c.dim(j) - ranks.get(j + 1, 0) - ranks.get(j, 0)
            homology.append(h)
            if h:
                failures.append({"n": n, "degree": j, "dim": h})
        per_arity.append({"n": n, "dims": c.dims(), "homology": homology, "euler": euler})
    elapsed = int((time.perf_counter() - start) * 1000)
    return {
        "operad": p.name,
        "max_arity": max_arity,
        "per_arity": per_arity,
        "koszul": not failures,
        "failures": failures,
        "elapsed_ms": elapsed,
    }


# ---------------------------------------------------------------------------
# homotopy data and its transport to tuple labels


@lru_cache(maxsize=None)
def dend_homotopy_data(kind: str, n: int):
    """``(f, p, h)`` for the split summand of ``kind`` in arity ``n``.

    ``p`` here is the idempotent ``f o pi`` on the bar complex and ``h``
    satisfies ``I - p = d h + h d``.
    """
    from .associahedron import inclusion_map, projection

    f = inclusion_map(kind, n)
    pi = projection(kind, n)
    fp = compose(f, pi)
    c = f.target
    target = {j: SparseMatrix.identity(c.dim(j)) - fp.at(j) for j in c.degrees}
    h = chain_homotopy(c, target)
    return f, fp, h


def _expansion_signs(t: Tree) -> Dict[Tree, int]:
    return {x.tree: x.sign for x in vertex_expansions(t)}


class _Pairing:
    """Tuple labels of the ``quad`` bar complex as pairs of ``dend`` labels.

    A ``quad`` label index at arity ``a`` is ``r * a + s`` for the ``dend``
    label indices ``r`` and ``s``; a ``quad`` split copy ``(i, k)`` pairs
    ``dend`` copies ``i`` and ``k``.
    """

    def __init__(self, n: int):
        from .operads import builtin

        self.n = n
        self.dend = build_bar(builtin("dend"), n)
        self.quad = build_bar(builtin("quad"), n)

    def split(self, j: int, pos: int):
        e = self.quad.element(j, pos)
        ar = arities(e.shape)
        r = [x // a for x, a in zip(e.labels, ar)]
        s = [x % a for x, a in zip(e.labels, ar)]
        return e.shape, self.dend.index(e.shape, r), self.dend.index(e.shape, s)

    def join(self, t: Tree, r, s) -> int:
        return self.quad.index(t, [u * a + v for u, v, a in zip(r, s, arities(t))])

    def operator(self, phi: SparseMatrix, src: int, dst: int, signed: str) -> SparseMatrix:
        """Pair a tree-graded ``dend`` operator with itself, shape by shape.

        ``signed`` says how the geometric sign, which both factors carry, is
        counted once: ``"expand"`` for maps to expansions (the differential),
        ``"contract"`` for maps to contractions (the homotopy; entries between
        trees that are not a contraction apart get sign +1), ``"none"`` for
        shape-preserving maps.
        """
        dq, dd = self.quad.complex, self.dend
        entries = []
        for col in range(dq.dim(src)):
            t, r, s = self.split(src, col)
            cr, cs = phi.column(r), phi.column(s)
            if not cr or not cs:
                continue
            up = _expansion_signs(t) if signed == "expand" else None
            for a, x in cr.items():
                ta = dd.element(dst, a)
                for b, y in cs.items():
                    tb = dd.element(dst, b)
                    if ta.shape != tb.shape:
                        continue
                    sign = 1
                    if signed == "expand":
                        sign = up[ta.shape]
                    elif signed == "contract":
                        sign = _expansion_signs(ta.shape).get(t, 1)
                    entries.append((self.join(ta.shape, ta.labels, tb.labels), col, x * y * sign))
        return SparseMatrix(dq.dim(dst), dq.dim(src), entries)

    def split_map(self, phi: SparseMatrix, j: int, into_bar: bool) -> SparseMatrix:
        """Pair an inclusion (``into_bar``) or projection between split and bar."""
        from .associahedron import ca_trees

        ts = ca_trees(self.n)[j]
        pos = {t: k for k, t in enumerate(ts)}
        n, dq = self.n, self.quad.complex
        entries = []
        if into_bar:
            for i, k in ((i, k) for i in range(n) for k in range(n)):
                for tp, t in enumerate(ts):
                    col = (i * n + k) * len(ts) + tp
                    for a, x in phi.column(i * len(ts) + tp).items():
                        la = self.dend.element(j, a).labels
                        for b, y in phi.column(k * len(ts) + tp).items():
                            lb = self.dend.element(j, b).labels
                            entries.append((self.join(t, la, lb), col, x * y))
            return SparseMatrix(dq.dim(j), n * n * len(ts), entries)
        for col in range(dq.dim(j)):
            t, r, s = self.split(j, col)
            for a, x in phi.column(r).items():
                for b, y in phi.column(s).items():
                    i, ta = divmod(a, len(ts))
                    k, tb = divmod(b, len(ts))
                    if ta != tb or ts[ta] != t:
                        continue
                    entries.append(((i * n + k) * len(ts) + ta, col, x * y))
        return SparseMatrix(n * n * len(ts), dq.dim(j), entries)


def pair_homotopy_transport(n: int) -> dict:
    """Transport ``dend`` homotopy data to ``quad`` by pairing labels.

    ``f``, ``p`` and the differential are paired tree by tree and compared
    with the ``quad`` objects built directly.  The homotopy is paired the same
    way in degrees ``<= 0``; its degree ``+1`` component (``Quad(n)`` is not a
    space of labeled trees) is solved for.  The report lists, per degree,
    whether ``I - p = d h + h d`` holds with the paired ``h``, and separately
    whether a homotopy solved directly on the ``quad`` complex exists for the
    paired ``p``.
    """
    if n < 2:
        raise ValueError("arity must be at least 2")
    pr = _Pairing(n)
    fd, pd, hd = dend_homotopy_data("dend", n)
    fq, pq, _ = dend_homotopy_data("quad", n)
    from .associahedron import projection

    pid = projection("dend", n)
    piq = projection("quad", n)
    dq = pr.quad.complex
    tree_degrees = [j for j in dq.degrees if j <= 0]
    checks = {
        "d_paired": all(
            pr.operator(pr.dend.complex.d(j), j - 1, j, "expand") == dq.d(j) for j in tree_degrees[:-1]
        ),
        "f_paired": all(pr.split_map(fd.at(j), j, True) == fq.at(j) for j in tree_degrees),
        "pi_paired": all(pr.split_map(pid.at(j), j, False) == piq.at(j) for j in tree_degrees),
        "p_paired": all(pr.operator(pd.at(j), j, j, "none") == pq.at(j) for j in tree_degrees),
    }
    h = {j: pr.operator(hd.at(j), j, j - 1, "contract") for j in tree_degrees[:-1]}
    # degree +1: h[1] d[1] = I - p - d[0] h[0] on degree 0
    rest = SparseMatrix.identity(dq.dim(0)) - pq.at(0) - dq.d(0) @ h.get(0, SparseMatrix.zeros(dq.dim(-1), dq.dim(0)))
    top_solved = True
    try:
        h[1] = solve_right(dq.d(1).T, rest.T).T
    except Unsolvable:
        top_solved = False
    paired = Homotopy(dq, h)
    per_degree = []
    for j in dq.degrees:
        lhs = SparseMatrix.identity(dq.dim(j)) - pq.at(j)
        rhs = dq.d(j) @ paired.at(j) + paired.at(j + 1) @ dq.d(j + 1)
        diff = lhs - rhs
        per_degree.append({"degree": j, "holds": diff.is_zero(), "mismatches": diff.nnz})
    try:
        direct = chain_homotopy(dq, {j: SparseMatrix.identity(dq.dim(j)) - pq.at(j) for j in dq.degrees})
        direct_ok = verify_homotopy_identity(
            {j: SparseMatrix.identity(dq.dim(j)) - pq.at(j) for j in dq.degrees}, direct, dq
        )
    except NotExact:
        direct_ok = False
    return {
        "n": n,
        "checks": checks,
        "top_component_solved": top_solved,
        "per_degree": per_degree,
        "holds": all(x["holds"] for x in per_degree) and top_solved and all(checks.values()),
        "direct_homotopy": direct_ok,
    }
