"""Quadratic binary non-symmetric operads.

A presentation lists binary generators and quadratic relations.  Each
relation is a rational combination of 3-leaf comb trees::

    Left(root, upper)  = (x o_upper y) o_root z
    Right(root, upper) = x o_root (y o_upper z)

Arity components are realised as quotients of the span of generator-labeled
binary trees by the arity-n part of the operadic ideal, together with the
structure constants of grafting in a chosen basis.

Operad spec JSON
----------------
::

    {"name": "dend",
     "generators": ["<", ">"],
     "relations": [[{"shape": "L", "root": 0, "upper": 0, "coeff": "1"},
                    {"shape": "R", "root": 0, "upper": 0, "coeff": "-1"}, ...], ...]}

Indices are 0-based into ``generators``; coefficients are rational strings
such as ``"-3/2"``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .linalg import SparseMatrix, kernel_basis, rank
from .trees import (
    STAR,
    LabeledTree,
    Tree,
    arities,
    binary_trees,
    enumerate_trees,
    graft_labeled,
    left_comb,
    vertex_expansions,
    vertex_info,
)

__all__ = [
    "Comb3Term",
    "OperadPresentation",
    "SpecError",
    "MalformedSpec",
    "GeneratorIndexError",
    "ZeroCoefficientError",
    "DependentRelationsError",
    "NonConformingRelation",
    "UnknownOperad",
    "SplitBasisError",
    "LabeledBasis",
    "QuotientSpace",
    "builtin",
    "parse_spec",
    "to_spec",
    "dump_spec",
    "free_basis",
    "ideal_span",
    "arity_component",
    "quadratic_dual",
    "black_square",
    "relations_sum_check",
    "split_basis",
    "relation_vector",
]


class SpecError(ValueError):
    """Base class for invalid operad presentations."""


class MalformedSpec(SpecError):
    pass


class GeneratorIndexError(SpecError):
    pass


class ZeroCoefficientError(SpecError):
    pass


class DependentRelationsError(SpecError):
    pass


class NonConformingRelation(SpecError):
    """A relation without both a Left part and a Right part."""


class UnknownOperad(SpecError):
    pass


class SplitBasisError(ArithmeticError):
    """The copy representatives are dependent in the dual operad."""


@dataclass(frozen=True)
class Comb3Term:
    shape: str  # "L" or "R"
    root: int
    upper: int
    coeff: Fraction

    def __post_init__(self):
        if self.shape not in ("L", "R"):
            raise MalformedSpec(f"shape must be 'L' or 'R', got {self.shape!r}")
        object.__setattr__(self, "coeff", Fraction(self.coeff))


Relation = Tuple[Comb3Term, ...]


def _comb_index(shape: str, root: int, upper: int, g: int) -> int:
    return (g * g if shape == "R" else 0) + root * g + upper


def _comb_term(idx: int, g: int, coeff) -> Comb3Term:
    shape = "R" if idx >= g * g else "L"
    idx %= g * g
    return Comb3Term(shape, idx // g, idx % g, coeff)


@dataclass(frozen=True)
class OperadPresentation:
    """Generators and quadratic relations of a binary ns operad.

    Relations are stored merged, sorted by comb index (Left terms first), and
    scaled so the first coefficient is +1.  ``factors`` records the built-in
    black-square factors ("ass"/"dend") of this operad and ``split_factors``
    those of the operad this one is the quadratic dual of; both drive the
    copy-labeled bases and are ignored by equality.
    """

    name: str
    generators: Tuple[str, ...]
    relations: Tuple[Relation, ...]
    factors: Optional[Tuple[str, ...]] = field(default=None, compare=False)
    split_factors: Optional[Tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        g = len(self.generators)
        object.__setattr__(self, "generators", tuple(self.generators))
        rels = []
        for rel in self.relations:
            acc: Dict[int, Fraction] = {}
            for t in rel:
                if not (0 <= t.root < g and 0 <= t.upper < g):
                    raise GeneratorIndexError(
                        f"term {t.shape}({t.root}, {t.upper}) refers past {g} generators"
                    )
                if not t.coeff:
                    raise ZeroCoefficientError(f"zero coefficient in relation {rel!r}")
                k = _comb_index(t.shape, t.root, t.upper, g)
                acc[k] = acc.get(k, 0) + t.coeff
            acc = {k: v for k, v in sorted(acc.items()) if v}
            if acc:
                lead = next(iter(acc.values()))
                acc = {k: v / lead for k, v in acc.items()}
            rels.append(tuple(_comb_term(k, g, v) for k, v in acc.items()))
        object.__setattr__(self, "relations", tuple(rels))
        if rels:
            m = SparseMatrix(
                2 * g * g,
                len(rels),
                ((k, j, v) for j, r in enumerate(self.relations) for k, v in relation_vector(self, r).items()),
            )
            if rank(m) != len(rels):
                raise DependentRelationsError(f"relations of {self.name!r} are linearly dependent")

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    def __repr__(self):
        return f"OperadPresentation({self.name!r}, {len(self.generators)} generators, {len(self.relations)} relations)"


def relation_vector(p: OperadPresentation, rel: Relation) -> Dict[int, Fraction]:
    g = p.n_generators
    return {_comb_index(t.shape, t.root, t.upper, g): t.coeff for t in rel}


def _rel(*terms) -> Relation:
    return tuple(Comb3Term(s, r, u, Fraction(c)) for s, r, u, c in terms)


# ---------------------------------------------------------------------------
# built-ins

_PREC, _SUCC = 0, 1


def _ass() -> OperadPresentation:
    return OperadPresentation(
        "ass", ("*",), (_rel(("L", 0, 0, 1), ("R", 0, 0, -1)),), factors=("ass",)
    )


def _dend() -> OperadPresentation:
    p, s = _PREC, _SUCC
    return OperadPresentation(
        "dend",
        ("<", ">"),
        (
            # (x<y)<z = x<(y*z)
            _rel(("L", p, p, 1), ("R", p, p, -1), ("R", p, s, -1)),
            # (x>y)<z = x>(y<z)
            _rel(("L", p, s, 1), ("R", s, p, -1)),
            # (x*y)>z = x>(y>z)
            _rel(("L", s, p, 1), ("L", s, s, 1), ("R", s, s, -1)),
        ),
        factors=("dend",),
    )


_POW = re.compile(r"^dend_pow\((\d+)\)$|^dend_pow(\d+)$")


def builtin(name: str) -> OperadPresentation:
    """``ass``, ``dend``, ``dias``, ``quad`` or ``dend_pow(m)``."""
    key = name.strip().lower()
    if key == "ass":
        return _ass()
    if key == "dend":
        return _dend()
    if key == "dias":
        d = quadratic_dual(_dend())
        return OperadPresentation("dias", d.generators, d.relations, split_factors=d.split_factors)
    if key == "quad":
        q = black_square(_dend(), _dend())
        return OperadPresentation("quad", q.generators, q.relations, factors=q.factors)
    match = _POW.match(key)
    if match:
        m = int(match.group(1) or match.group(2))
        if m < 1:
            raise UnknownOperad(f"dend_pow needs m >= 1, got {m}")
        p = _dend()
        for _ in range(m - 1):
            p = black_square(_dend(), p)
        return OperadPresentation(f"dend_pow({m})", p.generators, p.relations, factors=p.factors)
    raise UnknownOperad(f"unknown operad {name!r}")


# ---------------------------------------------------------------------------
# JSON


def to_spec(p: OperadPresentation) -> dict:
    return {
        "name": p.name,
        "generators": list(p.generators),
        "relations": [
            [
                {"shape": t.shape, "root": t.root, "upper": t.upper, "coeff": str(t.coeff)}
                for t in rel
            ]
            for rel in p.relations
        ],
    }


def dump_spec(p: OperadPresentation) -> str:
    return json.dumps(to_spec(p), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def parse_spec(document) -> OperadPresentation:
    """Build a presentation from spec JSON (bytes, str or already-parsed dict)."""
    if isinstance(document, (bytes, bytearray)):
        document = document.decode("utf-8")
    if isinstance(document, str):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as exc:
            raise MalformedSpec(f"invalid JSON: {exc}") from None
    else:
        data = document
    if not isinstance(data, dict):
        raise MalformedSpec("spec must be a JSON object")
    try:
        name = data["name"]
        gens = data["generators"]
        rels = data["relations"]
    except KeyError as exc:
        raise MalformedSpec(f"missing field {exc}") from None
    if not isinstance(name, str) or not isinstance(gens, list) or not isinstance(rels, list):
        raise MalformedSpec("name must be a string, generators and relations lists")
    if not all(isinstance(x, str) for x in gens):
        raise MalformedSpec("generator symbols must be strings")
    relations = []
    for rel in rels:
        if not isinstance(rel, list):
            raise MalformedSpec("each relation must be a list of terms")
        terms = []
        for t in rel:
            try:
                shape, root, upper, coeff = t["shape"], t["root"], t["upper"], t["coeff"]
            except (KeyError, TypeError):
                raise MalformedSpec(f"bad term {t!r}") from None
            if not isinstance(root, int) or not isinstance(upper, int) or isinstance(root, bool):
                raise MalformedSpec(f"indices must be integers in {t!r}")
            if isinstance(coeff, float) or not isinstance(coeff, (str, int)):
                raise MalformedSpec(f"coefficient must be a rational string in {t!r}")
            try:
                c = Fraction(coeff)
            except (ValueError, ZeroDivisionError):
                raise MalformedSpec(f"bad coefficient {coeff!r}") from None
            if not 0 <= root < len(gens) or not 0 <= upper < len(gens):
                raise GeneratorIndexError(f"generator index out of range in {t!r}")
            if c == 0:
                raise ZeroCoefficientError(f"zero coefficient in {t!r}")
            terms.append(Comb3Term(shape, root, upper, c))
        relations.append(tuple(terms))
    return OperadPresentation(name, tuple(gens), tuple(relations))


# ---------------------------------------------------------------------------
# duals and products


def quadratic_dual(p: OperadPresentation) -> OperadPresentation:
    """Dual generators with the orthogonal complement of the relations.

    Pairing on comb trees: Left/Left +1, Right/Right -1, mixed 0.
    """
    g = p.n_generators
    size = 2 * g * g
    half = g * g
    # rows are relations with their Right half negated; kernel = complement
    m = SparseMatrix(
        len(p.relations),
        size,
        (
            (j, k, v if k < half else -v)
            for j, rel in enumerate(p.relations)
            for k, v in relation_vector(p, rel).items()
        ),
    )
    comp = kernel_basis(m)
    rels = tuple(tuple(_comb_term(k, g, v) for k, v in vec.items()) for vec in comp)
    return OperadPresentation(
        p.name + "!",
        tuple(x + "!" for x in p.generators),
        rels,
        split_factors=p.factors,
    )


def _split_relation(rel: Relation):
    left = [t for t in rel if t.shape == "L"]
    right = [t for t in rel if t.shape == "R"]
    if not left or not right:
        raise NonConformingRelation(f"relation {rel!r} lacks a Left or a Right side")
    return left, right


def black_square(p: OperadPresentation, q: OperadPresentation) -> OperadPresentation:
    """Pairs of generators; relation (r, s) is (L_r (x) L_s) - (R_r (x) R_s).

    Each relation is read as ``sum(Left terms) = -sum(Right terms)``, so the
    Right sides enter with their signs flipped before being paired.
    """
    gq = q.n_generators
    gens = tuple(f"{a}/{b}" for a in p.generators for b in q.generators)
    rels = []
    for r in p.relations:
        lr, rr = _split_relation(r)
        for s in q.relations:
            ls, rs = _split_relation(s)
            terms = []
            for t, u in product(lr, ls):
                terms.append(Comb3Term("L", t.root * gq + u.root, t.upper * gq + u.upper, t.coeff * u.coeff))
            for t, u in product(rr, rs):
                # -( (-t) * (-u) )
                terms.append(Comb3Term("R", t.root * gq + u.root, t.upper * gq + u.upper, -(t.coeff * u.coeff)))
            rels.append(tuple(terms))
    factors = p.factors + q.factors if p.factors is not None and q.factors is not None else None
    return OperadPresentation(f"{p.name}#{q.name}", gens, tuple(rels), factors=factors)


def relations_sum_check(p: OperadPresentation) -> bool:
    """True iff the relations add up to associativity of the sum of generators."""
    g = p.n_generators
    if g == 0:
        return False
    total: Dict[int, Fraction] = {}
    for rel in p.relations:
        for k, v in relation_vector(p, rel).items():
            total[k] = total.get(k, 0) + v
    total = {k: v for k, v in total.items() if v}
    target = {k: Fraction(1 if k < g * g else -1) for k in range(2 * g * g)}
    return total == target


# ---------------------------------------------------------------------------
# labeled bases


class LabeledBasis:
    """Ordered basis of labeled trees: shapes in order, labels lexicographic.

    ``dim_of_arity(l)`` is the number of labels available at a vertex of
    arity ``l``; labels are 0-based.
    """

    def __init__(self, shapes: Sequence[Tree], dim_of_arity):
        self.shapes = tuple(shapes)
        self.offsets: Dict[Tree, int] = {}
        self.radices: Dict[Tree, Tuple[int, ...]] = {}
        off = 0
        for s in self.shapes:
            rad = tuple(dim_of_arity(a) for a in arities(s))
            self.offsets[s] = off
            self.radices[s] = rad
            size = 1
            for r in rad:
                size *= r
            off += size
        self.size = off
        self._starts = [self.offsets[s] for s in self.shapes]

    def __len__(self) -> int:
        return self.size

    def index(self, shape: Tree, labels: Sequence[int]) -> int:
        idx = 0
        for lab, rad in zip(labels, self.radices[shape]):
            idx = idx * rad + lab
        return self.offsets[shape] + idx

    def element(self, idx: int) -> LabeledTree:
        if not 0 <= idx < self.size:
            raise IndexError(idx)
        from bisect import bisect_right

        k = bisect_right(self._starts, idx) - 1
        shape = self.shapes[k]
        rem = idx - self._starts[k]
        labels = []
        for rad in reversed(self.radices[shape]):
            labels.append(rem % rad)
            rem //= rad
        return LabeledTree(shape, tuple(reversed(labels)))

    def labelings(self, shape: Tree) -> Iterator[Tuple[int, ...]]:
        return product(*(range(r) for r in self.radices[shape]))

    def __iter__(self) -> Iterator[LabeledTree]:
        for s in self.shapes:
            for labs in self.labelings(s):
                yield LabeledTree(s, labs)


@lru_cache(maxsize=None)
def _free_indexer(g: int, n: int) -> LabeledBasis:
    return LabeledBasis(binary_trees(n), lambda a: g)


def free_basis(p: OperadPresentation, n: int) -> List[LabeledTree]:
    """Generator-labeled binary trees with ``n`` leaves."""
    if n < 2:
        raise ValueError("arity must be at least 2")
    return list(_free_indexer(p.n_generators, n))


def _ideal_columns(p: OperadPresentation, n: int) -> Iterator[Dict[int, Fraction]]:
    # Every embedding of a relation contracts to a tree with one ternary
    # vertex; expanding that vertex as a left or right comb recovers the two
    # sides.  Enumerating those trees lists each embedding exactly once.
    g = p.n_generators
    index = _free_indexer(g, n)
    rels = [relation_vector(p, r) for r in p.relations]
    for s in enumerate_trees(n, n - 2):
        ar = arities(s)
        w = ar.index(3)
        combs = {}
        for x in vertex_expansions(s):
            if x.vertex == w:
                combs["L" if x.position == 1 else "R"] = x
        others = [v for v in range(len(ar)) if v != w]
        for labs in product(range(g), repeat=len(others)):
            base = dict(zip(others, labs))
            for rel in rels:
                col: Dict[int, Fraction] = {}
                for k, c in rel.items():
                    t = _comb_term(k, g, c)
                    x = combs[t.shape]
                    # vertices of s after w shift by one in the expanded tree
                    full = []
                    for v in range(len(ar)):
                        if v == w:
                            full.append(t.root)
                        else:
                            full.append(base[v])
                    full.insert(x.new_vertex, t.upper)
                    col[index.index(x.tree, full)] = c
                yield col


def ideal_span(p: OperadPresentation, n: int) -> SparseMatrix:
    """Spanning set of the arity-``n`` ideal, one column per relation embedding.

    Rows follow :func:`free_basis`.
    """
    if n < 3:
        raise ValueError("the ideal starts in arity 3")
    cols = list(_ideal_columns(p, n))
    return SparseMatrix.from_columns(len(_free_indexer(p.n_generators, n)), cols)


# ---------------------------------------------------------------------------
# quotients


def _echelon_top(vectors: Iterable[Dict[int, Fraction]]) -> Dict[int, Dict[int, Fraction]]:
    """Fully reduced echelon basis with pivot = highest index of each vector."""
    pivots: Dict[int, Dict[int, Fraction]] = {}
    for raw in vectors:
        v = dict(raw)
        while v:
            top = max(v)
            piv = pivots.get(top)
            if piv is None:
                c = v[top]
                if c != 1:
                    v = {k: x / c for k, x in v.items()}
                pivots[top] = v
                break
            c = v[top]
            for k, x in piv.items():
                s = v.get(k, 0) - c * x
                if s:
                    v[k] = s
                else:
                    del v[k]
    for p in sorted(pivots):
        row = pivots[p]
        for q in [k for k in row if k != p and k in pivots]:
            c = row.get(q)
            if not c:
                continue
            for k, x in pivots[q].items():
                s = row.get(k, 0) - c * x
                if s:
                    row[k] = s
                else:
                    del row[k]
    return pivots


class QuotientSpace:
    """Arity component of a presented operad.

    ``ambient`` indexes the free basis; ``basis`` lists the ambient indices of
    the chosen basis elements (their classes form a basis of the quotient);
    :meth:`reduce` writes any ambient element in that basis.
    ``structure[(a, alpha, i, beta)]`` is the reduced graft of the basis element
    ``alpha`` of arity ``a`` with ``beta`` at leaf ``i``, for every pair of
    lower arities landing here.
    """

    def __init__(self, presentation: OperadPresentation, arity: int, pivots, basis=None):
        self.presentation = presentation
        self.arity = arity
        self.ambient = _free_indexer(presentation.n_generators, arity)
        self._pivots = pivots
        self._lex = [k for k in range(len(self.ambient)) if k not in pivots]
        self._lex_pos = {k: i for i, k in enumerate(self._lex)}
        self.dim = len(self._lex)
        self._change = None
        if basis is None:
            self.basis = tuple(self._lex)
        else:
            self.basis = tuple(basis)
            if len(self.basis) != self.dim:
                raise SplitBasisError(
                    f"{len(self.basis)} representatives for a {self.dim}-dimensional space"
                )
            cols = [self._lex_reduce(k) for k in self.basis]
            s = SparseMatrix.from_columns(self.dim, cols)
            if rank(s) != self.dim:
                raise SplitBasisError(f"representatives are dependent in arity {arity}")
            from .linalg import solve_right

            self._change = solve_right(s, SparseMatrix.identity(self.dim))
        self._cache: Dict[int, Dict[int, Fraction]] = {}
        self.structure: Dict[Tuple[int, int, int, int], Dict[int, Fraction]] = {}

    def _lex_reduce(self, k: int) -> Dict[int, Fraction]:
        row = self._pivots.get(k)
        if row is None:
            return {self._lex_pos[k]: Fraction(1)}
        return {self._lex_pos[j]: -c for j, c in row.items() if j != k}

    def reduce(self, k: int) -> Dict[int, Fraction]:
        """Coordinates of ambient element ``k`` in the chosen basis."""
        hit = self._cache.get(k)
        if hit is not None:
            return hit
        lex = self._lex_reduce(k)
        if self._change is None:
            out = lex
        else:
            out = {}
            for j, c in lex.items():
                for i, x in self._change.column(j).items():
                    s = out.get(i, 0) + c * x
                    if s:
                        out[i] = s
                    else:
                        out.pop(i, None)
            out = dict(sorted(out.items()))
        self._cache[k] = out
        return out

    def reduce_vector(self, vec: Dict[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for k, c in vec.items():
            for i, x in self.reduce(k).items():
                s = out.get(i, 0) + c * x
                if s:
                    out[i] = s
                else:
                    out.pop(i, None)
        return out

    def reduction_matrix(self) -> SparseMatrix:
        """``dim x len(ambient)`` matrix of :meth:`reduce`."""
        return SparseMatrix.from_columns(self.dim, [self.reduce(k) for k in range(len(self.ambient))])

    def lift(self, pos: int) -> LabeledTree:
        return self.ambient.element(self.basis[pos])

    def __repr__(self):
        return f"QuotientSpace({self.presentation.name!r}, arity={self.arity}, dim={self.dim})"


def _split_representatives(p: OperadPresentation, n: int) -> List[int]:
    from .associahedron import copies, copy_labels, resolve_label

    factors = p.split_factors
    index = _free_indexer(p.n_generators, n)
    shape = left_comb(n)
    reps = []
    for copy in copies(factors, n):
        comp = copy_labels(factors, shape, copy)
        labels = []
        for v, lab in enumerate(comp):
            gen = 0
            for f, x in zip(factors, lab):
                r = resolve_label(f, 2, x)[0]
                gen = gen * (2 if f == "dend" else 1) + (r - 1)
            labels.append(gen)
        reps.append(index.index(shape, labels))
    return reps


@lru_cache(maxsize=None)
def arity_component(p: OperadPresentation, n: int, basis: str = "lex") -> QuotientSpace:
    """Arity-``n`` component with structure constants.

    ``basis="lex"`` picks the lexicographically first ambient elements that
    are independent modulo the ideal.  ``basis="split"`` (only for duals of
    built-ins) uses the copy representatives of :func:`split_basis`, in copy
    order, in every arity.
    """
    if n < 2:
        raise ValueError("arity must be at least 2")
    if basis not in ("lex", "split"):
        raise ValueError(f"unknown basis policy {basis!r}")
    if basis == "split" and p.split_factors is None:
        raise ValueError(f"{p.name!r} has no split basis")
    pivots = _echelon_top(_ideal_columns(p, n)) if n >= 3 else {}
    reps = _split_representatives(p, n) if basis == "split" else None
    q = QuotientSpace(p, n, pivots, reps)
    for a in range(2, n):
        b = n + 1 - a
        lower = arity_component(p, a, basis)
        upper = arity_component(p, b, basis)
        for alpha in range(lower.dim):
            la = lower.lift(alpha)
            for i in range(1, a + 1):
                for beta in range(upper.dim):
                    t = graft_labeled(la, i, upper.lift(beta))
                    q.structure[(a, alpha, i, beta)] = q.reduce(q.ambient.index(t.shape, t.labels))
    return q


def split_basis(p: OperadPresentation, n: int) -> List[LabeledTree]:
    """Copy representatives forming a basis of ``quadratic_dual(p)(n)``.

    Raises :class:`SplitBasisError` if they are dependent.
    """
    if p.factors is None:
        raise ValueError(f"{p.name!r} is not built from ass/dend factors")
    q = arity_component(quadratic_dual(p), n, "split")
    return [q.lift(i) for i in range(q.dim)]
