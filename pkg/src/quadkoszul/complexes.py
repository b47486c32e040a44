"""Finite chain complexes of based rational vector spaces.

Degrees are listed in descending order, e.g. ``(1, 0, -1, -2)``.  The
differential raises degree: ``diffs[j]`` maps the degree ``j - 1`` piece into
the degree ``j`` piece (from trees with fewer vertices to trees with more).
A homotopy goes the other way, ``h[j]`` maps degree ``j`` to ``j - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Mapping, Sequence, Tuple

from .linalg import SparseMatrix, Unsolvable, rank, solve_right

__all__ = [
    "ChainComplex",
    "ChainMap",
    "Homotopy",
    "NotExact",
    "verify_complex",
    "homology_dims",
    "euler_characteristic",
    "direct_sum",
    "verify_chain_map",
    "identity_map",
    "zero_map",
    "compose",
    "contracting_homotopy",
    "chain_homotopy",
    "verify_homotopy_identity",
]


@dataclass(frozen=True)
class ChainComplex:
    degrees: Tuple[int, ...]
    bases: Mapping[int, Tuple[Hashable, ...]]
    diffs: Mapping[int, SparseMatrix]
    name: str = ""

    def __post_init__(self):
        degs = tuple(self.degrees)
        object.__setattr__(self, "degrees", degs)
        if list(degs) != sorted(degs, reverse=True) or len(set(degs)) != len(degs):
            raise ValueError(f"degrees must be strictly descending, got {degs}")
        if any(b - a != 1 for a, b in zip(degs[1:], degs)):
            raise ValueError("degrees must be consecutive")
        for j in degs:
            if j not in self.bases:
                raise ValueError(f"missing basis in degree {j}")
        for j in degs[:-1]:
            d = self.diffs.get(j)
            if d is None:
                raise ValueError(f"missing differential into degree {j}")
            if d.shape != (self.dim(j), self.dim(j - 1)):
                raise ValueError(
                    f"differential into degree {j} has shape {d.shape}, "
                    f"expected {(self.dim(j), self.dim(j - 1))}"
                )

    def dim(self, j: int) -> int:
        return len(self.bases.get(j, ()))

    def dims(self) -> List[int]:
        return [self.dim(j) for j in self.degrees]

    def d(self, j: int) -> SparseMatrix:
        """Differential from degree ``j - 1`` to ``j`` (zero outside the range)."""
        m = self.diffs.get(j)
        if m is None:
            return SparseMatrix.zeros(self.dim(j), self.dim(j - 1))
        return m

    @property
    def top(self) -> int:
        return self.degrees[0]

    @property
    def bottom(self) -> int:
        return self.degrees[-1]

    def with_diff(self, j: int, m: SparseMatrix) -> "ChainComplex":
        diffs = dict(self.diffs)
        diffs[j] = m
        return ChainComplex(self.degrees, self.bases, diffs, self.name)


@dataclass(frozen=True)
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    maps: Mapping[int, SparseMatrix]

    def at(self, j: int) -> SparseMatrix:
        m = self.maps.get(j)
        if m is None:
            return SparseMatrix.zeros(self.target.dim(j), self.source.dim(j))
        return m


@dataclass(frozen=True)
class Homotopy:
    complex: ChainComplex
    maps: Mapping[int, SparseMatrix] = field(default_factory=dict)

    def at(self, j: int) -> SparseMatrix:
        """Component from degree ``j`` to degree ``j - 1``."""
        m = self.maps.get(j)
        if m is None:
            return SparseMatrix.zeros(self.complex.dim(j - 1), self.complex.dim(j))
        return m


class NotExact(ArithmeticError):
    def __init__(self, degree: int, homology: int):
        super().__init__(f"homology of dimension {homology} in degree {degree}")
        self.degree = degree
        self.homology = homology


def verify_complex(c: ChainComplex) -> bool:
    return all((c.d(j + 1) @ c.d(j)).is_zero() for j in c.degrees[1:-1])


def homology_dims(c: ChainComplex) -> List[int]:
    """Homology dimension per degree, in the order of ``c.degrees``."""
    out = []
    for j in c.degrees:
        outgoing = rank(c.d(j + 1)) if j + 1 in c.diffs else 0
        incoming = rank(c.d(j)) if j in c.diffs else 0
        out.append(c.dim(j) - outgoing - incoming)
    return out


def euler_characteristic(c: ChainComplex) -> int:
    return sum((-1) ** (j % 2) * c.dim(j) for j in c.degrees)


def direct_sum(cs: Sequence[ChainComplex], name: str = "") -> ChainComplex:
    """Blockwise sum; basis elements become ``(copy index, key)``."""
    if not cs:
        raise ValueError("empty direct sum")
    degs = cs[0].degrees
    for c in cs[1:]:
        if c.degrees != degs:
            raise ValueError(f"degree ranges differ: {degs} vs {c.degrees}")
    bases = {j: tuple((k, b) for k, c in enumerate(cs) for b in c.bases[j]) for j in degs}
    diffs = {j: SparseMatrix.block_diag([c.d(j) for c in cs]) for j in degs[:-1]}
    return ChainComplex(degs, bases, diffs, name)


def verify_chain_map(m: ChainMap) -> bool:
    s, t = m.source, m.target
    if s.degrees != t.degrees:
        return False
    for j in s.degrees:
        if m.at(j).shape != (t.dim(j), s.dim(j)):
            return False
    for j in s.degrees[:-1]:
        if t.d(j) @ m.at(j - 1) != m.at(j) @ s.d(j):
            return False
    return True


def identity_map(c: ChainComplex) -> ChainMap:
    return ChainMap(c, c, {j: SparseMatrix.identity(c.dim(j)) for j in c.degrees})


def zero_map(source: ChainComplex, target: ChainComplex) -> ChainMap:
    return ChainMap(source, target, {})


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    """``g`` after ``f``."""
    return ChainMap(f.source, g.target, {j: g.at(j) @ f.at(j) for j in f.source.degrees})


def chain_homotopy(c: ChainComplex, target: Mapping[int, SparseMatrix]) -> Homotopy:
    """Find ``h`` with ``d h + h d = target`` degreewise.

    ``target[j]`` is an endomorphism of the degree-``j`` piece that commutes
    with ``d`` and is null-homotopic.  Works upward from the lowest degree,
    solving ``h[j+1] d[j+1] = target[j] - d[j] h[j]`` each time (least-index
    pivots, free variables zero).  Raises :class:`NotExact` when some degree
    has no solution; the top degree is checked at the end.
    """
    h: Dict[int, SparseMatrix] = {}
    degs = list(reversed(c.degrees))  # ascending
    for j in degs:
        rest = target[j] - c.d(j) @ (h[j] if j in h else SparseMatrix.zeros(c.dim(j - 1), c.dim(j)))
        if j == c.top:
            if not rest.is_zero():
                raise NotExact(j, homology_dims(c)[0])
            break
        d_out = c.d(j + 1)
        try:
            ht = solve_right(d_out.T, rest.T)
        except Unsolvable:
            raise NotExact(j, homology_dims(c)[c.degrees.index(j)]) from None
        h[j + 1] = ht.T
    return Homotopy(c, h)


def contracting_homotopy(c: ChainComplex) -> Homotopy:
    """``h`` with ``d h + h d = identity``; raises :class:`NotExact`."""
    return chain_homotopy(c, {j: SparseMatrix.identity(c.dim(j)) for j in c.degrees})


def verify_homotopy_identity(
    i_minus_p: Mapping[int, SparseMatrix], h: Homotopy, c: ChainComplex
) -> bool:
    """Check ``i_minus_p[j] == d h + h d`` in every degree of ``c``."""
    for j in c.degrees:
        lhs = i_minus_p[j]
        if lhs.shape != (c.dim(j), c.dim(j)):
            return False
        rhs = c.d(j) @ h.at(j) + h.at(j + 1) @ c.d(j + 1)
        if lhs != rhs:
            return False
    return True
