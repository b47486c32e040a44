"""Exact sparse linear algebra over the rationals.

Matrices are stored column-major as ``{col: {row: Fraction}}`` and never
mutated after construction.  All elimination routines work on private
copies and use exact integer or :class:`fractions.Fraction` arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

__all__ = [
    "SparseMatrix",
    "Unsolvable",
    "rank",
    "kernel_basis",
    "solve_right",
    "as_fraction",
]

Vector = Dict[int, Fraction]


class Unsolvable(ValueError):
    """Raised by :func:`solve_right` when ``a x = b`` has no solution."""


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point entries are not allowed")
    return Fraction(value)


class SparseMatrix:
    """Immutable sparse matrix with rational entries.

    ``entries`` may be a mapping ``{(row, col): value}`` or an iterable of
    ``(row, col, value)`` triples.  Repeated positions are summed and zeros
    are dropped.
    """

    __slots__ = ("rows", "cols", "_data", "_rows_cache", "_rank_cache")

    def __init__(self, rows: int, cols: int, entries=()):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimension")
        self.rows = rows
        self.cols = cols
        data: Dict[int, Vector] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for item in items:
            if isinstance(entries, Mapping):
                (r, c), v = item
            else:
                r, c, v = item
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            v = as_fraction(v)
            if not v:
                continue
            col = data.setdefault(c, {})
            s = col.get(r, 0) + v
            if s:
                col[r] = s
            else:
                del col[r]
                if not col:
                    del data[c]
        self._data = data
        self._rows_cache = None
        self._rank_cache = None

    @classmethod
    def _from_columns(cls, rows: int, cols: int, data: Dict[int, Vector]) -> "SparseMatrix":
        # trusted constructor: data already clean and owned by the new matrix
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._data = {c: v for c, v in data.items() if v}
        m._rows_cache = None
        m._rank_cache = None
        return m

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, object]]) -> "SparseMatrix":
        data = {}
        for c, col in enumerate(columns):
            clean = {}
            for r, v in col.items():
                if not 0 <= r < rows:
                    raise IndexError(f"row {r} outside 0..{rows - 1}")
                v = as_fraction(v)
                if v:
                    clean[r] = v
            if clean:
                data[c] = clean
        return cls._from_columns(rows, len(columns), data)

    @classmethod
    def from_dense(cls, rows_list: Sequence[Sequence[object]]) -> "SparseMatrix":
        nrows = len(rows_list)
        ncols = len(rows_list[0]) if nrows else 0
        return cls(
            nrows,
            ncols,
            ((i, j, v) for i, row in enumerate(rows_list) for j, v in enumerate(row) if v),
        )

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls._from_columns(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls._from_columns(rows, cols, {})

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self._data.values())

    def __getitem__(self, pos: Tuple[int, int]) -> Fraction:
        r, c = pos
        return self._data.get(c, {}).get(r, Fraction(0))

    def column(self, c: int) -> Vector:
        return dict(self._data.get(c, {}))

    def row(self, r: int) -> Vector:
        return dict(self._row_dicts().get(r, {}))

    def entries(self) -> List[Tuple[int, int, Fraction]]:
        """All nonzero entries sorted by (row, col)."""
        out = [(r, c, v) for c, col in self._data.items() for r, v in col.items()]
        out.sort()
        return out

    def nonzero_columns(self) -> List[int]:
        return sorted(self._data)

    def _row_dicts(self) -> Dict[int, Vector]:
        if self._rows_cache is None:
            rows: Dict[int, Vector] = {}
            for c in sorted(self._data):
                for r, v in self._data[c].items():
                    rows.setdefault(r, {})[c] = v
            self._rows_cache = rows
        return self._rows_cache

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for c, col in self._data.items():
            for r, v in col.items():
                out[r][c] = v
        return out

    def is_zero(self) -> bool:
        return not self._data

    # -- algebra ----------------------------------------------------------

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix._from_columns(
            self.cols, self.rows, {r: dict(v) for r, v in self._row_dicts().items()}
        )

    @property
    def T(self) -> "SparseMatrix":
        return self.transpose()

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out: Dict[int, Vector] = {}
        mine = self._data
        for j, bcol in other._data.items():
            acc: Vector = {}
            for k, bkj in bcol.items():
                acol = mine.get(k)
                if acol is None:
                    continue
                for i, aik in acol.items():
                    s = acc.get(i, 0) + aik * bkj
                    if s:
                        acc[i] = s
                    else:
                        del acc[i]
            if acc:
                out[j] = acc
        return SparseMatrix._from_columns(self.rows, other.cols, out)

    def _combine(self, other: "SparseMatrix", sign: int) -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = {c: dict(col) for c, col in self._data.items()}
        for c, col in other._data.items():
            tgt = out.setdefault(c, {})
            for r, v in col.items():
                s = tgt.get(r, 0) + sign * v
                if s:
                    tgt[r] = s
                else:
                    del tgt[r]
        return SparseMatrix._from_columns(self.rows, self.cols, out)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._combine(other, -1)

    def scale(self, factor) -> "SparseMatrix":
        factor = as_fraction(factor)
        if not factor:
            return SparseMatrix.zeros(self.rows, self.cols)
        return SparseMatrix._from_columns(
            self.rows,
            self.cols,
            {c: {r: v * factor for r, v in col.items()} for c, col in self._data.items()},
        )

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset((c, frozenset(v.items())) for c, v in self._data.items())))

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    # -- assembly ---------------------------------------------------------

    @staticmethod
    def hstack(blocks: Sequence["SparseMatrix"]) -> "SparseMatrix":
        if not blocks:
            raise ValueError("nothing to stack")
        rows = blocks[0].rows
        out: Dict[int, Vector] = {}
        off = 0
        for b in blocks:
            if b.rows != rows:
                raise ValueError("row counts differ")
            for c, col in b._data.items():
                out[c + off] = dict(col)
            off += b.cols
        return SparseMatrix._from_columns(rows, off, out)

    @staticmethod
    def vstack(blocks: Sequence["SparseMatrix"]) -> "SparseMatrix":
        return SparseMatrix.hstack([b.transpose() for b in blocks]).transpose()

    @staticmethod
    def block_diag(blocks: Sequence["SparseMatrix"]) -> "SparseMatrix":
        out: Dict[int, Vector] = {}
        roff = coff = 0
        for b in blocks:
            for c, col in b._data.items():
                out[c + coff] = {r + roff: v for r, v in col.items()}
            roff += b.rows
            coff += b.cols
        return SparseMatrix._from_columns(roff, coff, out)


# ---------------------------------------------------------------------------
# rank


def _integer_vector(vec: Mapping[int, Fraction]) -> Dict[int, int]:
    den = 1
    for v in vec.values():
        d = v.denominator
        if d != 1:
            den = den * d // gcd(den, d)
    return {k: int(v * den) for k, v in vec.items()}


def _primitive(vec: Dict[int, int]) -> Dict[int, int]:
    g = 0
    for v in vec.values():
        g = gcd(g, v)
        if g == 1:
            return vec
    if g > 1:
        return {k: v // g for k, v in vec.items()}
    return vec


def _rank_of_vectors(vectors: Iterable[Dict[int, int]], order: Mapping[int, int]) -> int:
    """Fraction-free echelon reduction; pivot = lowest coordinate under ``order``."""
    pivots: Dict[int, Dict[int, int]] = {}
    for raw in vectors:
        v = {order[k]: x for k, x in raw.items()}
        while v:
            lead = min(v)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = _primitive(v)
                break
            a = v[lead]
            b = piv[lead]
            if a == b:
                for k, x in piv.items():
                    s = v.get(k, 0) - x
                    if s:
                        v[k] = s
                    else:
                        del v[k]
            elif a == -b:
                for k, x in piv.items():
                    s = v.get(k, 0) + x
                    if s:
                        v[k] = s
                    else:
                        del v[k]
            else:
                g = gcd(a, b)
                fa, fb = b // g, a // g
                nv = {}
                for k, x in v.items():
                    nv[k] = x * fa
                for k, x in piv.items():
                    s = nv.get(k, 0) - x * fb
                    if s:
                        nv[k] = s
                    else:
                        del nv[k]
                v = _primitive(nv)
    return len(pivots)


def rank(m: SparseMatrix) -> int:
    """Rank over the rationals.

    The shorter side of the matrix supplies the vectors; coordinates are
    ordered by ascending occurrence count (a static Markowitz heuristic) to
    limit fill-in.  The result is cached on the matrix.
    """
    if m._rank_cache is not None:
        return m._rank_cache
    if m.is_zero():
        m._rank_cache = 0
        return 0
    if len(m._data) <= len(m._row_dicts()):
        vectors = [m._data[c] for c in sorted(m._data)]
    else:
        rd = m._row_dicts()
        vectors = [rd[r] for r in sorted(rd)]
    counts: Dict[int, int] = {}
    for vec in vectors:
        for k in vec:
            counts[k] = counts.get(k, 0) + 1
    order = {k: i for i, k in enumerate(sorted(counts, key=lambda k: (counts[k], k)))}
    # sparse vectors first keeps the early pivots short
    vectors.sort(key=len)
    r = _rank_of_vectors((_integer_vector(v) for v in vectors), order)
    m._rank_cache = r
    return r


# ---------------------------------------------------------------------------
# reduced row echelon form over Fractions


def _rref_rows(rows: Iterable[Vector], pivot_limit: int) -> Dict[int, Vector]:
    """Reduced echelon form of ``rows``.

    Pivots are chosen among coordinates ``< pivot_limit`` (lowest first);
    coordinates ``>= pivot_limit`` are carried along as an augmented block.
    Returns ``{pivot: row}`` with every pivot entry equal to 1 and every
    other pivot coordinate cleared.  A row whose pivot part vanishes while its
    augmented part does not raises :class:`Unsolvable`.
    """
    pivots: Dict[int, Vector] = {}
    for raw in rows:
        v = dict(raw)
        while True:
            lead_candidates = [k for k in v if k < pivot_limit]
            if not lead_candidates:
                if v:
                    raise Unsolvable("inconsistent system")
                break
            lead = min(lead_candidates)
            piv = pivots.get(lead)
            if piv is None:
                inv = 1 / v[lead]
                pivots[lead] = {k: x * inv for k, x in v.items()}
                break
            a = v[lead]
            for k, x in piv.items():
                s = v.get(k, 0) - a * x
                if s:
                    v[k] = s
                else:
                    del v[k]
    # back substitution, highest pivot first
    for p in sorted(pivots, reverse=True):
        row = pivots[p]
        for q in [k for k in row if k != p and k < pivot_limit and k in pivots]:
            a = row.get(q)
            if not a:
                continue
            for k, x in pivots[q].items():
                s = row.get(k, 0) - a * x
                if s:
                    row[k] = s
                else:
                    del row[k]
    return pivots


def kernel_basis(m: SparseMatrix) -> List[Vector]:
    """Basis of the right kernel ``{x : m x = 0}`` as sparse vectors.

    One vector per free column, with a 1 in that column; ordered by free
    column index.
    """
    rd = m._row_dicts()
    piv = _rref_rows((rd[r] for r in sorted(rd)), m.cols)
    free = [c for c in range(m.cols) if c not in piv]
    out = []
    for f in free:
        vec = {f: Fraction(1)}
        for p, row in piv.items():
            x = row.get(f)
            if x:
                vec[p] = -x
        out.append(dict(sorted(vec.items())))
    return out


def solve_right(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    """Return ``x`` with ``a @ x == b``; free variables are set to zero.

    Raises :class:`Unsolvable` if some column of ``b`` is outside the
    column space of ``a``.
    """
    if a.rows != b.rows:
        raise ValueError(f"row mismatch: a is {a.shape}, b is {b.shape}")
    n = a.cols
    ar = a._row_dicts()
    br = b._row_dicts()
    rows = []
    for r in sorted(set(ar) | set(br)):
        v = dict(ar.get(r, {}))
        for c, x in br.get(r, {}).items():
            v[n + c] = x
        rows.append(v)
    piv = _rref_rows(rows, n)
    data: Dict[int, Vector] = {}
    for p, row in piv.items():
        for k, x in row.items():
            if k >= n:
                data.setdefault(k - n, {})[p] = x
    return SparseMatrix._from_columns(n, b.cols, data)
