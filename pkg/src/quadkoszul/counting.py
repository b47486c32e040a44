"""Dimension formulas, hypercube counts and generating-series checks."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from typing import Dict, List, Sequence, Tuple

from .trees import LabeledTree, left_comb, right_comb

__all__ = [
    "PREC",
    "SUCC",
    "quad_dim_formula",
    "hypercube_count",
    "hypercube_closed_form",
    "hypercube_total",
    "binomial_identity",
    "root_vectors",
    "hypercube_representative",
    "TruncatedSeries",
    "series_inverse",
    "dimension_series",
    "gk_check",
    "dimension_rows",
    "quad_dim_rows",
    "hypercube_rows",
    "rows_to_csv",
    "rows_to_json",
]

PREC = "<"
SUCC = ">"
_ALIASES = {"<": PREC, "≺": PREC, "prec": PREC, ">": SUCC, "≻": SUCC, "succ": SUCC}


def quad_dim_formula(n: int) -> int:
    """``(1/n) * sum_{j=n}^{2n-1} C(3n, n+1+j) C(j-1, j-n)``."""
    if n < 1:
        raise ValueError("n must be positive")
    total = sum(comb(3 * n, n + 1 + j) * comb(j - 1, j - n) for j in range(n, 2 * n))
    value = Fraction(total, n)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral value {value} at n={n}")
    return int(value)


# ---------------------------------------------------------------------------
# hypercube counts


def _normalize(v: Sequence[str]) -> Tuple[str, ...]:
    try:
        return tuple(_ALIASES[x] for x in v)
    except KeyError as exc:
        raise ValueError(f"root vector entries must be '<' or '>', got {exc}") from None


def root_vectors(m: int) -> List[Tuple[str, ...]]:
    return list(product((PREC, SUCC), repeat=m))


@lru_cache(maxsize=None)
def _succ_count(j: int, n: int) -> int:
    """Count for a root vector with ``j >= 1`` succ entries, by recurrence."""
    if n == 2:
        return 1
    # every nonzero pattern of the j coordinates feeds the next degree
    return sum(comb(j, k) * _succ_count(k, n - 1) for k in range(1, j + 1))


@lru_cache(maxsize=None)
def _prec_count(m: int, n: int) -> int:
    if n == 2:
        return 1
    return _prec_count(m, n - 1) + sum(comb(m, j) * _succ_count(j, n - 1) for j in range(1, m + 1))


def hypercube_closed_form(m: int, n: int, v: Sequence[str]) -> int:
    j = _normalize(v).count(SUCC)
    if j == 0:
        return (n - 1) ** m
    return (n - 1) ** j - (n - 2) ** j


def hypercube_count(m: int, n: int, v: Sequence[str]) -> int:
    """Spanning elements of degree ``n`` with root vector ``v``.

    Computed by the recurrences and checked against the closed forms; a
    mismatch raises :class:`ArithmeticError`.
    """
    v = _normalize(v)
    if len(v) != m or m < 1:
        raise ValueError(f"root vector must have length m={m}")
    if n < 2:
        raise ValueError("n must be at least 2")
    j = v.count(SUCC)
    value = _prec_count(m, n) if j == 0 else _succ_count(j, n)
    closed = hypercube_closed_form(m, n, v)
    if value != closed:
        raise ArithmeticError(f"recurrence gives {value}, closed form {closed} for {v} at n={n}")
    return value


def hypercube_total(m: int, n: int) -> int:
    """Sum of the counts over all ``2**m`` root vectors (equals ``n**m``)."""
    return sum(hypercube_count(m, n, v) for v in root_vectors(m))


def binomial_identity(j: int, n: int) -> bool:
    """``n^j - (n-1)^j == sum_k C(j,k) ((n-1)^k - (n-2)^k)``."""
    lhs = n**j - (n - 1) ** j
    rhs = sum(comb(j, k) * ((n - 1) ** k - (n - 2) ** k) for k in range(1, j + 1))
    return lhs == rhs


def hypercube_representative(c: Sequence[int]) -> LabeledTree:
    """Comb tree for a cube coordinate with entries in ``{1, 2, 3}``.

    Left comb unless some entry is 3.  Entry 1 puts ``<`` on both vertices,
    3 puts ``>`` on both, 2 puts ``>`` on the vertex whose leftmost leaf
    comes first (the upper vertex of a left comb, the root of a right comb)
    and ``<`` on the other.  Labels are tuples, root first.
    """
    c = tuple(c)
    if not c or any(x not in (1, 2, 3) for x in c):
        raise ValueError(f"coordinates must be in 1..3, got {c}")
    right = 3 in c
    root, upper = [], []
    for x in c:
        if x == 1:
            root.append(PREC)
            upper.append(PREC)
        elif x == 3:
            root.append(SUCC)
            upper.append(SUCC)
        elif right:
            root.append(SUCC)
            upper.append(PREC)
        else:
            root.append(PREC)
            upper.append(SUCC)
    shape = right_comb(3) if right else left_comb(3)
    return LabeledTree(shape, (tuple(root), tuple(upper)))


# ---------------------------------------------------------------------------
# series


@dataclass(frozen=True)
class TruncatedSeries:
    """``sum_{k=1}^{order} coeffs[k-1] t^k`` with zero constant term."""

    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(x) for x in self.coeffs))

    @classmethod
    def of(cls, values: Sequence) -> "TruncatedSeries":
        return cls(tuple(values))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        if 1 <= k <= self.order:
            return self.coeffs[k - 1]
        return Fraction(0)

    def twisted(self) -> "TruncatedSeries":
        """``-s(-t)``."""
        return TruncatedSeries(tuple(x if k % 2 else -x for k, x in enumerate(self.coeffs, 1)))

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """``self(inner(t))`` truncated to the shorter order."""
        order = min(self.order, inner.order)
        out = [Fraction(0)] * (order + 1)
        power = [Fraction(0)] * (order + 1)
        power[0] = Fraction(1)
        for k in range(1, order + 1):
            nxt = [Fraction(0)] * (order + 1)
            for a, x in enumerate(power):
                if x:
                    for b in range(1, order + 1 - a):
                        nxt[a + b] += x * inner[b]
            power = nxt
            c = self[k]
            if c:
                for d in range(order + 1):
                    out[d] += c * power[d]
        return TruncatedSeries(tuple(out[1:]))

    def is_identity(self) -> bool:
        return all(x == (1 if k == 1 else 0) for k, x in enumerate(self.coeffs, 1))


def series_inverse(s: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse to the same order."""
    if s.order < 1 or s[1] == 0:
        raise ZeroDivisionError("linear coefficient must be nonzero")
    g = [Fraction(0)] * s.order
    g[0] = 1 / s[1]
    for k in range(2, s.order + 1):
        err = s.compose(TruncatedSeries(tuple(g[:k])))[k]
        g[k - 1] = -err / s[1]
    return TruncatedSeries(tuple(g))


def dimension_series(p, order: int, dual: bool = False) -> TruncatedSeries:
    """``sum_n dim P(n) t^n`` with ``dim P(1) = 1``."""
    from .operads import arity_component, quadratic_dual

    q = quadratic_dual(p) if dual else p
    return TruncatedSeries((1,) + tuple(arity_component(q, n).dim for n in range(2, order + 1)))


def gk_check(p, order: int) -> dict:
    """``g_dual(-g(-t)) == t`` to ``order``; for ``quad`` also the formula."""
    g = dimension_series(p, order)
    gd = dimension_series(p, order, dual=True)
    ok = gd.compose(g.twisted()).is_identity()
    report = {
        "operad": p.name,
        "order": order,
        "series": [int(x) for x in g.coeffs],
        "dual_series": [int(x) for x in gd.coeffs],
        "inverse_ok": ok,
    }
    if p.name == "quad":
        formula = [quad_dim_formula(n) for n in range(1, order + 1)]
        report["formula"] = formula
        report["formula_ok"] = report["series"] == formula
        ok = ok and report["formula_ok"]
    report["passed"] = ok
    return report


# ---------------------------------------------------------------------------
# tables


def dimension_rows(p, max_arity: int) -> List[Dict[str, int]]:
    from .operads import arity_component, quadratic_dual

    d = quadratic_dual(p)
    return [
        {"n": n, "dim": arity_component(p, n).dim, "dual_dim": arity_component(d, n).dim}
        for n in range(2, max_arity + 1)
    ]


def quad_dim_rows(to: int) -> List[Dict[str, int]]:
    return [{"n": n, "d_n": quad_dim_formula(n)} for n in range(2, to + 1)]


def hypercube_rows(m: int, n_max: int) -> List[Dict[str, object]]:
    rows = []
    for n in range(2, n_max + 1):
        for v in root_vectors(m):
            rows.append({"m": m, "n": n, "root": "".join(v), "count": hypercube_count(m, n, v)})
    return rows


def rows_to_csv(rows: List[Dict[str, object]]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def rows_to_json(rows: List[Dict[str, object]]) -> str:
    return json.dumps(rows, indent=2, sort_keys=True) + "\n"
