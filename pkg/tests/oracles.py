"""Brute-force oracles that share no code with the package."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb


def dense_rank(rows):
    """Plain Gauss-Jordan over Fractions on a list of lists."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    r = 0
    cols = len(m[0])
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def bracketings(lo, hi):
    """All planar trees on leaves lo..hi as nested tuples of leaf ints."""
    if lo == hi:
        return [lo]
    out = []
    # a vertex with k >= 2 children: split lo..hi into k consecutive blocks
    n = hi - lo + 1

    def splits(start, parts_left_min):
        if start > hi:
            yield []
            return
        for end in range(start, hi + 1):
            for rest in splits(end + 1, 0):
                yield [(start, end)] + rest

    for blocks in splits(lo, 0):
        if len(blocks) < 2:
            continue
        for kids in product(*(bracketings(a, b) for a, b in blocks)):
            out.append(tuple(kids))
    return out


def count_vertices(t):
    if isinstance(t, int):
        return 0
    return 1 + sum(count_vertices(c) for c in t)


def binary_bracketings(n):
    return [t for t in bracketings(1, n) if all_binary(t)]


def all_binary(t):
    if isinstance(t, int):
        return True
    return len(t) == 2 and all(all_binary(c) for c in t)


# --- free dendriform algebra on decorated planar binary trees ---------------
# A tree is None (the empty tree |) or (left, decoration, right).
# Elements are dicts tree -> coefficient.


def _add(acc, vec, c=1):
    for k, v in vec.items():
        s = acc.get(k, 0) + c * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


def _star(x, y):
    if x is None:
        return {y: 1}
    if y is None:
        return {x: 1}
    out = {}
    _add(out, _prec(x, y))
    _add(out, _succ(x, y))
    return out


def _prec(x, y):
    # x < y = x.left V (x.right * y)
    xl, a, xr = x
    out = {}
    for t, c in _star(xr, y).items():
        out[(xl, a, t)] = out.get((xl, a, t), 0) + c
    return {k: v for k, v in out.items() if v}


def _succ(x, y):
    # x > y = (x * y.left) V y.right
    yl, b, yr = y
    out = {}
    for t, c in _star(x, yl).items():
        out[(t, b, yr)] = out.get((t, b, yr), 0) + c
    return {k: v for k, v in out.items() if v}


def _lin(op, u, v):
    out = {}
    for s, a in u.items():
        for t, b in v.items():
            _add(out, op(s, t), a * b)
    return out


def dend_eval(tree, labels):
    """Evaluate a binary bracketing with '<'/'>' vertex labels (preorder)."""
    it = iter(labels)

    def go(t):
        if isinstance(t, int):
            return {(None, t, None): 1}
        op = _prec if next(it) == "<" else _succ
        left = go(t[0])
        right = go(t[1])
        return _lin(op, left, right)

    return go(tree)


def dend_dim_oracle(n):
    """Rank of the evaluation of all generator-labeled binary trees."""
    vecs = []
    for t in binary_bracketings(n):
        for labs in product("<>", repeat=n - 1):
            vecs.append(dend_eval(t, labs))
    keys = sorted({k for v in vecs for k in v}, key=repr)
    return dense_rank([[v.get(k, 0) for k in keys] for v in vecs])


# --- free diassociative algebra: words with one marked letter ----------------


def dias_eval(tree, labels):
    """'<' keeps the left mark (x -| y), '>' the right one (x |- y)."""
    it = iter(labels)

    def go(t):
        if isinstance(t, int):
            return ((t,), 0)
        lab = next(it)
        (lw, lm), (rw, rm) = go(t[0]), go(t[1])
        mark = lm if lab == "<" else len(lw) + rm
        return (lw + rw, mark)

    return go(tree)


def dias_dim_oracle(n):
    images = set()
    for t in binary_bracketings(n):
        for labs in product("<>", repeat=n - 1):
            images.add(dias_eval(t, labs))
    return len(images)
