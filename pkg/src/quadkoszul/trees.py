"""Planar rooted trees.

A tree is a nested tuple: the leaf is the empty tuple ``()`` and an internal
vertex is the tuple of its (at least two) children, left to right.  So the
2-corolla is ``((), ())`` and the 3-leaf left comb is ``(((), ()), ())``.
Trees are hashable and share structure freely.

Vertices are numbered depth-first, root first, children left to right; this
"canonical vertex order" is what :class:`LabeledTree` labels follow and what
the sign conventions elsewhere refer to.  An internal edge is named by the
vertex id of its upper endpoint.

Canonical keys
--------------
``canonical_key`` writes a leaf as ``.`` and a vertex as ``(`` children ``)``,
so the 2-corolla is ``(..)``.  For a labeled tree each closing parenthesis is
followed by the vertex label in brackets, e.g. ``((..)[1].)[*]``; tuple labels
are comma separated, ``[1,2]``.  Canonical tree order is the byte order of the
unlabeled key.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterator, List, NamedTuple, Tuple, Union

__all__ = [
    "LEAF",
    "STAR",
    "Tree",
    "LabeledTree",
    "VertexInfo",
    "corolla",
    "left_comb",
    "right_comb",
    "n_leaves",
    "n_vertices",
    "vertex_info",
    "arities",
    "enumerate_trees",
    "all_trees",
    "binary_trees",
    "contract_edge",
    "expansions",
    "Expansion",
    "vertex_expansions",
    "connecting_path",
    "canonical_key",
    "parse_key",
    "graft",
    "graft_labeled",
]

Tree = tuple
LEAF: Tree = ()


class _Star:
    """The label ``*``: the sum of all integer labels at a vertex."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "STAR"

    def __str__(self):
        return "*"

    def __reduce__(self):
        return (_Star, ())

    def __lt__(self, other):
        # STAR sorts after every integer label
        return False

    def __gt__(self, other):
        return other is not self


STAR = _Star()

Label = Union[int, _Star, tuple]


class LabeledTree(NamedTuple):
    shape: Tree
    labels: tuple  # one label per internal vertex, canonical vertex order


class VertexInfo(NamedTuple):
    arity: int
    parent: int  # -1 for the root
    position: int  # 1-based position among the parent's children
    lo: int  # first leaf below (1-based)
    hi: int  # last leaf below
    size: int  # internal vertices in the subtree rooted here


def corolla(n: int) -> Tree:
    return (LEAF,) * n


def left_comb(n: int) -> Tree:
    t = (LEAF, LEAF)
    for _ in range(n - 2):
        t = (t, LEAF)
    return t


def right_comb(n: int) -> Tree:
    t = (LEAF, LEAF)
    for _ in range(n - 2):
        t = (LEAF, t)
    return t


@lru_cache(maxsize=None)
def n_leaves(t: Tree) -> int:
    if not t:
        return 1
    return sum(n_leaves(c) for c in t)


@lru_cache(maxsize=None)
def n_vertices(t: Tree) -> int:
    if not t:
        return 0
    return 1 + sum(n_vertices(c) for c in t)


@lru_cache(maxsize=None)
def vertex_info(t: Tree) -> Tuple[VertexInfo, ...]:
    """Per-vertex data in canonical order."""
    out: List[VertexInfo] = []

    def walk(node, parent, pos, first_leaf):
        me = len(out)
        out.append(None)
        leaf = first_leaf
        for k, child in enumerate(node, 1):
            if child:
                leaf = walk(child, me, k, leaf)
            else:
                leaf += 1
        out[me] = VertexInfo(len(node), parent, pos, first_leaf, leaf - 1, len(out) - me)
        return leaf

    if t:
        walk(t, -1, 0, 1)
    return tuple(out)


def arities(t: Tree) -> Tuple[int, ...]:
    return tuple(v.arity for v in vertex_info(t))


def _compositions(total: int, parts: int, minimum: int) -> Iterator[Tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, minimum):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _trees(n: int, k: int) -> Tuple[Tree, ...]:
    if n == 1:
        return (LEAF,) if k == 0 else ()
    if k < 1 or k > n - 1:
        return ()
    out = []
    for arity in range(2, n + 1):
        for leaf_split in _compositions(n, arity, 1):
            budget = k - 1
            # distribute remaining vertices among children
            options = [range(0, m) if m > 1 else range(0, 1) for m in leaf_split]
            for verts in product(*options):
                if sum(verts) != budget:
                    continue
                if any(m > 1 and v == 0 for m, v in zip(leaf_split, verts)):
                    continue
                for kids in product(*(_trees(m, v) for m, v in zip(leaf_split, verts))):
                    out.append(tuple(kids))
    out.sort(key=canonical_key)
    return tuple(out)


def enumerate_trees(n_leaves: int, n_vertices: int) -> Tuple[Tree, ...]:
    """All planar trees with the given leaf and vertex counts, canonical order.

    Out-of-range counts give an empty tuple.
    """
    if n_leaves < 2:
        return ()
    return _trees(n_leaves, n_vertices)


def all_trees(n: int) -> Tuple[Tree, ...]:
    return tuple(t for k in range(1, n) for t in enumerate_trees(n, k))


def binary_trees(n: int) -> Tuple[Tree, ...]:
    return enumerate_trees(n, n - 1)


# ---------------------------------------------------------------------------
# contraction and expansion


def _rebuild(t: Tree, target: int, fn) -> Tree:
    """Replace the vertex with canonical id ``target`` by ``fn(vertex)``."""
    counter = [0]

    def walk(node):
        me = counter[0]
        counter[0] += 1
        if me == target:
            # children still need numbering to keep the counter honest
            for c in node:
                if c:
                    skip(c)
            return fn(node)
        return tuple(walk(c) if c else c for c in node)

    def skip(node):
        counter[0] += 1
        for c in node:
            if c:
                skip(c)

    return walk(t)


def contract_edge(t: Tree, e: int) -> Tree:
    """Collapse the internal edge whose upper vertex has id ``e``."""
    info = vertex_info(t)
    if not 1 <= e < len(info):
        raise ValueError(f"{e} is not an internal edge of a tree with {len(info)} vertices")
    parent = info[e].parent
    pos = info[e].position

    def merge(node):
        child = node[pos - 1]
        return node[: pos - 1] + child + node[pos:]

    return _rebuild(t, parent, merge)


class Expansion(NamedTuple):
    """One way of splitting vertex ``vertex`` of a tree into two.

    The children ``position .. position + upper - 1`` of the vertex move onto a
    new vertex of arity ``upper``, grafted at ``position`` of the remaining
    vertex of arity ``lower``.  ``new_vertex`` is the id of the new vertex in
    the expanded tree.
    """

    tree: Tree
    vertex: int
    new_vertex: int
    lower: int
    position: int
    upper: int
    sign: int


@lru_cache(maxsize=None)
def vertex_expansions(t: Tree) -> Tuple[Expansion, ...]:
    """All expansions of ``t`` with their orientation signs.

    Each vertex ``w`` carries degree ``arity(w) - 2`` and a tree is oriented
    by listing its vertices in canonical order.  Expanding vertex ``v``
    (arity ``l``) into lower arity ``a`` and upper arity ``b`` grafted at
    position ``i`` has sign ``(-1)**e`` with

        e = s + (i - 1) + b * (a - i) + (b - 2) * m

    where ``s`` is the total degree of the vertices before ``v`` and ``m`` the
    total degree of the vertices in children ``1 .. i-1`` of ``v`` (the ones
    the new vertex is moved past to reach its canonical slot).
    """
    info = vertex_info(t)
    out = []
    s = 0
    for v, vi in enumerate(info):
        l = vi.arity
        kid_ids = _child_ids(t, v)
        for b in range(2, l):
            a = l - b + 1
            for i in range(1, a + 1):

                def split(node, i=i, b=b):
                    return node[: i - 1] + (node[i - 1 : i - 1 + b],) + node[i - 1 + b :]

                new_tree = _rebuild(t, v, split)
                before = 0
                passed = 0
                for k in range(i - 1):
                    c = kid_ids[k]
                    if c >= 0:
                        before += info[c].size
                        passed += sum(info[w].arity - 2 for w in range(c, c + info[c].size))
                e = s + (i - 1) + b * (a - i) + (b - 2) * passed
                sign = -1 if e % 2 else 1
                out.append(Expansion(new_tree, v, v + 1 + before, a, i, b, sign))
        s += l - 2
    return tuple(out)


@lru_cache(maxsize=None)
def _child_ids(t: Tree, v: int) -> Tuple[int, ...]:
    """Vertex ids of the children of ``v`` (-1 for leaves)."""
    info = vertex_info(t)
    node = _node_at(t, v)
    ids = []
    nxt = v + 1
    for c in node:
        if c:
            ids.append(nxt)
            nxt += info[nxt].size
        else:
            ids.append(-1)
    return tuple(ids)


def _node_at(t: Tree, v: int) -> Tree:
    counter = 0
    stack = [t]
    while stack:
        node = stack.pop()
        if counter == v:
            return node
        counter += 1
        stack.extend(c for c in reversed(node) if c)
    raise IndexError(v)


def expansions(t: Tree) -> List[Tuple[Tree, int]]:
    """All ``(t2, e)`` with ``contract_edge(t2, e) == t``."""
    return [(x.tree, x.new_vertex) for x in vertex_expansions(t)]


def connecting_path(t: Tree, i: int) -> List[int]:
    """Vertices on the path from leaf ``i`` to leaf ``i + 1`` (1-based leaves).

    Listed from the parent of leaf ``i`` up to the common ancestor and down to
    the parent of leaf ``i + 1``.
    """
    n = n_leaves(t)
    if not 1 <= i < n:
        raise ValueError(f"leaf index {i} outside 1..{n - 1}")
    info = vertex_info(t)

    def chain(leaf):
        # vertices containing the leaf, deepest first
        return [v for v in range(len(info) - 1, -1, -1) if info[v].lo <= leaf <= info[v].hi]

    up = chain(i)
    down = chain(i + 1)
    common = set(up) & set(down)
    top = max(common)  # deepest common ancestor has the largest id on the chain
    left = [v for v in up if v not in common] + [top]
    right = [v for v in down if v not in common]
    return left + right[::-1]


# ---------------------------------------------------------------------------
# keys


def _label_str(label) -> str:
    if isinstance(label, tuple):
        return ",".join(_label_str(x) for x in label)
    return str(label)


def canonical_key(t: Union[Tree, LabeledTree]) -> bytes:
    if isinstance(t, LabeledTree):
        labels = iter(t.labels)
        parts: List[str] = []

        def walk(node):
            if not node:
                parts.append(".")
                return
            lab = next(labels)
            parts.append("(")
            for c in node:
                walk(c)
            parts.append(")[" + _label_str(lab) + "]")

        walk(t.shape)
        return "".join(parts).encode()
    return _shape_key(t)


@lru_cache(maxsize=None)
def _shape_key(t: Tree) -> bytes:
    if not t:
        return b"."
    return b"(" + b"".join(_shape_key(c) for c in t) + b")"


def _parse_label(text: str):
    if "," in text:
        return tuple(_parse_label(x) for x in text.split(","))
    if text == "*":
        return STAR
    return int(text)


def parse_key(key: Union[bytes, str]) -> Union[Tree, LabeledTree]:
    """Inverse of :func:`canonical_key`."""
    s = key.decode() if isinstance(key, bytes) else key
    pos = 0
    found: List[Tuple[int, object]] = []  # (preorder id, label)
    counter = [0]

    def node():
        nonlocal pos
        if s[pos] == ".":
            pos += 1
            return LEAF
        if s[pos] != "(":
            raise ValueError(f"bad key {s!r} at {pos}")
        pos += 1
        me = counter[0]
        counter[0] += 1
        kids = []
        while s[pos] != ")":
            kids.append(node())
        pos += 1
        if len(kids) < 2:
            raise ValueError(f"vertex of arity {len(kids)} in {s!r}")
        if pos < len(s) and s[pos] == "[":
            end = s.index("]", pos)
            found.append((me, _parse_label(s[pos + 1 : end])))
            pos = end + 1
        return tuple(kids)

    t = node()
    if pos != len(s):
        raise ValueError(f"trailing data in {s!r}")
    if not found:
        return t
    if len(found) != counter[0]:
        raise ValueError(f"some vertices unlabeled in {s!r}")
    found.sort()
    return LabeledTree(t, tuple(lab for _, lab in found))


# ---------------------------------------------------------------------------
# grafting


def graft(t: Tree, i: int, s: Tree) -> Tree:
    """Graft ``s`` onto leaf ``i`` (1-based) of ``t``."""
    counter = [0]

    def walk(node):
        if not node:
            counter[0] += 1
            return s if counter[0] == i else node
        return tuple(walk(c) for c in node)

    return walk(t)


def graft_labeled(t: LabeledTree, i: int, s: LabeledTree) -> LabeledTree:
    """Graft ``s`` onto leaf ``i`` of ``t``; labels follow canonical order."""
    # a vertex precedes leaf i in depth-first order iff its first leaf is <= i
    at = sum(1 for vi in vertex_info(t.shape) if vi.lo <= i)
    new_shape = graft(t.shape, i, s.shape)
    labels = t.labels[:at] + s.labels + t.labels[at:]
    return LabeledTree(new_shape, labels)
