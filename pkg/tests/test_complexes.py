import random

import pytest

from quadkoszul.associahedron import build_ca
from quadkoszul.complexes import (
    ChainComplex,
    ChainMap,
    Homotopy,
    NotExact,
    contracting_homotopy,
    direct_sum,
    euler_characteristic,
    homology_dims,
    identity_map,
    verify_chain_map,
    verify_complex,
    verify_homotopy_identity,
    zero_map,
)
from quadkoszul.linalg import SparseMatrix


def point():
    return ChainComplex((0,), {0: ("x",)}, {})


def test_single_piece():
    c = point()
    assert verify_complex(c)
    assert homology_dims(c) == [1]
    with pytest.raises(NotExact):
        contracting_homotopy(c)


def test_shape_validation():
    with pytest.raises(ValueError):
        ChainComplex((1, 0), {1: ("a",), 0: ("b",)}, {1: SparseMatrix.identity(2)})
    with pytest.raises(ValueError):
        ChainComplex((0, 1), {1: (), 0: ()}, {})


def test_single_differential_complex():
    c = ChainComplex((1, 0), {1: ("a", "b"), 0: ("c",)}, {1: SparseMatrix.from_dense([[1], [2]])})
    assert verify_complex(c)
    assert homology_dims(c) == [1, 0]


def test_zero_differentials_not_exact():
    c = ChainComplex((1, 0), {1: ("a",), 0: ("b",)}, {1: SparseMatrix.zeros(1, 1)})
    with pytest.raises(NotExact):
        contracting_homotopy(c)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_ca_contracting_homotopy(n):
    c = build_ca(n)
    h = contracting_homotopy(c)
    ident = {j: SparseMatrix.identity(c.dim(j)) for j in c.degrees}
    assert verify_homotopy_identity(ident, h, c)


def test_trivial_homotopy_identity():
    c = build_ca(4)
    zero = {j: SparseMatrix.zeros(c.dim(j), c.dim(j)) for j in c.degrees}
    assert verify_homotopy_identity(zero, Homotopy(c), c)
    one = {j: SparseMatrix.identity(c.dim(j)) for j in c.degrees}
    assert not verify_homotopy_identity(one, Homotopy(c), c)


def test_direct_sum():
    ca4 = build_ca(4)
    assert direct_sum([ca4]).dims() == ca4.dims()
    assert direct_sum([ca4] * 4).dims() == [4, 20, 20, 4]
    assert direct_sum([ca4] * 16).dims() == [16, 80, 80, 16]
    s = direct_sum([ca4] * 2)
    assert s.bases[0][5] == (1, ca4.bases[0][0])
    with pytest.raises(ValueError):
        direct_sum([ca4, build_ca(3)])


def test_chain_maps():
    c = build_ca(4)
    assert verify_chain_map(identity_map(c))
    assert verify_chain_map(zero_map(c, c))
    bad = dict(identity_map(c).maps)
    bad[0] = SparseMatrix.zeros(c.dim(0), c.dim(0))
    assert not verify_chain_map(ChainMap(c, c, bad))


def test_homology_invariant_under_permutation():
    c = build_ca(5)
    rng = random.Random(7)
    perms = {j: list(range(c.dim(j))) for j in c.degrees}
    for p in perms.values():
        rng.shuffle(p)
    pm = {j: SparseMatrix(c.dim(j), c.dim(j), [(p[k], k, 1) for k in range(len(p))]) for j, p in perms.items()}
    inv = {j: m.T for j, m in pm.items()}
    diffs = {j: pm[j] @ c.d(j) @ inv[j - 1] for j in c.degrees[:-1]}
    bases = {j: tuple(c.bases[j][perms[j].index(k)] for k in range(c.dim(j))) for j in c.degrees}
    c2 = ChainComplex(c.degrees, bases, diffs)
    assert verify_complex(c2)
    assert homology_dims(c2) == homology_dims(c)
    assert euler_characteristic(c2) == 0
