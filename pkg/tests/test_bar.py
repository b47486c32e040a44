import json
from math import prod

import pytest

from oracles import catalan, dense_rank
from quadkoszul.associahedron import build_ca
from quadkoszul.bar import build_bar, dend_homotopy_data, koszul_check, pair_homotopy_transport
from quadkoszul.complexes import euler_characteristic, homology_dims, verify_complex, verify_homotopy_identity
from quadkoszul.linalg import SparseMatrix
from quadkoszul.operads import arity_component, builtin, parse_spec, quadratic_dual
from quadkoszul.trees import arities, enumerate_trees

ANTI_ASSOCIATIVE = parse_spec(json.dumps({
    "name": "anti-ass", "generators": ["a"],
    "relations": [[{"shape": "L", "root": 0, "upper": 0, "coeff": "1"},
                   {"shape": "R", "root": 0, "upper": 0, "coeff": "1"}]],
}))


@pytest.mark.parametrize(
    "name,n,dims",
    [("dend", 4, [14, 40, 30, 4]), ("quad", 3, [23, 32, 9]), ("dend", 2, [2, 2]), ("quad", 4, [156, 320, 180, 16])],
)
def test_bar_dims_and_exactness(name, n, dims):
    c = build_bar(builtin(name), n).complex
    assert c.dims() == dims
    assert verify_complex(c)
    assert homology_dims(c) == [0] * len(dims)


def test_dend_four_ranks_against_dense_oracle():
    c = build_bar(builtin("dend"), 4).complex
    ranks = [dense_rank(c.d(j).to_dense()) for j in c.degrees[:-1]]
    # exactness: ranks fill every piece
    assert ranks == [14, 26, 4]


@pytest.mark.parametrize("name,n", [("dend", 5), ("quad", 3), ("dend_pow(3)", 3), ("dias", 4)])
def test_piece_dimensions_follow_tree_formula(name, n):
    p = builtin(name)
    b = build_bar(p, n)
    dual = quadratic_dual(p)
    for j in range(0, -n + 1, -1):
        want = sum(prod(arity_component(dual, a).dim for a in arities(t)) for t in enumerate_trees(n, n + j - 1))
        assert b.complex.dim(j) == want
    assert b.complex.dim(0) == catalan(n - 1) * len(p.generators) ** (n - 1)
    assert b.complex.dim(-n + 2) == arity_component(dual, n).dim


@pytest.mark.parametrize("n", range(2, 7))
def test_ass_bar_is_associahedron(n):
    b = build_bar(builtin("ass"), n).complex
    ca = build_ca(n)
    assert b.dims() == ca.dims()
    for j in ca.degrees[:-1]:
        assert b.d(j) == ca.d(j)


@pytest.mark.parametrize("name,top", [("dend_pow(2)", 4), ("dias", 5), ("dend", 5)])
def test_d_squared_zero(name, top):
    for n in range(2, top + 1):
        c = build_bar(builtin(name), n).complex
        assert verify_complex(c)
        assert euler_characteristic(c) == 0


def test_koszul_report_schema():
    r = koszul_check(builtin("dend"), 4)
    assert set(r) >= {"operad", "max_arity", "per_arity", "koszul", "elapsed_ms"}
    assert r["koszul"] is True
    assert [x["n"] for x in r["per_arity"]] == [2, 3, 4]
    assert r["per_arity"][-1] == {"n": 4, "dims": [14, 40, 30, 4], "homology": [0, 0, 0, 0], "euler": 0}
    assert isinstance(r["elapsed_ms"], int)


def test_lex_basis_operad_is_koszul():
    # dias has no split structure of its own; its bar complex uses lex bases of Dend
    assert koszul_check(builtin("dias"), 5)["koszul"]


def test_non_koszul_detected():
    r = koszul_check(ANTI_ASSOCIATIVE, 6)
    assert not r["koszul"]
    assert {"n": 5, "degree": -1, "dim": 4} in r["failures"]
    assert r["per_arity"][3]["euler"] == -4


def test_worker_count_does_not_change_result():
    a = koszul_check(builtin("quad"), 4, workers=1)
    b = koszul_check(builtin("quad"), 4, workers=4)
    a.pop("elapsed_ms")
    b.pop("elapsed_ms")
    assert a == b


@pytest.mark.parametrize("n", range(2, 6))
def test_dend_homotopy_identity(n):
    f, p, h = dend_homotopy_data("dend", n)
    c = f.target
    assert verify_homotopy_identity({j: SparseMatrix.identity(c.dim(j)) - p.at(j) for j in c.degrees}, h, c)


@pytest.mark.parametrize("n", [2, 3])
def test_pair_transport_small(n):
    r = pair_homotopy_transport(n)
    assert all(r["checks"].values())
    assert r["holds"]


def test_pair_transport_four():
    r = pair_homotopy_transport(4)
    # pairing f, pi, p and the differential is exact in every case
    assert all(r["checks"].values())
    assert r["direct_homotopy"]
    assert r["holds"], r["per_degree"]
