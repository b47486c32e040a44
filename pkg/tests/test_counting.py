import json
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import catalan
from quadkoszul.counting import (
    PREC,
    SUCC,
    TruncatedSeries,
    binomial_identity,
    gk_check,
    hypercube_count,
    hypercube_representative,
    hypercube_rows,
    hypercube_total,
    quad_dim_formula,
    quad_dim_rows,
    root_vectors,
    rows_to_csv,
    rows_to_json,
    series_inverse,
)
from quadkoszul.operads import builtin
from quadkoszul.trees import left_comb, right_comb


def test_quad_formula_values():
    # direct evaluation of the binomial sum, term by term
    assert quad_dim_formula(2) == (comb(6, 5) * comb(1, 0) + comb(6, 6) * comb(2, 1)) // 2 == 4
    assert [quad_dim_formula(n) for n in range(1, 6)] == [1, 4, 23, 156, 1162]
    with pytest.raises(ValueError):
        quad_dim_formula(0)


def test_hypercube_base_case():
    for m in (1, 2, 3):
        for v in root_vectors(m):
            assert hypercube_count(m, 2, v) == 1


def test_hypercube_examples():
    assert hypercube_count(2, 3, ">>") == 3
    assert sum(hypercube_count(2, 3, v) for v in root_vectors(2)) == 9
    assert [hypercube_count(2, 3, v) for v in ("<<", "<>", "><", ">>")] == [4, 1, 1, 3]
    assert hypercube_count(3, 4, "≺≻≺") == 1


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("n", range(2, 7))
def test_hypercube_totals(m, n):
    assert hypercube_total(m, n) == n**m


@pytest.mark.parametrize("n", range(2, 9))
def test_single_succ_is_one(n):
    for m in (1, 2, 3):
        v = [PREC] * m
        v[-1] = SUCC
        assert hypercube_count(m, n, v) == 1


@pytest.mark.parametrize("j", range(1, 7))
@pytest.mark.parametrize("n", range(2, 9))
def test_binomial_identity(j, n):
    assert binomial_identity(j, n)


def test_hypercube_rejects_bad_vectors():
    with pytest.raises(ValueError):
        hypercube_count(2, 3, "<")
    with pytest.raises(ValueError):
        hypercube_count(2, 3, "<x")


def test_representatives():
    t = hypercube_representative((1, 2, 1))
    assert t.shape == left_comb(3)
    assert t.labels == (("<", "<", "<"), ("<", ">", "<"))
    t = hypercube_representative((3, 1, 2))
    assert t.shape == right_comb(3)
    assert t.labels == ((">", "<", ">"), (">", "<", "<"))
    t = hypercube_representative((1, 1, 1, 1))
    assert t.shape == left_comb(3) and set(t.labels[0] + t.labels[1]) == {"<"}
    with pytest.raises(ValueError):
        hypercube_representative((0, 1))


def test_series_inverse_examples():
    ident = TruncatedSeries.of([1, 0, 0, 0])
    assert series_inverse(ident) == ident
    geo = TruncatedSeries.of([1] * 6)
    assert series_inverse(geo).coeffs == tuple((-1) ** (k - 1) for k in range(1, 7))
    dias = TruncatedSeries.of(range(1, 7)).twisted()
    assert series_inverse(dias).coeffs == tuple(catalan(n) for n in range(1, 7))
    with pytest.raises(ZeroDivisionError):
        series_inverse(TruncatedSeries.of([0, 1]))


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=7).filter(lambda c: c[0] != 0))
@settings(max_examples=60, deadline=None)
def test_series_inverse_round_trip(coeffs):
    s = TruncatedSeries.of(coeffs)
    inv = series_inverse(s)
    assert s.compose(inv).is_identity()
    assert inv.compose(s).is_identity()


@pytest.mark.parametrize("name,order", [("ass", 6), ("dend", 6), ("quad", 5)])
def test_gk_check(name, order):
    r = gk_check(builtin(name), order)
    assert r["passed"]
    if name == "quad":
        assert r["series"][:4] == [1, 4, 23, 156]


def test_tables():
    rows = quad_dim_rows(4)
    assert rows_to_csv(rows) == "n,d_n\n2,4\n3,23\n4,156\n"
    assert json.loads(rows_to_json(rows)) == rows
    h = hypercube_rows(2, 3)
    assert len(h) == 8 and h[0] == {"m": 2, "n": 2, "root": "<<", "count": 1}
