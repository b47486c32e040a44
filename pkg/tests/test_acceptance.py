"""End-to-end acceptance checks, one test per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see a PASS/FAIL line for
each criterion.
"""

import time

from quadkoszul.associahedron import build_ca, pentagon_matches, summand_check
from quadkoszul.bar import dend_homotopy_data, koszul_check, pair_homotopy_transport
from quadkoszul.complexes import homology_dims, verify_complex, verify_homotopy_identity
from quadkoszul.counting import (
    binomial_identity,
    gk_check,
    hypercube_closed_form,
    hypercube_count,
    hypercube_total,
    quad_dim_formula,
    root_vectors,
)
from quadkoszul.linalg import SparseMatrix
from quadkoszul.operads import arity_component, builtin, quadratic_dual


def report(number, title, ok, detail="", started=None):
    took = f" [{time.perf_counter() - started:.1f}s]" if started is not None else ""
    print(f"\nCRITERION {number:2d} {'PASS' if ok else 'FAIL'}: {title}{took} {detail}".rstrip())
    assert ok, detail


def dual_dims(name, arities):
    d = quadratic_dual(builtin(name))
    return {n: arity_component(d, n).dim for n in arities}


def test_01_dend_dual_dims():
    t0 = time.perf_counter()
    dims = dual_dims("dend", range(2, 8))
    report(1, "dim of the dendriform dual in arity n is n, n = 2..7",
           all(v == n for n, v in dims.items()), str(dims), t0)


def test_02_quad_dual_dims():
    t0 = time.perf_counter()
    dims = dual_dims("quad", range(2, 6))
    report(2, "dim of the quad dual in arity n is n^2, n = 2..5",
           all(v == n * n for n, v in dims.items()), str(dims), t0)


def test_03_dend_cube_dual_dims():
    t0 = time.perf_counter()
    dims = dual_dims("dend_pow(3)", range(2, 5))
    report(3, "dim of the dend_pow(3) dual in arity n is n^3, n = 2..4",
           all(v == n**3 for n, v in dims.items()), str(dims), t0)


def test_04_koszul():
    t0 = time.perf_counter()
    results = {}
    for name, top in (("ass", 8), ("dend", 7), ("quad", 5), ("dend_pow(3)", 4)):
        r = koszul_check(builtin(name), top)
        results[f"{name}<={top}"] = r["koszul"]
    report(4, "bar complexes are exact", all(results.values()), str(results), t0)


def test_05_associahedron():
    t0 = time.perf_counter()
    exact = {}
    for n in range(2, 9):
        c = build_ca(n)
        exact[n] = verify_complex(c) and not any(homology_dims(c))
    dims = tuple(build_ca(4).dims())
    ok = all(exact.values()) and dims == (1, 5, 5, 1) and pentagon_matches()
    report(5, "associahedron complexes are exact, n = 2..8, and n = 4 is the pentagon",
           ok, f"exact={exact} dims4={dims}", t0)


def test_06_splitting():
    t0 = time.perf_counter()
    results = {}
    for kind, top in (("dend", 6), ("quad", 5)):
        for n in range(2, top + 1):
            results[f"{kind}{n}"] = summand_check(kind, n)["passed"]
    report(6, "split complex is a direct summand of the bar complex", all(results.values()), str(results), t0)


def test_07_homotopy_transport():
    t0 = time.perf_counter()
    dend = {}
    for n in range(2, 6):
        f, p, h = dend_homotopy_data("dend", n)
        c = f.target
        dend[n] = verify_homotopy_identity({j: SparseMatrix.identity(c.dim(j)) - p.at(j) for j in c.degrees}, h, c)
    quad = {}
    for n in range(2, 5):
        r = pair_homotopy_transport(n)
        quad[n] = r["holds"]
        if not r["holds"]:
            bad = [x for x in r["per_degree"] if not x["holds"]]
            quad[n] = f"fails in degrees {[x['degree'] for x in bad]}"
    ok = all(dend.values()) and all(v is True for v in quad.values())
    report(7, "I - p = dh + hd for dend data n = 2..5 and pair-transported quad data n = 2..4",
           ok, f"dend={dend} quad={quad}", t0)


def test_08_quad_formula():
    t0 = time.perf_counter()
    pairs = {n: (quad_dim_formula(n), arity_component(builtin("quad"), n).dim) for n in range(2, 6)}
    ok = all(a == b for a, b in pairs.values()) and [pairs[n][0] for n in (2, 3, 4)] == [4, 23, 156]
    report(8, "closed formula for dim Quad(n) agrees with linear algebra, n = 2..5", ok, str(pairs), t0)


def test_09_hypercube():
    t0 = time.perf_counter()
    base = all(hypercube_count(m, 2, v) == 1 for m in (1, 2, 3) for v in root_vectors(m))
    closed = all(
        hypercube_count(m, n, v) == hypercube_closed_form(m, n, v)
        for m in (1, 2, 3) for n in range(2, 7) for v in root_vectors(m)
    )
    binom = all(binomial_identity(j, n) for j in range(1, 4) for n in range(2, 7))
    totals = all(hypercube_total(m, n) == n**m for m in (1, 2, 3) for n in range(2, 7))
    report(9, "hypercube counts: base case, closed form, binomial identity, totals n^m",
           base and closed and binom and totals,
           f"base={base} closed={closed} binomial={binom} totals={totals}", t0)


def test_10_series():
    t0 = time.perf_counter()
    results = {name: gk_check(builtin(name), order)["passed"] for name, order in (("ass", 6), ("dend", 6), ("quad", 5))}
    report(10, "dimension series of P and its dual are inverse under t -> -g(-t)",
           all(results.values()), str(results), t0)
