import io
import json

import numpy as np
import pytest
import sympy

from symplectic_euler.groups import (
    build_field,
    centralizer_spot_check,
    charpoly_selfreciprocal_check,
    dump_classes_jsonl,
    self_reciprocal_count,
    symplectic_group,
)
from symplectic_euler.groups.matrices import charpoly_rows
from symplectic_euler.groups.semisimple import gl_order, gu_order


def test_unitary_and_linear_orders():
    assert gl_order(1, 5) == 4
    assert gl_order(2, 2) == 6
    assert gl_order(3, 2) == 168
    assert gu_order(1, 3) == 4
    assert gu_order(2, 2) == 18


@pytest.mark.parametrize("q", (2, 3, 4, 5))
def test_palindromic_counts(q):
    for n in (1, 2, 3):
        assert self_reciprocal_count(q, 2 * n) == q ** n


@pytest.mark.parametrize("q", (3, 5, 7))
def test_charpoly_against_sympy(q):
    G = symplectic_group(1, q)
    F = G.F
    rows = charpoly_rows(G.elems, F)
    t = sympy.Symbol("t")
    for g, row in list(zip(G.elems, rows))[:: max(1, len(G) // 30)]:
        M = sympy.Matrix(g.astype(int).tolist())
        expected = sympy.Poly(M.charpoly(t).as_expr(), t, modulus=q)
        got = sympy.Poly([int(c) for c in row[::-1]], t, modulus=q)
        assert got == expected


def test_charpoly_against_sympy_rank_four():
    G = symplectic_group(2, 3)
    rows = charpoly_rows(G.elems[::997], G.F)
    t = sympy.Symbol("t")
    for g, row in zip(G.elems[::997], rows):
        expected = sympy.Poly(sympy.Matrix(g.astype(int).tolist()).charpoly(t).as_expr(), t, modulus=3)
        assert sympy.Poly([int(c) for c in row[::-1]], t, modulus=3) == expected


@pytest.mark.parametrize("n,q", [(1, 2), (1, 3), (1, 5), (2, 2), (2, 3)])
def test_charpolys_self_reciprocal(n, q):
    rep = charpoly_selfreciprocal_check(n, build_field(q))
    assert rep.all_self_reciprocal
    # the semisimple elements realize every one of the q^n self-reciprocal polynomials
    assert rep.semisimple_charpolys == rep.expected == q ** n
    assert rep


@pytest.mark.parametrize("n,q", [(1, 3), (1, 4), (1, 7), (2, 2), (2, 3)])
def test_centralizer_orders(n, q):
    samples = centralizer_spot_check(n, q, samples=6)
    assert samples
    for idx, cp, actual, predicted in samples:
        assert actual == predicted, (idx, cp)


def test_class_dump():
    G = symplectic_group(1, 3)
    buf = io.StringIO()
    assert dump_classes_jsonl(G, buf) == 7
    recs = [json.loads(s) for s in buf.getvalue().splitlines()]
    assert sum(r["class_size"] for r in recs) == 24
    assert all(r["class_size"] * r["centralizer_order"] == 24 for r in recs)
    assert sorted({r["element_order"] for r in recs}) == [1, 2, 3, 4, 6]
