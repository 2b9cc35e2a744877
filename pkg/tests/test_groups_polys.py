import io
import itertools
import json

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from symplectic_euler.counting import euler_phi, im_poly
from symplectic_euler.groups import (
    PolyCatalogue,
    build_field,
    canonical_factorization,
    count_irreducible,
    count_palindromic_irreducible,
    enumerate_polys,
    factor_poly,
)
from symplectic_euler.groups.polys import poly_divmod, poly_mul, poly_str, poly_trim

x = sympy.Symbol("x")


@pytest.fixture(scope="module")
def catalogues():
    return {q: PolyCatalogue(build_field(q), 6) for q in (2, 3, 4, 5)}


@pytest.mark.parametrize("p,d", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3)])
def test_irreducibility_matches_sympy(catalogues, p, d):
    t = catalogues[p][d]
    for row, flag in zip(t.rows, t.irreducible):
        f = sympy.Poly([int(c) for c in row[::-1]], x, modulus=p)
        assert f.is_irreducible == bool(flag), row


@pytest.mark.parametrize("q", (2, 3, 4, 5))
def test_sieve_and_ben_or_agree(catalogues, q):
    cat = catalogues[q]
    for d in range(1, 7):
        assert np.array_equal(cat.ben_or_flags(d), cat[d].irreducible)
        assert cat.im(d) == im_poly(d)(q) == count_irreducible(cat.F, d)


@pytest.mark.parametrize("q", (2, 3, 4, 5))
def test_reciprocal_partner_is_an_involution(catalogues, q):
    cat = catalogues[q]
    for d in range(1, 7):
        t = cat[d]
        assert np.array_equal(t.partner[t.partner], np.arange(len(t)))
        # the partner of an irreducible is irreducible
        assert np.array_equal(t.irreducible[t.partner], t.irreducible)
        fixed = cat.involution_fixed(d)
        if d >= 2:
            assert t.palindromic[fixed].all()


def test_fixed_points_of_the_involution_over_f3(catalogues):
    cat = catalogues[3]
    lin = [poly_str(cat[1].rows[i]) for i in cat.involution_fixed(1)]
    assert sorted(lin) == ["x + 1", "x + 2"]
    quad = [tuple(cat[2].rows[i]) for i in cat.involution_fixed(2)]
    assert quad == [(1, 0, 1)]


@pytest.mark.parametrize("q", (2, 3, 4, 5))
def test_palindromic_counter_matches_catalogue(catalogues, q):
    cat = catalogues[q]
    for d in (1, 2, 3):
        assert count_palindromic_irreducible(cat.F, d) == cat.srim_minus(d)


@pytest.mark.parametrize("q", (2, 3, 4, 5))
def test_orders(catalogues, q):
    cat = catalogues[q]
    for d in (1, 2, 3):
        orders = [cat.order_irreducible(r) for r in cat.irreducibles(d)]
        assert orders == [cat.order(r) for r in cat.irreducibles(d)]
        # primitive polynomials have order q^d - 1
        assert sum(o == q ** d - 1 for o in orders) == euler_phi(q ** d - 1) // d
        assert all((q ** d - 1) % o == 0 for o in orders)


def test_p_power_order_over_f3(catalogues):
    cat = catalogues[3]
    # x^2 + 1 has order 4
    assert cat.order([1, 0, 1]) == 4
    idx = cat[2].index_of(np.array([1, 0, 1], dtype=np.uint8))
    assert cat[2].palindromic[idx] and cat[2].irreducible[idx]
    assert cat.srim_minus(1) == 1 and cat.srim_minus_p(1, 2) == 1


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9]), st.data())
def test_division_identity(q, data):
    F = build_field(q)
    coeffs = st.lists(st.integers(0, q - 1), max_size=7)
    a = poly_trim(data.draw(coeffs))
    b = poly_trim(data.draw(coeffs))
    if not b:
        with pytest.raises(ZeroDivisionError):
            poly_divmod(a, b, F)
        return
    quo, rem = poly_divmod(a, b, F)
    assert len(rem) < len(b)
    recon = poly_mul(quo, b, F)
    n = max(len(recon), len(rem))
    total = poly_trim([int(F.add[(recon + [0] * n)[i], (rem + [0] * n)[i]]) for i in range(n)])
    assert total == a


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.data())
def test_factorization_reconstructs(catalogues, q, data):
    cat = catalogues[q]
    deg = data.draw(st.integers(1, 6))
    low = data.draw(st.lists(st.integers(0, q - 1), min_size=deg, max_size=deg))
    row = low + [1]
    fac = factor_poly(row, cat)
    prod = [1]
    for f, m in fac:
        for _ in range(m):
            prod = poly_mul(prod, list(f), cat.F)
    assert prod == poly_trim(row)
    for f, _ in fac:
        d = len(f) - 1
        if f[0] != 0:
            assert cat[d].irreducible[cat[d].index_of(np.array(f, dtype=np.uint8))]


def test_canonical_factorization_of_palindromes(catalogues):
    for q in (3, 5):
        cat = catalogues[q]
        for row in cat[4].rows[cat[4].palindromic]:
            fac = canonical_factorization(list(row), cat)
            assert fac.degree() == 4
            assert fac.a_minus % 2 == 0 and fac.a_plus % 2 == 0


def test_canonical_factorization_rejects_non_closed(catalogues):
    cat = catalogues[3]
    # an irreducible quadratic that is not self-reciprocal lacks its partner
    pair = [tuple(r) for r in cat.irreducibles(2) if not cat[2].palindromic[cat[2].index_of(r)]]
    f = list(pair[0])
    with pytest.raises(ValueError):
        canonical_factorization(f, cat)


def test_catalogue_caps():
    with pytest.raises(ValueError):
        PolyCatalogue(build_field(5), 10)
    with pytest.raises(ValueError):
        enumerate_polys(build_field(7), 2)
    assert enumerate_polys(build_field(2), 3).im(3) == 2


def test_jsonl_dump():
    cat = PolyCatalogue(build_field(3), 2)
    buf = io.StringIO()
    n = cat.dump_jsonl(buf, p=2)
    lines = buf.getvalue().splitlines()
    assert n == len(lines) == 2 + 6
    recs = [json.loads(s) for s in lines]
    irr = [r for r in recs if r["irreducible"]]
    assert len(irr) == 2 + 3
    assert all("order" in r and "2_power_order" in r for r in irr)
    assert {r["poly"] for r in recs if r["degree"] == 1} == {"x + 1", "x + 2"}
