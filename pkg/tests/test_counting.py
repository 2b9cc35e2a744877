import itertools
import math

import pytest
import sympy
from hypothesis import given, strategies as st

from symplectic_euler.counting import (
    ParityContext,
    PrimePowerOrderContext,
    divisors,
    euler_phi,
    im_p,
    im_poly,
    is_prime,
    max_p_part_condition,
    moebius,
    mult_order,
    p_class,
    p_part,
    padic_val,
    prime_power,
    sdim_minus_poly,
    sdim_plus_poly,
    srim_minus_p,
    srim_minus_poly,
    srim_plus_p,
    srim_plus_poly,
)
from symplectic_euler.exactalg import QPoly

x = sympy.Symbol("x")


@given(st.integers(1, 5000))
def test_arithmetic_helpers_match_sympy(n):
    assert moebius(n) == int(sympy.mobius(n))
    assert euler_phi(n) == int(sympy.totient(n))
    assert list(divisors(n)) == sorted(sympy.divisors(n))
    assert is_prime(n) == sympy.isprime(n)


@given(st.integers(1, 10 ** 6), st.sampled_from([2, 3, 5, 7]))
def test_p_part_and_valuation(n, p):
    v = padic_val(n, p)
    assert n % p ** v == 0 and (n // p ** v) % p != 0
    assert p_part(n, p) == p ** v


@given(st.integers(2, 500), st.integers(2, 200))
def test_mult_order(a, m):
    if math.gcd(a, m) != 1:
        return
    o = mult_order(a, m)
    assert pow(a, o, m) == 1 % m
    assert all(pow(a, k, m) != 1 % m for k in range(1, o))


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(6) is None
    assert prime_power(1) is None


def test_contexts():
    assert ParityContext.of(9).odd and not ParityContext.of(4).odd
    with pytest.raises(ValueError):
        ParityContext("odd", 4)
    with pytest.raises(ValueError):
        ParityContext.of(6)
    with pytest.raises(ValueError):
        PrimePowerOrderContext(2, 4)
    with pytest.raises(ValueError):
        PrimePowerOrderContext(4, 3)


# enumeration oracle over prime fields, independent of the package

def _monic(d, p):
    for tail in itertools.product(range(p), repeat=d):
        if tail[0] == 0:
            continue
        yield sympy.Poly([1] + list(reversed(tail)), x, modulus=p)


def _irreducibles(d, p):
    return [f for f in _monic(d, p) if f.is_irreducible]


def _palindromic(f, p):
    c = [int(v) % p for v in f.all_coeffs()]
    return c == c[::-1]


def _reciprocal(f, p):
    c = [int(v) % p for v in f.all_coeffs()][::-1]
    lead_inv = pow(c[0], -1, p)
    return sympy.Poly([(v * lead_inv) % p for v in c], x, modulus=p)


def _order(f, p):
    e = 1
    xpoly = sympy.Poly(x, x, modulus=p)
    cur = xpoly.rem(f)
    one = sympy.Poly(1, x, modulus=p)
    while cur != one:
        cur = (cur * xpoly).rem(f)
        e += 1
    return e


SMALL = [(2, d) for d in range(1, 7)] + [(3, d) for d in range(1, 5)] + [(5, d) for d in range(1, 4)]


@pytest.mark.parametrize("p,d", SMALL)
def test_im_and_srim_against_enumeration(p, d):
    irr = _irreducibles(d, p)
    ctx = ParityContext.of(p)
    assert im_poly(d)(p) == len(irr)
    fixed = [f for f in irr if _reciprocal(f, p) == f]
    assert srim_plus_poly(d, ctx)(p) == (len(irr) - len(fixed)) // 2
    if d % 2 == 0:
        assert srim_minus_poly(d // 2, ctx)(p) == sum(_palindromic(f, p) for f in irr)
    for r in (2, 3, 5, 7):
        if r == p:
            continue
        pctx = PrimePowerOrderContext(r, p)
        orders = {f: _order(f, p) for f in irr}
        def is_r_power(e):
            return p_part(e, r) == e
        assert im_p(d, pctx) == sum(is_r_power(e) for e in orders.values())
        moved = [f for f in irr if _reciprocal(f, p) != f and is_r_power(orders[f])]
        assert srim_plus_p(d, pctx) == len(moved) // 2
        if d % 2 == 0:
            pal = [f for f in irr if _palindromic(f, p) and is_r_power(orders[f])]
            assert srim_minus_p(d // 2, pctx) == len(pal)


def test_srim_values():
    assert srim_minus_poly(1, "odd") == QPoly([-1, 1]) / 2
    assert srim_plus_poly(6, "odd") == QPoly([0, 2, -1, -2, 0, 0, 1]) / 12
    assert srim_minus_poly(1, "even") == QPoly([0, 1]) / 2
    assert srim_plus_poly(1, "even") == QPoly([-2, 1]) / 2
    assert im_poly(1) == QPoly([-1, 1])


@pytest.mark.parametrize("d", range(1, 11))
@pytest.mark.parametrize("parity", ["odd", "even"])
def test_srim_sum_relation(d, parity):
    total = srim_minus_poly(d, parity) + srim_plus_poly(d, parity)
    expected = im_poly(d) - (1 if (d == 1 and parity == "odd") else 0)
    assert total == expected


@pytest.mark.parametrize("d", range(1, 11))
def test_im_relation_to_srim_minus(d):
    for parity in ("odd", "even"):
        lhs = 2 * srim_minus_poly(d, parity)
        if d % 2 == 0:
            lhs = lhs - srim_minus_poly(d // 2, parity)
        if d == 1 and parity == "even":
            lhs = lhs - 1
        assert lhs == im_poly(d)


@pytest.mark.parametrize("d", range(1, 9))
def test_sdim_counts_integral_at_prime_powers(d):
    for q in (2, 3, 4, 5, 7, 8, 9):
        for poly in (sdim_minus_poly(d), sdim_plus_poly(d)):
            v = poly(q)
            assert v.denominator == 1 and v >= 0
    if d % 2 == 0:
        assert sdim_minus_poly(d) == 0


def test_p_class_examples():
    # the 2-adic class of q is decided by q mod 8 and v2(q^2 - 1)
    assert p_class(2, 3) == p_class(2, 11)
    assert p_class(2, 3) != p_class(2, -3)
    assert p_class(2, 5) == p_class(2, -3)
    assert p_class(2, 7) == p_class(2, -9)
    assert p_class(3, 2) == p_class(3, 5)
    assert p_class(3, 64) == p_class(3, 19)
    assert p_class(3, 4 ** 27) == p_class(3, 163)
    assert p_class(3, 4) != p_class(3, 64)


@given(st.sampled_from([(2, 3), (2, 5), (2, 9), (3, 2), (3, 4), (5, 2), (5, 3), (7, 2)]), st.integers(1, 8))
def test_p_counts_consistent(pq, d):
    p, q = pq
    ctx = PrimePowerOrderContext(p, q)
    assert 0 <= im_p(d, ctx) <= im_poly(d)(q)
    assert 0 <= srim_minus_p(d, ctx) <= srim_minus_poly(d, ParityContext.of(q))(q)
    assert 0 <= srim_plus_p(d, ctx) <= srim_plus_poly(d, ParityContext.of(q))(q)
    M = max_p_part_condition(d, ctx)
    assert M == 1 or mult_order(q, M) == 2 * d
