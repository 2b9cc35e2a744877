"""Counting sequences for monic polynomials over F_q.

IM_d counts irreducible monic polynomials of degree d (x excluded),
SRIM-_d counts self-reciprocal irreducible monic ones of degree 2d and
SRIM+_d counts unordered pairs {f, f*} of non-self-reciprocal irreducibles
of degree d.  The ``*_poly`` functions return polynomials in q, the ``*_p``
functions return the p-power-order counts at a concrete prime power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from sympy.ntheory import factorint as _factorint
from sympy.ntheory import n_order as _n_order

from .exactalg import QPoly, Q, TruncSeries, series_log

__all__ = [
    "factorint",
    "divisors",
    "is_prime",
    "prime_power",
    "moebius",
    "euler_phi",
    "padic_val",
    "p_part",
    "mult_order",
    "ParityContext",
    "PrimePowerOrderContext",
    "im_poly",
    "srim_minus_poly",
    "srim_plus_poly",
    "sdim_minus_poly",
    "sdim_plus_poly",
    "im_p",
    "srim_minus_p",
    "srim_plus_p",
    "max_p_part_condition",
    "p_class",
]


# arithmetic helpers

def _check_positive(n):
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"expected a positive integer, got {n!r}")


@lru_cache(maxsize=4096)
def factorint(n):
    _check_positive(n)
    return tuple(sorted((int(p), int(e)) for p, e in _factorint(n).items()))


@lru_cache(maxsize=4096)
def divisors(n):
    _check_positive(n)
    divs = [1]
    for p, e in factorint(n):
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def is_prime(n):
    return isinstance(n, int) and n >= 2 and len(factorint(n)) == 1 and factorint(n)[0][1] == 1


def prime_power(q):
    """Return (p, k) with q = p^k, or None."""
    if not isinstance(q, int) or q < 2:
        return None
    f = factorint(q)
    return f[0] if len(f) == 1 else None


def moebius(n):
    f = factorint(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def euler_phi(n):
    out = n
    for p, _ in factorint(n):
        out = out // p * (p - 1)
    return out


def padic_val(n, p):
    if n == 0:
        raise ValueError("valuation of 0")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def p_part(n, p):
    return p ** padic_val(n, p)


@lru_cache(maxsize=65536)
def mult_order(a, m):
    _check_positive(m)
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit modulo {m}")
    if m == 1:
        return 1
    return int(_n_order(a % m, m))


# contexts

@dataclass(frozen=True)
class ParityContext:
    """Odd/even branch choice, symbolic or attached to a concrete q."""

    q_parity: str
    q_value: int | None = None

    def __post_init__(self):
        if self.q_parity not in ("odd", "even"):
            raise ValueError("q_parity must be 'odd' or 'even'")
        if self.q_value is not None:
            pp = prime_power(self.q_value)
            if pp is None:
                raise ValueError(f"{self.q_value} is not a prime power")
            if (pp[0] == 2) != (self.q_parity == "even"):
                raise ValueError("q_value parity disagrees with q_parity")

    @classmethod
    def of(cls, q):
        if prime_power(q) is None:
            raise ValueError(f"{q} is not a prime power")
        return cls("odd" if q % 2 else "even", q)

    @property
    def odd(self):
        return self.q_parity == "odd"

    @property
    def numeric(self):
        return self.q_value is not None


def _parity(ctx):
    if isinstance(ctx, ParityContext):
        return ctx.odd
    if ctx in ("odd", "even"):
        return ctx == "odd"
    raise TypeError("expected a ParityContext or 'odd'/'even'")


@dataclass(frozen=True)
class PrimePowerOrderContext:
    p: int
    q: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        pp = prime_power(self.q)
        if pp is None:
            raise ValueError(f"{self.q} is not a prime power")
        if pp[0] == self.p:
            raise ValueError(f"p={self.p} divides q={self.q}")

    def part(self, n):
        return p_part(n, self.p)

    def with_q(self, q):
        return PrimePowerOrderContext(self.p, q)


def p_class(p, q):
    """Invariant deciding when q1, q2 generate the same closed subgroup of Z_p^x."""
    if p == 2:
        return (q % 8, padic_val(q * q - 1, 2))
    o = mult_order(q, p)
    return (o, padic_val(q ** o - 1, p))


# polynomial counts

@lru_cache(maxsize=None)
def im_poly(d):
    _check_positive(d)
    acc = QPoly()
    for e in divisors(d):
        mu = moebius(e)
        if mu:
            acc = acc + (Q ** (d // e) - 1) * mu
    return acc / d


@lru_cache(maxsize=None)
def _srim_minus(d, odd):
    _check_positive(d)
    acc = QPoly()
    for e in divisors(d):
        if e % 2 == 0:
            continue
        mu = moebius(e)
        if mu:
            term = Q ** (d // e) - 1 if odd else Q ** (d // e)
            acc = acc + term * mu
    return acc / (2 * d)


def srim_minus_poly(d, ctx):
    return _srim_minus(d, _parity(ctx))


@lru_cache(maxsize=None)
def _srim_plus(d, odd):
    _check_positive(d)
    if d == 1:
        return (Q - 3) / 2 if odd else (Q - 2) / 2
    if d % 2:
        return im_poly(d) / 2
    return (im_poly(d) - _srim_minus(d // 2, odd)) / 2


def srim_plus_poly(d, ctx):
    return _srim_plus(d, _parity(ctx))


# SDIM from the two functional equations, by logarithms and Moebius inversion

@lru_cache(maxsize=None)
def _sdim_tables(order):
    def lin(c):
        return TruncSeries([1, c], order, True)

    # (1+x)(1+qx) / ((1-x)(1-qx))
    target_minus = lin(1) * lin(Q) / (lin(-1) * lin(-Q))
    log_minus = series_log(target_minus).coeffs
    # (1-qx) / (1+x)
    log_mixed = series_log(lin(-Q) / lin(1)).coeffs

    # odd n: sum_{d | n} d S-_d = n * g_n / 2  (only odd d contribute)
    minus = {}
    weighted = {}
    for n in range(1, order + 1, 2):
        weighted[n] = log_minus[n] * n / 2
    for n in range(1, order + 1):
        if n % 2 == 0:
            minus[n] = QPoly()
            continue
        acc = QPoly()
        for e in divisors(n):
            mu = moebius(n // e)
            if mu:
                acc = acc + weighted[e] * mu
        minus[n] = acc / n

    # n = 2m: sum_{f | m} 2 f S+_f = -n h_n - sum_{d | n} d S-_d
    plus = {}
    rhs = {}
    for m in range(1, order // 2 + 1):
        n = 2 * m
        acc = -log_mixed[n] * n
        for d in divisors(n):
            acc = acc - minus[d] * d
        rhs[m] = acc / 2
    for m in range(1, order // 2 + 1):
        acc = QPoly()
        for f in divisors(m):
            mu = moebius(m // f)
            if mu:
                acc = acc + rhs[f] * mu
        plus[m] = acc / m
    return minus, plus


def _sdim_order(n):
    return max(16, 8 * ((n + 7) // 8))


def sdim_minus_poly(d):
    _check_positive(d)
    return _sdim_tables(_sdim_order(d))[0][d]


def sdim_plus_poly(d):
    _check_positive(d)
    return _sdim_tables(_sdim_order(2 * d))[1][d]


# p-power-order counts

def im_p(d, ctx):
    """IM_d(p,q) = (1/d) sum of phi(p^n) over n with ord_{p^n}(q) = d."""
    _check_positive(d)
    p, qq = ctx.p, ctx.q
    total = 0
    n = 0
    while True:
        o = mult_order(qq, p ** n)
        if o > d:
            break
        if o == d:
            total += euler_phi(p ** n)
        n += 1
    if total % d:
        raise ArithmeticError(f"IM_{d}({p},{qq}) not integral")
    return total // d


def _plus_one_p_parts(ctx, d):
    """The finitely many values of (q^n + 1)_p whose order can be at most 2d."""
    p, qq = ctx.p, ctx.q
    if p == 2:
        return {p_part(qq + 1, 2), 2}
    o = mult_order(qq, p)
    if o % 2:
        return set()
    n0 = o // 2
    base = p_part(qq ** n0 + 1, p)
    out = set()
    j = 0
    while True:
        v = base * p ** j
        out.add(v)
        if mult_order(qq, v) > 2 * d:
            break
        j += 1
    return out


def max_p_part_condition(d, ctx):
    """M_d(p,q): largest (q^n+1)_p with ord_{(q^n+1)_p}(q) = 2d, else 1."""
    _check_positive(d)
    best = 1
    for v in _plus_one_p_parts(ctx, d):
        if v > 1 and mult_order(ctx.q, v) == 2 * d:
            best = max(best, v)
    return best


def srim_minus_p(d, ctx):
    big = max_p_part_condition(d, ctx)
    total = 0
    m = 1
    while m <= big:
        if mult_order(ctx.q, m) == 2 * d:
            total += euler_phi(m)
        m *= ctx.p
    if total % (2 * d):
        raise ArithmeticError(f"SRIM-_{d}({ctx.p},{ctx.q}) not integral")
    return total // (2 * d)


def srim_plus_p(d, ctx):
    _check_positive(d)
    if d == 1:
        a = p_part(ctx.q - 1, ctx.p)
        val = a - 2 if ctx.p == 2 else a - 1
    elif d % 2:
        val = im_p(d, ctx)
    else:
        val = im_p(d, ctx) - srim_minus_p(d // 2, ctx)
    if val % 2 or val < 0:
        raise ArithmeticError(f"SRIM+_{d}({ctx.p},{ctx.q}) = {val}/2 is not a count")
    return val // 2
