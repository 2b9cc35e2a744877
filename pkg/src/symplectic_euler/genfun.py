"""Generating functions for -chi_r of the symplectic buildings.

``fsp_*(r, ...)`` always returns the series F^r whose x^n coefficient is
-chi_r(Sp(2n, q)).  The only function with a shifted index is
``fsp_direct_coeff(r, n)``, which gives the x^n coefficient of F^{r+1}.

Every route is independent of the others; ``cross_check`` runs them side by
side and raises ``RouteMismatch`` on the first disagreement.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .counting import (
    ParityContext,
    PrimePowerOrderContext,
    divisors,
    moebius,
    p_part,
    srim_minus_p,
    srim_minus_poly,
    srim_plus_p,
    srim_plus_poly,
)
from .exactalg import Q, QPoly, TruncSeries, poly_multinomial, series_exp, series_pow
from .partitions import class_size, partitions_of, ts_transform

__all__ = [
    "ROUTES",
    "RouteResult",
    "RouteMismatch",
    "fsp_closed",
    "fsp_at",
    "fsp_exponential",
    "fsp_direct_coeff",
    "fsp_direct",
    "fgl_product",
    "fsp_ts_recurrence",
    "product_exponent_c",
    "product_exponent_c_p",
    "fsp_infinite_product",
    "fgl_p_exponent",
    "fsp_p",
    "fsp_p_exponential",
    "fsp_p_recurrence",
    "fsp_p_infinite_product",
    "gsp_expansion",
    "gsp_recurrence",
    "gsp_ordered",
    "gsp_p",
    "fsp_r_recurrence_check",
    "solrecur_check",
    "cross_check",
]

ROUTES = (
    "closed_product",
    "exponential",
    "direct_coeff",
    "ts_recurrence",
    "infinite_product",
    "gsp_expansion",
    "gsp_recurrence",
)


class RouteMismatch(ArithmeticError):
    pass


@dataclass(frozen=True)
class RouteResult:
    route: str
    series: TruncSeries
    r: int
    q: object = None  # int, or None for symbolic
    p: int | None = None
    N: int = 0

    def __post_init__(self):
        if self.route not in ROUTES:
            raise ValueError(f"unknown route {self.route!r}")


def _check_r(r):
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"r must be a positive integer, got {r!r}")


def _require_integral(series, what):
    if not series.is_integral():
        raise ArithmeticError(f"{what} has a non-integral coefficient: {series}")
    return series


def _linear(c, order, symbolic=True):
    """1 - c x."""
    return TruncSeries([1, -c], order, symbolic)


# closed product and friends

@lru_cache(maxsize=None)
def fsp_closed(r, N=12):
    _check_r(r)
    out = TruncSeries.one(N)
    if r == 1:
        return out
    for j in range(r):
        if j % 2 != (r - 1) % 2:
            out = out * series_pow(_linear(Q ** j, N), -math.comb(r - 1, j))
    return _require_integral(out, f"F^{r}")


def fsp_at(r, q, N=12):
    """F^r with q specialized; integer coefficients."""
    return fsp_closed(r, N).at_q(q)


def fsp_exponential(r, q_value=None, N=12):
    """exp(sum ((q^n+1)^{r-1} - (q^n-1)^{r-1}) x^n / 2n); symbolic if q_value is None."""
    _check_r(r)
    qv = Q if q_value is None else Fraction(q_value)
    coeffs = [0]
    for n in range(1, N + 1):
        qn = qv ** n
        coeffs.append(((qn + 1) ** (r - 1) - (qn - 1) ** (r - 1)) / (2 * n))
    return _require_integral(series_exp(TruncSeries(coeffs, N, q_value is None)), f"exp route F^{r}")


@lru_cache(maxsize=None)
def fsp_direct_coeff(r, n):
    """x^n coefficient of F^{r+1}, summed over weak compositions.

    Only the slots j in 0..r with j of parity different from r are free.
    """
    if not isinstance(r, int) or r < 1:
        raise ValueError("r must be positive")
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be positive")
    slots = [j for j in range(r + 1) if j % 2 != r % 2]

    def rec(i, remaining):
        if i == len(slots) - 1:
            yield (remaining,)
            return
        for k in range(remaining, -1, -1):
            for rest in rec(i + 1, remaining - k):
                yield (k,) + rest

    total = QPoly()
    for comp in rec(0, n):
        term = QPoly([1])
        for j, nj in zip(slots, comp):
            if nj == 0:
                continue
            # (-1)^{nj} binom(-C(r,j); nj) = C(C(r,j) + nj - 1, nj)
            term = term * (poly_multinomial(Fraction(-math.comb(r, j)), [nj]) * (-1) ** nj) * Q ** (j * nj)
        total = total + term
    if not total.is_integral():
        raise ArithmeticError("direct coefficient not integral")
    return total


def fsp_direct(r, N=12):
    _check_r(r)
    if r == 1:
        return TruncSeries.one(N)
    return TruncSeries([1] + [fsp_direct_coeff(r - 1, n) for n in range(1, N + 1)], N, True)


# GL-type products and the transform recurrence

@lru_cache(maxsize=None)
def fgl_product(sign, r, N=12):
    """prod_{0<=j<=r-1} (1 - (s)^r (s q)^j x)^{(-1)^{r-1-j} C(r-1, j)} with s = +-1."""
    s = _sign(sign)
    _check_r(r)
    out = TruncSeries.one(N)
    for j in range(r):
        c = Q ** j * (s ** r * s ** j)
        e = (-1) ** (r - 1 - j) * math.comb(r - 1, j)
        out = out * series_pow(_linear(c, N), e)
    return out


def _sign(sign):
    if sign in ("+", 1, "plus"):
        return 1
    if sign in ("-", -1, "minus"):
        return -1
    raise ValueError(f"sign must be + or -, got {sign!r}")


def _numeric_q(ctx):
    if isinstance(ctx, ParityContext):
        return ctx.q_value
    return None


def fsp_ts_recurrence(r, ctx, N=12):
    """F^r by iterating F^{s+1} = (F^s)^k T_{SRIM-}(F_GL^-_s) T_{SRIM+}(F_GL^+_s).

    k is 2 for odd q and 1 for even q.  With a symbolic context the
    transform runs in Q[q]; with a numeric one every S_d and every
    coefficient a_m(q^d) is an integer evaluated at the concrete q.
    """
    _check_r(r)
    if not isinstance(ctx, ParityContext):
        ctx = ParityContext.of(ctx) if isinstance(ctx, int) else ParityContext(ctx)
    qv = _numeric_q(ctx)
    symbolic = qv is None
    k = 2 if ctx.odd else 1
    F = TruncSeries.one(N, symbolic)
    for s in range(1, r):
        parts = []
        for sign, S in ((-1, srim_minus_poly), (1, srim_plus_poly)):
            A = fgl_product(sign, s, N)
            if symbolic:
                Sd = lambda d, S=S: S(d, ctx)
                a = lambda m, d, A=A: A[m].compose_power(d)
            else:
                Sd = lambda d, S=S: S(d, ctx)(qv)
                a = lambda m, d, A=A: A[m](qv ** d)
            parts.append(ts_transform(Sd, a, N, symbolic))
        F = series_pow(F, k) * parts[0] * parts[1]
    return _require_integral(F, f"recurrence F^{r}")


def solrecur_check(r, ctx, N=8):
    """Product identity linking the transformed GL series at level r+1 to F^{r+1}."""
    _check_r(r)
    odd = ctx.odd if isinstance(ctx, ParityContext) else ctx == "odd"
    lhs = None
    for sign, S in ((-1, srim_minus_poly), (1, srim_plus_poly)):
        A = fgl_product(sign, r + 1, N)
        t = ts_transform(lambda d, S=S: S(d, ctx), lambda m, d, A=A: A[m].compose_power(d), N)
        lhs = t if lhs is None else lhs * t
    for j in range(r + 2):
        if j % 2 == r % 2:
            lhs = lhs * series_pow(_linear(Q ** j, N), math.comb(r + 1, j))
    rhs = TruncSeries.one(N)
    for j in range(r + 1):
        if j % 2 != r % 2:
            rhs = rhs * series_pow(_linear(Q ** j, N), (2 if odd else 1) * math.comb(r, j))
    return lhs == rhs


# infinite product exponents

@lru_cache(maxsize=None)
def product_exponent_c(r, n):
    """(1/2n) sum_{d|n} mu(n/d) ((q^d-1)^r - (q^d+1)^r); F^{r+1} = prod (1-x^n)^{c}."""
    if r < 0 or n < 1:
        raise ValueError("need r >= 0 and n >= 1")
    acc = QPoly()
    for d in divisors(n):
        mu = moebius(n // d)
        if mu:
            qd = Q ** d
            acc = acc + ((qd - 1) ** r - (qd + 1) ** r) * mu
    return acc / (2 * n)


def product_exponent_c_p(r, n, ctx):
    if r < 0 or n < 1:
        raise ValueError("need r >= 0 and n >= 1")
    p, qq = ctx.p, ctx.q
    acc = 0
    for d in divisors(n):
        mu = moebius(n // d)
        if mu:
            qd = qq ** d
            acc += mu * (p_part(qd - 1, p) ** r - p_part(qd + 1, p) ** r)
    if acc % (2 * n):
        raise ArithmeticError(f"c_{r + 1}({p},{qq},{n}) not integral")
    return acc // (2 * n)


def _power_of_one_minus_xn(n, c, N, symbolic):
    """(1 - x^n)^c for an integer or polynomial exponent c."""
    coeffs = [0] * (N + 1)
    coeffs[0] = 1
    for k in range(1, N // n + 1):
        coeffs[n * k] = poly_multinomial(c, [k]) * (-1) ** k
    return TruncSeries(coeffs, N, symbolic)


def fsp_infinite_product(r, N=12, q_value=None):
    _check_r(r)
    symbolic = q_value is None
    out = TruncSeries.one(N, symbolic)
    if r == 1:
        return out
    for n in range(1, N + 1):
        c = product_exponent_c(r - 1, n)
        if not symbolic:
            c = c(q_value)
        if c != 0:
            out = out * _power_of_one_minus_xn(n, c, N, symbolic)
    return _require_integral(out, f"infinite product F^{r}")


# p-primary versions

def fsp_p_exponential(r, ctx, N=12):
    _check_r(r)
    p, qq = ctx.p, ctx.q
    coeffs = [0]
    for n in range(1, N + 1):
        qn = qq ** n
        coeffs.append(Fraction(p_part(qn + 1, p) ** (r - 1) - p_part(qn - 1, p) ** (r - 1), 2 * n))
    return _require_integral(series_exp(TruncSeries(coeffs, N, False)), f"p-primary exp route F^{r}")


def fgl_p_exponent(sign, r, n, ctx):
    """Exponent of (1 - x^n) in the p-primary GL-type series at level r."""
    s = _sign(sign)
    p, qq = ctx.p, ctx.q
    acc = 0
    for d in divisors(n):
        mu = moebius(n // d)
        if mu:
            sd = s ** d
            acc += sd * mu * p_part(qq ** d - sd, p) ** (r - 1)
    if acc % n:
        raise ArithmeticError("GL exponent not integral")
    return acc // n


def _fgl_p_series(sign, r, ctx, N):
    out = TruncSeries.one(N, False)
    for n in range(1, N + 1):
        e = fgl_p_exponent(sign, r, n, ctx)
        if e:
            out = out * _power_of_one_minus_xn(n, Fraction(e), N, False)
    return out


def fsp_p_recurrence(r, ctx, N=12):
    """p-primary transform recurrence; squares the previous term only for p = 2."""
    _check_r(r)
    k = 2 if ctx.p == 2 else 1
    F = TruncSeries.one(N, False)
    for s in range(1, r):
        parts = []
        for sign, S in ((-1, srim_minus_p), (1, srim_plus_p)):
            gl = {}

            def a(m, d, sign=sign, s=s):
                if d not in gl:
                    gl[d] = _fgl_p_series(sign, s, ctx.with_q(ctx.q ** d), N)
                return gl[d][m]

            parts.append(ts_transform(lambda d, S=S: S(d, ctx), a, N, symbolic=False))
        F = series_pow(F, k) * parts[0] * parts[1]
    return _require_integral(F, f"p-primary recurrence F^{r}")


def fsp_p_infinite_product(r, ctx, N=12):
    _check_r(r)
    out = TruncSeries.one(N, False)
    if r == 1:
        return out
    for n in range(1, N + 1):
        c = product_exponent_c_p(r - 1, n, ctx)
        if c:
            out = out * _power_of_one_minus_xn(n, Fraction(c), N, False)
    return out


def fsp_p(r, ctx, N=12):
    """p-primary F^r by the exponential form, checked against the recurrence."""
    if not isinstance(ctx, PrimePowerOrderContext):
        raise TypeError("fsp_p needs a PrimePowerOrderContext")
    a = fsp_p_exponential(r, ctx, N)
    b = fsp_p_recurrence(r, ctx, N)
    if a != b:
        raise RouteMismatch(f"p-primary routes disagree at r={r}, p={ctx.p}, q={ctx.q}:\n  {a}\n  {b}")
    return a


# G series: fixed n, varying r

def _g_coeffs_from_terms(terms, R, symbolic):
    """sum of w / (1 - U x) through x^R for (w, U) pairs."""
    zero = QPoly() if symbolic else Fraction(0)
    out = [zero] * (R + 1)
    for w, U in terms:
        pw = 1
        for k in range(R + 1):
            out[k] = out[k] + w * pw
            pw = pw * U
    return TruncSeries(out, R, symbolic)


def _gsp_terms(n, unit):
    """(weight, U) pairs of the partition expansion; ``unit(i, e)`` gives the factor for a part i of sign e."""
    for lam in partitions_of(n):
        parts = lam.parts
        base = Fraction(class_size(lam), 2 ** len(parts) * math.factorial(n))
        for eps in _signs(len(parts)):
            U = 1
            sgn = 1
            for i, e in zip(parts, eps):
                U = U * unit(i, e)
                sgn *= e
            yield base * sgn, U


def _signs(k):
    return itertools.product((1, -1), repeat=k)


def _check_n(n):
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")


def gsp_expansion(n, q_value, R=12):
    """The partition expansion of G_{2n}; q_value may be an int or the symbol Q."""
    _check_n(n)
    symbolic = isinstance(q_value, QPoly)
    if n == 0:
        return TruncSeries.geometric(1, R, symbolic)
    out = _g_coeffs_from_terms(_gsp_terms(n, lambda i, e: q_value ** i + e), R, symbolic)
    _check_g_integral(out, n)
    return out


def _check_g_integral(series, n):
    scaled = series * math.factorial(n)
    if not scaled.is_integral():
        raise ArithmeticError(f"n! G_{2 * n} not integral")


def gsp_recurrence(n, q_value, R=12):
    """2n G_{2n}(x) = sum_j [G_{2(n-j)}((q^j+1)x) - G_{2(n-j)}((q^j-1)x)], G_0 = 1/(1-x)."""
    _check_n(n)
    symbolic = isinstance(q_value, QPoly)
    G = [TruncSeries.geometric(1, R, symbolic)]
    for k in range(1, n + 1):
        acc = TruncSeries([0], R, symbolic)
        for j in range(1, k + 1):
            qj = q_value ** j
            acc = acc + G[k - j].scale_x(qj + 1) - G[k - j].scale_x(qj - 1)
        G.append(acc / (2 * k))
    return G[n]


def gsp_ordered(n, q_value, R=12):
    """Unrolled recurrence: a sum over ordered compositions of n."""
    _check_n(n)
    symbolic = isinstance(q_value, QPoly)
    terms = []

    def rec(remaining, weight, U, sgn):
        if remaining == 0:
            terms.append((weight * sgn, U))
            return
        for j in range(1, remaining + 1):
            qj = q_value ** j
            for e in (1, -1):
                rec(remaining - j, weight / (2 * remaining), U * (qj + e), sgn * e)

    rec(n, Fraction(1), 1, 1)
    return _g_coeffs_from_terms(terms, R, symbolic)


def gsp_p(n, ctx, R=12):
    """p-primary G_{2n}: the partition expansion with U replaced by its p-part."""
    _check_n(n)
    if n == 0:
        return TruncSeries.geometric(1, R, False)
    p, qq = ctx.p, ctx.q
    out = _g_coeffs_from_terms(_gsp_terms(n, lambda i, e: p_part(qq ** i + e, p)), R, False)
    _check_g_integral(out, n)
    return out


# recurrence in r

def fsp_r_recurrence_check(r, N=8, q_value=None):
    """F_{r+1}(x) = F_r(qx)/(1 - q^{r-1}x) * prod_{j=1}^{r-1} F_{r-j}(q^{j-1}x)."""
    _check_r(r)

    def F(k):
        s = fsp_closed(k, N)
        return s if q_value is None else s.at_q(q_value)

    qv = Q if q_value is None else Fraction(q_value)
    symbolic = q_value is None
    rhs = F(r).scale_x(qv) * series_pow(TruncSeries([1, -(qv ** (r - 1))], N, symbolic), -1)
    for j in range(1, r):
        rhs = rhs * F(r - j).scale_x(qv ** (j - 1))
    return F(r + 1) == rhs


# cross-route checking

def cross_check(r, q_value, N=6):
    """Run every F^r route at a concrete q and return the agreeing RouteResults."""
    _check_r(r)
    ctx = ParityContext.of(q_value)
    series = {
        "closed_product": fsp_at(r, q_value, N),
        "exponential": fsp_exponential(r, q_value, N),
        "direct_coeff": fsp_direct(r, N).at_q(q_value),
        "ts_recurrence": fsp_ts_recurrence(r, ctx, N),
        "infinite_product": fsp_infinite_product(r, N, q_value),
    }
    ref = series["closed_product"]
    for name, s in series.items():
        if s != ref:
            raise RouteMismatch(f"route {name} disagrees at r={r}, q={q_value}:\n  {s}\n  {ref}")
    # G-side: the x^n coefficient of F^r is the x^{r-1} coefficient of G_{2n}
    for name, fn in (("gsp_expansion", gsp_expansion), ("gsp_recurrence", gsp_recurrence)):
        coeffs = [fn(n, q_value, r - 1)[r - 1] for n in range(0, N + 1)]
        if tuple(coeffs) != ref.coeffs:
            raise RouteMismatch(f"route {name} disagrees at r={r}, q={q_value}: {coeffs}")
        series[name] = TruncSeries(coeffs, N, False)
    return {name: RouteResult(name, s, r, q_value, None, N) for name, s in series.items()}
