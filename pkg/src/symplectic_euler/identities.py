"""Symbolic verification of the partition-sum polynomial identities.

Each ``verify_*`` builds the left side coefficient by coefficient from
partition sums of generalized binomials, builds the right side as a
closed-form series, and compares through x^N.  A context with a concrete
``q_value`` switches both sides to numbers at that q.
"""

from __future__ import annotations

import itertools
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .counting import (
    ParityContext,
    PrimePowerOrderContext,
    divisors,
    im_poly,
    moebius,
    p_part,
    sdim_minus_poly,
    sdim_plus_poly,
    srim_minus_poly,
    srim_plus_poly,
)
from .exactalg import Q, QPoly, TruncSeries, poly_multinomial, series_exp, series_pow
from .genfun import fgl_p_exponent, fgl_product, fsp_closed, product_exponent_c, product_exponent_c_p
from .partitions import class_size, partitions_of, t2_eps, ts_transform

__all__ = [
    "IDENTITY_IDS",
    "IdentityReport",
    "verify_polidgl",
    "verify_polidgu",
    "verify_tsts",
    "verify_sdminus",
    "verify_master",
    "verify_lemma_basic",
    "verify_corollary_basic",
    "master_exponent",
    "master_cycle_index",
    "display_a_minus_n4",
    "display_c_n3",
    "run_identities",
]

IDENTITY_IDS = (
    "polidgl",
    "polidgu",
    "tsts",
    "sdminus-sdim",
    "sdminus-srim",
    "master-a+",
    "master-a-",
    "master-c",
    "lemma-basic",
    "corollary-basic",
)


def _fmt(v):
    if isinstance(v, QPoly):
        return str(v)
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


@dataclass(frozen=True)
class IdentityReport:
    identity_id: str
    epsilon: int
    max_degree_checked: int
    status: str  # "pass" or "fail"
    fail_degree: int | None = None
    lhs: str | None = None
    rhs: str | None = None
    params: dict = field(default_factory=dict, compare=False)
    values: tuple = ()  # left-side coefficients for n = 1..N

    @property
    def passed(self):
        return self.status == "pass"

    def to_json(self):
        rec = {
            "identity": self.identity_id,
            "epsilon": self.epsilon,
            "max_degree": self.max_degree_checked,
            "status": self.status,
        }
        rec.update({k: self.params[k] for k in sorted(self.params)})
        if self.status == "fail":
            rec["degree"] = self.fail_degree
            rec["lhs"] = self.lhs
            rec["rhs"] = self.rhs
        rec["values"] = list(self.values)
        return json.dumps(rec, sort_keys=False)


def _check_eps(eps):
    if eps not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")


def _q_of(ctx):
    return ctx.q_value if isinstance(ctx, ParityContext) else None


def _value(poly, qv):
    """A count polynomial, specialized when qv is given."""
    return poly if qv is None else poly(qv)


def _compare(identity_id, eps, lhs, rhs, N, params):
    """lhs: list of coefficients 0..N; rhs: TruncSeries."""
    values = tuple(_fmt(v) for v in lhs[1:])
    for n in range(N + 1):
        if lhs[n] != rhs[n]:
            return IdentityReport(identity_id, eps, N, "fail", n, _fmt(lhs[n]), _fmt(rhs[n]), params, values)
    return IdentityReport(identity_id, eps, N, "pass", params=params, values=values)


def _one(symbolic):
    return QPoly([1]) if symbolic else Fraction(1)


def _partition_sum(S, n, ksign, symbolic):
    """sum over lam |- n of prod_{d in B(lam)} binom(S(d); ksign * E(lam, d))."""
    acc = QPoly() if symbolic else Fraction(0)
    for lam in partitions_of(n):
        term = _one(symbolic)
        for d, e in lam.items:
            term = term * poly_multinomial(S(d), [ksign * e])
        acc = acc + term
    return acc


def _series_of_sums(S, N, ksign, symbolic, stride=1):
    coeffs = [_one(symbolic)] + [QPoly() if symbolic else Fraction(0)] * N
    for n in range(1, N // stride + 1):
        coeffs[n * stride] = _partition_sum(S, n, ksign, symbolic)
    return TruncSeries(coeffs, N, symbolic)


def _lin(c, N, symbolic):
    """1 + c x."""
    return TruncSeries([1, c], N, symbolic)


# linear, unitary and symplectic identities

def verify_polidgl(eps, N=8, ctx=None):
    _check_eps(eps)
    qv = _q_of(ctx)
    sym = qv is None
    qq = Q if sym else qv
    lhs = _series_of_sums(lambda d: _value(im_poly(d), qv) * eps, N, -1, sym)
    rhs = series_pow(_lin(-qq, N, sym) / _lin(-1, N, sym), eps)
    return _compare("polidgl", eps, lhs.coeffs, rhs, N, {"q": qv} if qv else {})


def verify_polidgu(eps, N=8, ctx=None):
    _check_eps(eps)
    qv = _q_of(ctx)
    sym = qv is None
    qq = Q if sym else qv
    minus = _series_of_sums(lambda d: _value(sdim_minus_poly(d), qv) * eps, N, -1, sym)
    plus = _series_of_sums(lambda d: _value(sdim_plus_poly(d), qv) * eps, N, -1, sym, stride=2)
    rhs = series_pow(_lin(-qq, N, sym) / _lin(1, N, sym), eps)
    return _compare("polidgu", eps, (minus * plus).coeffs, rhs, N, {"q": qv} if qv else {})


def _ctx_or_default(ctx):
    if ctx is None:
        return ParityContext("odd")
    if isinstance(ctx, str):
        return ParityContext(ctx)
    return ctx


def verify_tsts(eps, N=8, ctx=None):
    """SRIM- with +E multiplicities times SRIM+ with -E, against (1-x)^{-eps}."""
    _check_eps(eps)
    ctx = _ctx_or_default(ctx)
    qv = _q_of(ctx)
    sym = qv is None
    minus = _series_of_sums(lambda d: _value(srim_minus_poly(d, ctx), qv) * eps, N, 1, sym)
    plus = _series_of_sums(lambda d: _value(srim_plus_poly(d, ctx), qv) * eps, N, -1, sym)
    rhs = series_pow(_lin(-1, N, sym), -eps)
    return _compare("tsts", eps, (minus * plus).coeffs, rhs, N, {"parity": ctx.q_parity, **({"q": qv} if qv else {})})


def verify_sdminus(family, eps, N=8, ctx=None):
    """T2-weighted partition sums for SDIM- or SRIM-."""
    _check_eps(eps)
    ctx = _ctx_or_default(ctx)
    qv = _q_of(ctx)
    sym = qv is None
    qq = Q if sym else qv
    fam = family.upper().replace("-", "").replace("_", "")
    if fam in ("SDIM", "SDIMMINUS", "SDIM−"):
        S = lambda d: _value(sdim_minus_poly(d), qv)
        target = _lin(1, N, sym) * _lin(qq, N, sym) / (_lin(-1, N, sym) * _lin(-qq, N, sym))
        ident = "sdminus-sdim"
    elif fam in ("SRIM", "SRIMMINUS", "SRIM−"):
        S = lambda d: _value(srim_minus_poly(d, ctx), qv)
        if ctx.odd:
            target = _lin(-1, N, sym) / _lin(-qq, N, sym)
        else:
            target = series_pow(_lin(-qq, N, sym), -1)
        ident = "sdminus-srim"
    else:
        raise ValueError(f"unknown family {family!r}")
    coeffs = [_one(sym)]
    for n in range(1, N + 1):
        acc = QPoly() if sym else Fraction(0)
        for lam in partitions_of(n):
            term = _one(sym)
            for d, e in lam.items:
                s = S(d)
                term = term * t2_eps(s if sym else Fraction(s), e, eps)
            acc = acc + term
        coeffs.append(acc)
    rhs = series_pow(target, eps)
    params = {"parity": ctx.q_parity} if ident == "sdminus-srim" else {}
    if qv:
        params["q"] = qv
    return _compare(ident, eps, coeffs, rhs, N, params)


# master identities

def master_exponent(family, r, D, mode=None):
    """a^+_{r+1}, a^-_{r+1} or c_{r+1} at D, symbolic or p-primary."""
    if family == "c":
        if mode is None:
            return product_exponent_c(r, D)
        return Fraction(product_exponent_c_p(r, D, mode))
    sign = {"a+": 1, "a-": -1}[family]
    if mode is None:
        acc = QPoly()
        for d in divisors(D):
            mu = moebius(D // d)
            if mu:
                sd = sign ** d
                acc = acc + (Q ** d - sd) ** r * (sd * mu)
        return acc / D
    return Fraction(fgl_p_exponent(sign, r + 1, D, mode))


def _master_rhs(family, r, eps, N, mode):
    if mode is None:
        if family == "c":
            return series_pow(fsp_closed(r + 1, N), eps)
        return series_pow(fgl_product(1 if family == "a+" else -1, r + 1, N), eps)
    p, qq = mode.p, mode.q
    coeffs = [0]
    for n in range(1, N + 1):
        qn = qq ** n
        if family == "c":
            coeffs.append(Fraction(eps * (p_part(qn + 1, p) ** r - p_part(qn - 1, p) ** r), 2 * n))
        else:
            s = (1 if family == "a+" else -1) ** n
            coeffs.append(Fraction(-eps * s * p_part(qn - s, p) ** r, n))
    return series_exp(TruncSeries(coeffs, N, False))


def verify_master(family, primary_mode=None, eps=1, r=1, N=8):
    """``primary_mode`` is None for the symbolic identity or a PrimePowerOrderContext."""
    _check_eps(eps)
    if family not in ("a+", "a-", "c"):
        raise ValueError(f"unknown master family {family!r}")
    if r < 1:
        raise ValueError("r must be positive")
    sym = primary_mode is None
    lhs = _series_of_sums(lambda D: master_exponent(family, r, D, primary_mode) * eps, N, -1, sym)
    rhs = _master_rhs(family, r, eps, N, primary_mode)
    params = {"r": r}
    if not sym:
        params.update(p=primary_mode.p, q=primary_mode.q)
    return _compare("master-" + family, eps, lhs.coeffs, rhs, N, params)


def master_cycle_index(family, r, n, q_value=None, p=None):
    """Cycle-index form (1/n!) sum T(lam) prod b_i of the eps = +1 coefficient.

    For the c family the b-weights average over sign functions, which is the
    partition expansion of the G series.
    """
    qq = Q if q_value is None else Fraction(q_value)

    def part(v):
        if p is None:
            return v
        return p_part(int(v), p)

    total = QPoly() if q_value is None else Fraction(0)
    for lam in partitions_of(n):
        parts = lam.parts
        if family == "c":
            inner = 0
            for eps in itertools.product((1, -1), repeat=len(parts)):
                prod = 1
                for i, e in zip(parts, eps):
                    prod = prod * part(qq ** i + e) ** r * e
                inner = inner + prod
            term = inner / 2 ** len(parts)
        else:
            s = 1 if family == "a+" else -1
            term = 1
            for i in parts:
                term = term * (-(s ** i)) * part(qq ** i - s ** i) ** r
        total = total + term * class_size(lam)
    return total / math.factorial(n)


def display_a_minus_n4(r, q):
    """The n = 4 special case of the a^- cycle-index form, signs as the cycle index gives them."""
    q = Fraction(q)
    return (
        -6 * (q ** 4 - 1) ** r
        + 8 * (q + 1) ** r * (q ** 3 + 1) ** r
        + 3 * (q ** 2 - 1) ** (2 * r)
        - 6 * (q + 1) ** (2 * r) * (q ** 2 - 1) ** r
        + (q + 1) ** (4 * r)
    ) / 24


def display_c_n3(r, q):
    q = Fraction(q)
    return (
        ((q ** 3 + 1) ** r - (q ** 3 - 1) ** r) / 6
        + ((q + 1) ** r * (q ** 2 + 1) ** r - (q + 1) ** r * (q ** 2 - 1) ** r
           - (q - 1) ** r * (q ** 2 + 1) ** r + (q - 1) ** r * (q ** 2 - 1) ** r) / 8
        + ((q + 1) ** (3 * r) - 3 * (q - 1) ** r * (q + 1) ** (2 * r)
           + 3 * (q - 1) ** (2 * r) * (q + 1) ** r - (q - 1) ** (3 * r)) / 48
    )


# basic lemma and the transform corollary

def verify_lemma_basic(m, n_max=8):
    """sum_{lam |- n} binom(m; E(lam)) = binom(-m; -n)."""
    sym = isinstance(m, QPoly)
    if not sym:
        m = Fraction(m)
    coeffs = [_one(sym)]
    rhs = [_one(sym)]
    for n in range(1, n_max + 1):
        acc = QPoly() if sym else Fraction(0)
        for lam in partitions_of(n):
            acc = acc + poly_multinomial(m, [e for _, e in lam.items])
        coeffs.append(acc)
        rhs.append(poly_multinomial(-m, [-n]))
    return _compare("lemma-basic", 0, coeffs, TruncSeries(rhs, n_max, sym), n_max, {"m": _fmt(m)})


_COROLLARY_K = {  # (sign of x^k term, power) -> (sign on S, sign on E)
    ("-", -1): (-1, -1),
    ("-", 1): (1, -1),
    ("+", -1): (-1, 1),
    ("+", 1): (1, 1),
}


def verify_corollary_basic(S, k, sign, power, N=8, name="S"):
    """T_S((1 +- x^k)^{+-1}) by the M_n transform against the partition-sum closed form."""
    ssign, esign = _COROLLARY_K[(sign, power)]
    c = -1 if sign == "-" else 1
    base = TruncSeries.one(N) + TruncSeries.monomial(k, c, N) if k <= N else TruncSeries.one(N)
    base = series_pow(base, power)
    lhs = ts_transform(S, lambda m, d: base[m], N)
    rhs = _series_of_sums(lambda d: S(d) * ssign, N, esign, True, stride=k)
    return _compare("corollary-basic", power, lhs.coeffs, rhs, N, {"S": name, "k": k, "sign": sign})


# batch runner

def _threads():
    try:
        return max(1, int(os.environ.get("SYMPLECTIC_EULER_THREADS", "1")))
    except ValueError:
        return 1


def _jobs(which, N, r_max, primary):
    jobs = []
    for ident in which:
        for eps in (1, -1):
            if ident == "polidgl":
                jobs.append((verify_polidgl, (eps, N)))
            elif ident == "polidgu":
                jobs.append((verify_polidgu, (eps, N)))
            elif ident == "tsts":
                for par in ("odd", "even"):
                    jobs.append((verify_tsts, (eps, N, ParityContext(par))))
            elif ident == "sdminus-sdim":
                jobs.append((verify_sdminus, ("SDIM", eps, N)))
            elif ident == "sdminus-srim":
                for par in ("odd", "even"):
                    jobs.append((verify_sdminus, ("SRIM", eps, N, ParityContext(par))))
            elif ident.startswith("master-"):
                fam = ident[len("master-"):]
                for r in r_max:
                    jobs.append((verify_master, (fam, None, eps, r, N)))
                    for p, qq in primary:
                        jobs.append((verify_master, (fam, PrimePowerOrderContext(p, qq), eps, r, N)))
        if ident == "lemma-basic":
            jobs.append((verify_lemma_basic, (Q, N)))
        elif ident == "corollary-basic":
            for name, S in (("IM", im_poly), ("SRIM-", lambda d: srim_minus_poly(d, "odd"))):
                for key in _COROLLARY_K:
                    for k in (1, 2):
                        jobs.append((verify_corollary_basic, (S, k, key[0], key[1], N, name)))
    return jobs


def run_identities(which=None, N=8, r=None, primary=((2, 3), (3, 2)), threads=None):
    """Run a selection of identities; reports come back in a fixed order."""
    which = list(IDENTITY_IDS) if which is None else list(which)
    for w in which:
        if w not in IDENTITY_IDS:
            raise ValueError(f"unknown identity {w!r}")
    r_values = range(1, 5) if r is None else ([r] if isinstance(r, int) else list(r))
    jobs = _jobs(which, N, r_values, primary)
    threads = threads or _threads()
    if threads == 1:
        return [fn(*args) for fn, args in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(fn, *args) for fn, args in jobs]
        return [f.result() for f in futures]
