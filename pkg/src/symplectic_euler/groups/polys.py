"""Exhaustive catalogues of monic polynomials over small fields.

Polynomials are uint8 rows of coefficients in ascending degree.  A monic
polynomial of degree d is encoded by sum_{i<d} c_i q^i, so the rows of a
degree are indexed by their code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .. import kernels
from ..counting import divisors, p_part, prime_power
from .fields import FiniteField, build_field

__all__ = [
    "PolyCatalogue",
    "DegreeTable",
    "enumerate_polys",
    "poly_mul",
    "poly_divmod",
    "poly_str",
    "factor_poly",
    "canonical_factorization",
    "count_palindromic_irreducible",
    "count_irreducible",
    "CATALOGUE_CAP",
    "MAX_CATALOGUE_Q",
]

CATALOGUE_CAP = 2_000_000  # q^max_deg bound for a full catalogue
MAX_CATALOGUE_Q = 5


def poly_trim(a):
    a = list(int(c) for c in a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a, b, F):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = int(F.add[out[i + j], F.mul[x, y]])
    return poly_trim(out)


def poly_divmod(a, b, F):
    a = poly_trim(a)
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    lead = int(F.inv[b[-1]])
    quot = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        t = int(F.mul[a[-1], lead])
        shift = len(a) - len(b)
        quot[shift] = t
        for j, c in enumerate(b):
            a[shift + j] = int(F.add[a[shift + j], F.neg[F.mul[t, c]]])
        a = poly_trim(a)
    return poly_trim(quot), a


def poly_str(a, F=None):
    a = poly_trim(a)
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = "x" if i == 1 else f"x^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms)


def _monic_rows(d, q, nonzero_constant=True):
    """All monic degree-d rows ordered by code (constant term least significant)."""
    idx = np.arange(q ** d, dtype=np.int64)
    rows = np.zeros((q ** d, d + 1), dtype=np.uint8)
    rows[:, d] = 1
    for i in range(d):
        rows[:, i] = idx % q
        idx //= q
    if nonzero_constant:
        rows = rows[rows[:, 0] != 0]
    return rows


def _codes(rows, q):
    d = rows.shape[1] - 1
    w = q ** np.arange(d, dtype=np.int64)
    return rows[:, :d].astype(np.int64) @ w


def _batch_mul_fixed(g, H, F):
    """Rows of g * h for a fixed polynomial g and a stack H of polynomials."""
    k = len(g) - 1
    m = H.shape[1] - 1
    out = np.zeros((len(H), k + m + 1), dtype=np.uint8)
    for i, c in enumerate(g):
        if c:
            out[:, i:i + m + 1] = F.add[out[:, i:i + m + 1], F.mul[c, H]]
    return out


def _reciprocal_monic(rows, F):
    """r*(x)/r(0) for each row (requires r(0) != 0)."""
    rev = rows[:, ::-1]
    scale = F.inv[rows[:, 0]]
    return F.mul[scale[:, None], rev]


@dataclass
class DegreeTable:
    d: int
    rows: np.ndarray          # (M, d+1), monic with nonzero constant term
    codes: np.ndarray
    irreducible: np.ndarray   # bool, from the sieve
    palindromic: np.ndarray   # bool
    partner: np.ndarray       # index of r*/r(0)

    def __len__(self):
        return len(self.rows)

    def index_of(self, row):
        c = _codes(np.asarray(row, dtype=np.uint8)[None], int(self.q))[0]
        i = int(np.searchsorted(self.codes, c))
        if i >= len(self.codes) or self.codes[i] != c:
            raise KeyError("polynomial not in the catalogue")
        return i


class PolyCatalogue:
    """Monic polynomials with nonzero constant term up to a given degree."""

    def __init__(self, F, max_deg, cap=CATALOGUE_CAP):
        if isinstance(F, int):
            F = build_field(F)
        q = F.q
        if max_deg < 1:
            raise ValueError("max_deg must be positive")
        if q ** max_deg > cap:
            raise ValueError(f"q^max_deg = {q ** max_deg} exceeds the cap {cap}")
        self.F = F
        self.q = q
        self.max_deg = max_deg
        self.tables = {}
        for d in range(1, max_deg + 1):
            self.tables[d] = self._build_degree(d)

    def _build_degree(self, d):
        F, q = self.F, self.q
        rows = _monic_rows(d, q)
        codes = _codes(rows, q)
        composite = np.zeros(q ** d, dtype=bool)
        # sieve: mark every product of a lower-degree irreducible with a monic cofactor
        for k in range(1, d // 2 + 1):
            low = self.tables[k]
            cof = _monic_rows(d - k, q)
            for g in low.rows[low.irreducible]:
                prod = _batch_mul_fixed(list(g), cof, F)
                composite[_codes(prod, q)] = True
        irreducible = ~composite[codes]
        palindromic = np.all(rows == rows[:, ::-1], axis=1)
        rec = _reciprocal_monic(rows, F)
        partner = np.searchsorted(codes, _codes(rec, q))
        t = DegreeTable(d, rows, codes, irreducible, palindromic, partner)
        t.q = q
        return t

    def __getitem__(self, d):
        return self.tables[d]

    def irreducibles(self, d):
        t = self.tables[d]
        return t.rows[t.irreducible]

    def ben_or_flags(self, d):
        """Irreducibility of the degree-d rows by the independent Ben-Or kernel."""
        F = self.F
        return kernels.irreducible_flags(self.tables[d].rows, F.add, F.mul, F.neg, F.inv, F.q).astype(bool)

    # counts

    def im(self, d):
        return int(self.tables[d].irreducible.sum())

    def involution_fixed(self, d):
        t = self.tables[d]
        return np.nonzero(t.irreducible & (t.partner == np.arange(len(t))))[0]

    def srim_minus(self, d):
        """Self-reciprocal irreducibles of degree 2d."""
        t = self.tables[2 * d]
        return int((t.irreducible & t.palindromic).sum())

    def srim_plus(self, d):
        t = self.tables[d]
        moved = int(t.irreducible.sum()) - len(self.involution_fixed(d))
        return moved // 2

    # orders

    def order(self, row):
        """Least e >= 1 with row | x^e - 1."""
        row = poly_trim(row)
        d = len(row) - 1
        F = self.F
        if row[0] == 0:
            raise ValueError("x divides the polynomial; no order")
        x = [0, 1] if d > 1 else [int(F.neg[row[0]])]
        cur = poly_divmod(x, row, F)[1]
        e = 1
        while cur != [1]:
            cur = poly_divmod(poly_mul(cur, x, F), row, F)[1]
            e += 1
            if e > self.q ** d:
                raise ArithmeticError("order search did not terminate")
        return e

    def order_irreducible(self, row):
        """Order of an irreducible via the divisors of q^d - 1."""
        d = len(poly_trim(row)) - 1
        F = self.F
        arr = np.asarray([row], dtype=np.uint8)
        for e in divisors(self.q ** d - 1):
            if kernels.x_pow_is_one(arr, e, F.add, F.mul, F.neg)[0]:
                return e
        raise ArithmeticError("no order found")

    def p_power_irreducible(self, d, p):
        """Flags, on the degree-d irreducibles, of p-power order."""
        F = self.F
        e = p_part(self.q ** d - 1, p)
        rows = self.irreducibles(d)
        return kernels.x_pow_is_one(rows, e, F.add, F.mul, F.neg).astype(bool)

    def im_p(self, d, p):
        return int(self.p_power_irreducible(d, p).sum())

    def srim_minus_p(self, d, p):
        t = self.tables[2 * d]
        mask = t.irreducible & t.palindromic
        flags = self._p_flags(2 * d, p)
        return int((mask & flags).sum())

    def srim_plus_p(self, d, p):
        t = self.tables[d]
        flags = self._p_flags(d, p)
        fixed = np.zeros(len(t), dtype=bool)
        fixed[self.involution_fixed(d)] = True
        moved = t.irreducible & ~fixed & flags
        return int(moved.sum()) // 2

    def _p_flags(self, d, p):
        t = self.tables[d]
        out = np.zeros(len(t), dtype=bool)
        out[t.irreducible] = self.p_power_irreducible(d, p)
        return out

    # output

    def records(self, p=None):
        """Dicts describing every polynomial, degree by degree."""
        for d, t in self.tables.items():
            pflags = self._p_flags(d, p) if p else None
            for i, row in enumerate(t.rows):
                rec = {
                    "q": self.q,
                    "degree": d,
                    "coeffs": [int(c) for c in row],
                    "poly": poly_str(row),
                    "irreducible": bool(t.irreducible[i]),
                    "self_reciprocal": bool(t.palindromic[i]),
                    "partner": [int(c) for c in t.rows[t.partner[i]]],
                }
                if t.irreducible[i]:
                    rec["order"] = self.order_irreducible(row)
                    if p:
                        rec[f"{p}_power_order"] = bool(pflags[i])
                yield rec

    def dump_jsonl(self, stream, p=None):
        n = 0
        for rec in self.records(p):
            stream.write(json.dumps(rec, sort_keys=True) + "\n")
            n += 1
        return n


def enumerate_polys(F, max_deg, cap=CATALOGUE_CAP):
    """Classified catalogue of monic polynomials with nonzero constant term, q <= 5."""
    q = F if isinstance(F, int) else F.q
    if q > MAX_CATALOGUE_Q:
        raise ValueError(f"catalogues are limited to q <= {MAX_CATALOGUE_Q}")
    return PolyCatalogue(F, max_deg, cap)


# counters that only need the Ben-Or kernel

def _palindromic_rows(d, q):
    """Monic palindromic rows of degree 2d; q^d of them."""
    free = _monic_rows(d, q, nonzero_constant=False)[:, :d]  # the digits c_1..c_d
    rows = np.zeros((len(free), 2 * d + 1), dtype=np.uint8)
    rows[:, 0] = 1
    rows[:, 2 * d] = 1
    rows[:, 1:d + 1] = free
    for i in range(1, d):
        rows[:, 2 * d - i] = rows[:, i]
    return rows


def count_palindromic_irreducible(F, d, p=None, chunk=65536):
    """Number of self-reciprocal irreducibles of degree 2d (optionally of p-power order)."""
    if isinstance(F, int):
        F = build_field(F)
    rows = _palindromic_rows(d, F.q)
    total = 0
    e = p_part(F.q ** (2 * d) - 1, p) if p else None
    for lo in range(0, len(rows), chunk):
        block = rows[lo:lo + chunk]
        flags = kernels.irreducible_flags(block, F.add, F.mul, F.neg, F.inv, F.q).astype(bool)
        if p:
            sel = block[flags]
            flags = kernels.x_pow_is_one(sel, e, F.add, F.mul, F.neg).astype(bool) if len(sel) else flags[:0]
        total += int(flags.sum())
    return total


def count_irreducible(F, d, chunk=65536):
    """Number of monic irreducibles of degree d with nonzero constant term (Ben-Or)."""
    if isinstance(F, int):
        F = build_field(F)
    rows = _monic_rows(d, F.q)
    total = 0
    for lo in range(0, len(rows), chunk):
        total += int(kernels.irreducible_flags(rows[lo:lo + chunk], F.add, F.mul, F.neg, F.inv, F.q).sum())
    return total


# factorization into catalogue irreducibles

def factor_poly(row, cat):
    """Irreducible factorization by trial division: list of (factor row, multiplicity)."""
    F = cat.F
    f = poly_trim(row)
    if f[-1] != 1:
        raise ValueError("expected a monic polynomial")
    out = []
    d = 1
    # a reducible f has a factor of degree at most deg(f)/2
    while len(f) - 1 >= 2 * d:
        if d > cat.max_deg:
            raise ValueError("catalogue too small for this factorization")
        for g in cat.irreducibles(d):
            g = poly_trim(g)
            m = 0
            while True:
                quot, rem = poly_divmod(f, g, F)
                if rem:
                    break
                f, m = quot, m + 1
            if m:
                out.append((tuple(g), m))
        d += 1
    if len(f) > 1:
        out.append((tuple(f), 1))
    return out


@dataclass
class CanonicalFactorization:
    a_minus: int               # multiplicity of x - 1 (q odd)
    a_plus: int                # multiplicity of x + 1
    self_reciprocal: list      # (factor, multiplicity), degree >= 2
    pairs: list                # ((s, s*/s(0)), multiplicity)

    def degree(self):
        return (self.a_minus + self.a_plus + sum(len(f) - 1 for f, m in self.self_reciprocal for _ in range(m))
                + 2 * sum((len(s) - 1) * m for (s, _), m in self.pairs))


def canonical_factorization(row, cat):
    """Split a monic polynomial with r(0) != 0 into the shape of a self-reciprocal one.

    Raises ValueError if the factor multiset is not closed under r -> r*/r(0).
    """
    F = cat.F
    facs = dict(factor_poly(row, cat))
    minus_one = int(F.neg[1])
    x_minus_1 = (minus_one, 1)
    x_plus_1 = (1, 1)
    a_minus = facs.pop(x_minus_1, 0) if F.p != 2 else 0
    a_plus = facs.pop(x_plus_1, 0)
    fixed, pairs = [], []
    seen = set()
    for f, m in sorted(facs.items()):
        if f in seen:
            continue
        arr = np.asarray([f], dtype=np.uint8)
        g = tuple(int(c) for c in _reciprocal_monic(arr, F)[0])
        if g == f:
            fixed.append((f, m))
        else:
            if facs.get(g) != m:
                raise ValueError("factor multiset not closed under the reciprocal involution")
            pairs.append(((f, g), m))
            seen.add(g)
        seen.add(f)
    return CanonicalFactorization(a_minus, a_plus, fixed, pairs)
