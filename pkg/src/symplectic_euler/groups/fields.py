"""Small finite fields with lookup-table arithmetic.

An element of F_q, q = p^k, is stored as the integer sum(c_i * p^i) of its
coefficient vector modulo the defining polynomial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ..counting import prime_power

__all__ = ["FiniteField", "FqElem", "build_field", "MAX_Q", "supported_q"]

MAX_Q = 16


def _polymod_p(a, f, p):
    """Remainder of a modulo monic f, coefficient lists ascending, over F_p."""
    a = list(a)
    n = len(f) - 1
    for i in range(len(a) - 1, n - 1, -1):
        t = a[i] % p
        if t:
            for j in range(n + 1):
                a[i - n + j] = (a[i - n + j] - t * f[j]) % p
    a = [c % p for c in a[:n]] if len(a) > n else [c % p for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def _monic_polys_p(deg, p):
    for low in itertools.product(range(p), repeat=deg):
        yield list(low) + [1]


def _irreducible_by_trial_division(f, p):
    n = len(f) - 1
    for d in range(1, n // 2 + 1):
        for g in _monic_polys_p(d, p):
            if not _polymod_p(f, g, p):
                return False
    return True


def smallest_modulus(p, k):
    """Lexicographically least monic irreducible of degree k over F_p.

    Candidates are compared by (c_0, c_1, ..., c_{k-1}).
    """
    if k == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=k):
        f = list(low) + [1]
        if _irreducible_by_trial_division(f, p):
            return tuple(f)
    raise ArithmeticError("no irreducible polynomial found")  # unreachable


@dataclass(frozen=True, eq=False)
class FiniteField:
    p: int
    k: int
    modulus: tuple
    add: np.ndarray = field(repr=False)
    mul: np.ndarray = field(repr=False)
    neg: np.ndarray = field(repr=False)
    inv: np.ndarray = field(repr=False)
    generator: int = 0

    @property
    def q(self):
        return self.p ** self.k

    def digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_digits(self, ds):
        return sum(int(c) % self.p * self.p ** i for i, c in enumerate(ds))

    def sub(self, a, b):
        return int(self.add[a, self.neg[b]])

    def power(self, a, e):
        r = 1
        for _ in range(e):
            r = int(self.mul[r, a])
        return r

    def element(self, a):
        return FqElem(self, int(a))

    def elements(self):
        return range(self.q)

    def modulus_str(self):
        terms = []
        for i in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            mono = "x" if i == 1 else f"x^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)

    def __repr__(self):
        return f"FiniteField(q={self.q}, modulus={self.modulus_str()})"


class FqElem:
    """Scalar of a FiniteField with operator arithmetic."""

    __slots__ = ("F", "v")

    def __init__(self, F, v):
        self.F = F
        self.v = int(v) % F.q if v >= 0 else int(F.neg[(-v) % F.q])

    def _other(self, o):
        if isinstance(o, FqElem):
            if o.F is not self.F:
                raise ValueError("elements of different fields")
            return o.v
        return FqElem(self.F, o % self.F.p).v

    def __add__(self, o):
        return FqElem(self.F, self.F.add[self.v, self._other(o)])

    __radd__ = __add__

    def __neg__(self):
        return FqElem(self.F, self.F.neg[self.v])

    def __sub__(self, o):
        return self + (-FqElem(self.F, self._other(o)))

    def __rsub__(self, o):
        return FqElem(self.F, self._other(o)) - self

    def __mul__(self, o):
        return FqElem(self.F, self.F.mul[self.v, self._other(o)])

    __rmul__ = __mul__

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("zero has no inverse")
        return FqElem(self.F, self.F.inv[self.v])

    def __truediv__(self, o):
        return self * FqElem(self.F, self._other(o)).inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return FqElem(self.F, self.F.power(self.v, e))

    def __eq__(self, o):
        if isinstance(o, FqElem):
            return self.F is o.F and self.v == o.v
        if isinstance(o, int):
            return self.v == FqElem(self.F, o % self.F.p).v
        return NotImplemented

    def __hash__(self):
        return hash((id(self.F), self.v))

    def __repr__(self):
        return f"FqElem({self.v} in F_{self.F.q})"


def supported_q():
    return [q for q in range(2, MAX_Q + 1) if prime_power(q)]


_cache = {}


def build_field(q):
    if q in _cache:
        return _cache[q]
    pp = prime_power(q) if isinstance(q, int) else None
    if pp is None:
        raise ValueError(f"{q!r} is not a prime power")
    if q > MAX_Q:
        raise ValueError(f"q={q} exceeds the oracle cap {MAX_Q}")
    p, k = pp
    f = smallest_modulus(p, k)
    if k > 1 and not _irreducible_by_trial_division(list(f), p):
        raise ArithmeticError("modulus is reducible")
    add = np.zeros((q, q), dtype=np.uint8)
    mul = np.zeros((q, q), dtype=np.uint8)

    def digits(a):
        return [(a // p ** i) % p for i in range(k)]

    def number(ds):
        return sum(c * p ** i for i, c in enumerate(ds))

    for a in range(q):
        da = digits(a)
        for b in range(q):
            db = digits(b)
            add[a, b] = number([(x + y) % p for x, y in zip(da, db)])
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(da):
                for j, y in enumerate(db):
                    prod[i + j] += x * y
            r = _polymod_p(prod, list(f), p) if k > 1 else [prod[0] % p]
            mul[a, b] = number(r + [0] * (k - len(r)))
    neg = np.array([int(np.nonzero(add[a] == 0)[0][0]) for a in range(q)], dtype=np.uint8)
    inv = np.zeros(q, dtype=np.uint8)
    for a in range(1, q):
        inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
    # a generator certifies that the multiplicative group is cyclic of order q-1
    gen = 0
    for g in range(1, q):
        x, order = g, 1
        while x != 1:
            x = int(mul[x, g])
            order += 1
        if order == q - 1:
            gen = g
            break
    if not gen:
        raise ArithmeticError("multiplicative group has no generator")
    for t in (add, mul, neg, inv):
        t.setflags(write=False)
    F = FiniteField(p, k, tuple(f), add, mul, neg, inv, gen)
    _cache[q] = F
    return F
