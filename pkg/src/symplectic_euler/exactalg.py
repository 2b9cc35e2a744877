"""Exact polynomials in q and truncated power series in x.

Rationals are ``fractions.Fraction``.  A :class:`QPoly` keeps integer
numerators over one common positive denominator, which is much faster than
a tuple of Fractions for the convolutions that dominate every route.
A :class:`TruncSeries` holds coefficients 0..N; anything past N is unknown.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "QPoly",
    "TruncSeries",
    "Q",
    "poly_multinomial",
    "series_mul",
    "series_inv",
    "series_pow",
    "series_exp",
    "series_log",
    "series_rpow",
    "ZERO_DEGREE",
]

# degree reported for the zero polynomial
ZERO_DEGREE = -1


class QPoly:
    """Polynomial in q with rational coefficients, stored canonically.

    ``QPoly([c0, c1, ...])`` builds c0 + c1*q + ... from ints or Fractions.
    """

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, coeffs=()):
        if isinstance(coeffs, QPoly):
            self._num, self._den, self._hash = coeffs._num, coeffs._den, None
            return
        if isinstance(coeffs, (int, Fraction)):
            coeffs = (coeffs,)
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        self._set([int(c * den) for c in fr], den)

    def _set(self, num, den):
        while num and num[-1] == 0:
            num.pop()
        if not num:
            den = 1
        else:
            g = den
            for c in num:
                g = math.gcd(g, c)
                if g == 1:
                    break
            if g > 1:
                num = [c // g for c in num]
                den //= g
        self._num = tuple(num)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, num, den=1):
        obj = cls.__new__(cls)
        obj._set(list(num), den)
        return obj

    @classmethod
    def monomial(cls, k, c=1):
        c = Fraction(c)
        return cls._raw([0] * k + [c.numerator], c.denominator)

    # basic views

    @property
    def coeffs(self):
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def degree(self):
        return len(self._num) - 1

    def is_zero(self):
        return not self._num

    def is_constant(self):
        return len(self._num) <= 1

    def is_integral(self):
        return self._den == 1

    def constant(self):
        return Fraction(self._num[0], self._den) if self._num else Fraction(0)

    def __getitem__(self, k):
        if 0 <= k < len(self._num):
            return Fraction(self._num[k], self._den)
        return Fraction(0)

    def __bool__(self):
        return bool(self._num)

    def __eq__(self, other):
        if isinstance(other, QPoly):
            return self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant())
            else:
                self._hash = hash((self._num, self._den))
        return self._hash

    # arithmetic

    @staticmethod
    def _coerce(x):
        if isinstance(x, QPoly):
            return x
        if isinstance(x, (int, Fraction)):
            x = Fraction(x)
            return QPoly._raw([x.numerator], x.denominator)
        if isinstance(x, Rational):
            return QPoly._coerce(Fraction(x))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._num, o._num
        da, db = self._den, o._den
        if da == db:
            fa = fb = 1
            den = da
        else:
            g = math.gcd(da, db)
            fa, fb = db // g, da // g
            den = da * fa
        la, lb = len(a), len(b)
        out = [0] * max(la, lb)
        for i in range(la):
            out[i] = a[i] * fa
        for i in range(lb):
            out[i] += b[i] * fb
        return QPoly._raw(out, den)

    __radd__ = __add__

    def __neg__(self):
        return QPoly._raw([-c for c in self._num], self._den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._num, o._num
        if not a or not b:
            return QPoly()
        if len(b) == 1:
            c = b[0]
            return QPoly._raw([x * c for x in a], self._den * o._den)
        if len(a) == 1:
            c = a[0]
            return QPoly._raw([x * c for x in b], self._den * o._den)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPoly._raw(out, self._den * o._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QPoly):
            if not other.is_constant() or other.is_zero():
                raise ZeroDivisionError("division by a non-constant or zero polynomial")
            other = other.constant()
        other = Fraction(other)
        if other == 0:
            raise ZeroDivisionError("division by zero")
        num, den = other.numerator, other.denominator
        if num < 0:
            num, den = -num, -den
        return QPoly._raw([c * den for c in self._num], self._den * num)

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("QPoly powers must be nonnegative integers")
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, x):
        """Evaluate at a rational (or QPoly, giving composition)."""
        if isinstance(x, QPoly):
            acc = QPoly()
            for c in reversed(self._num):
                acc = acc * x + c
            return acc / self._den
        acc = 0
        for c in reversed(self._num):
            acc = acc * x + c
        return Fraction(acc) / self._den

    def compose_power(self, d):
        """Substitute q -> q^d."""
        if d == 1 or len(self._num) <= 1:
            return self
        out = [0] * (d * (len(self._num) - 1) + 1)
        for i, c in enumerate(self._num):
            out[i * d] = c
        return QPoly._raw(out, self._den)

    # text form

    def __str__(self):
        if not self._num:
            return "0"
        pieces = []
        for k in range(len(self._num) - 1, -1, -1):
            c = Fraction(self._num[k], self._den)
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "q" if k == 1 else f"q^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"QPoly({str(self)!r})"

    _term_re = re.compile(r"^(?:(\d+(?:/\d+)?)(?:\*(q(?:\^(\d+))?))?|(q(?:\^(\d+))?))$")

    @classmethod
    def parse(cls, text):
        """Inverse of ``str``: accepts the canonical rendering."""
        s = text.strip()
        if s == "0":
            return cls()
        tokens = re.split(r"\s+([+-])\s+", s)
        terms = [("+", tokens[0])]
        for i in range(1, len(tokens), 2):
            terms.append((tokens[i], tokens[i + 1]))
        acc = cls()
        for sign, body in terms:
            neg = sign == "-"
            if body.startswith("-"):
                neg = not neg
                body = body[1:]
            m = cls._term_re.match(body)
            if not m:
                raise ValueError(f"cannot parse term {body!r} in {text!r}")
            if m.group(4):
                c, k = Fraction(1), int(m.group(5) or 1)
            else:
                c = Fraction(m.group(1))
                k = 0 if m.group(2) is None else int(m.group(3) or 1)
            acc = acc + cls.monomial(k, -c if neg else c)
        return acc


ONE = QPoly._raw([1])
Q = QPoly._raw([0, 1])


def _is_symbolic_value(c):
    return isinstance(c, QPoly)


class TruncSeries:
    """Power series c0 + c1 x + ... + cN x^N + O(x^{N+1}).

    Symbolic series carry QPoly coefficients, numeric ones carry Fractions.
    The two modes never mix.
    """

    __slots__ = ("coeffs", "order", "symbolic")

    def __init__(self, coeffs, order, symbolic=None):
        coeffs = list(coeffs)[: order + 1]
        if symbolic is None:
            symbolic = any(_is_symbolic_value(c) for c in coeffs)
        if symbolic:
            conv = [c if isinstance(c, QPoly) else QPoly._coerce(c) for c in coeffs]
            zero = QPoly()
        else:
            if any(_is_symbolic_value(c) for c in coeffs):
                raise TypeError("QPoly coefficient in a numeric series")
            conv = [Fraction(c) for c in coeffs]
            zero = Fraction(0)
        conv.extend([zero] * (order + 1 - len(conv)))
        self.coeffs = tuple(conv)
        self.order = order
        self.symbolic = symbolic

    @classmethod
    def one(cls, order, symbolic=True):
        return cls([1], order, symbolic)

    @classmethod
    def monomial(cls, k, c, order, symbolic=True):
        return cls([0] * k + [c], order, symbolic)

    @classmethod
    def geometric(cls, c, order, symbolic=None):
        """1/(1 - c x)."""
        if symbolic is None:
            symbolic = isinstance(c, QPoly)
        return cls([c ** k if k else 1 for k in range(order + 1)], order, symbolic)

    def zero_value(self):
        return QPoly() if self.symbolic else Fraction(0)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return self.order + 1

    def _check(self, other):
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")
        if self.symbolic != other.symbolic:
            raise TypeError("mixed symbolic/numeric series arithmetic")

    def _scalar(self, c):
        if isinstance(c, QPoly):
            if not self.symbolic:
                raise TypeError("QPoly scalar on a numeric series")
            return c
        if isinstance(c, (int, Fraction)):
            return QPoly._coerce(c) if self.symbolic else Fraction(c)
        return None

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.order, self.symbolic, self.coeffs) == (other.order, other.symbolic, other.coeffs)

    def __hash__(self):
        return hash((self.order, self.symbolic, self.coeffs))

    def __add__(self, other):
        if isinstance(other, TruncSeries):
            self._check(other)
            return TruncSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order, self.symbolic)
        c = self._scalar(other)
        if c is None:
            return NotImplemented
        return TruncSeries((self.coeffs[0] + c,) + self.coeffs[1:], self.order, self.symbolic)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-a for a in self.coeffs], self.order, self.symbolic)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return series_mul(self, other)
        c = self._scalar(other)
        if c is None:
            return NotImplemented
        return TruncSeries([a * c for a in self.coeffs], self.order, self.symbolic)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return series_mul(self, series_inv(other))
        if isinstance(other, QPoly):
            return TruncSeries([a / other for a in self.coeffs], self.order, self.symbolic)
        return TruncSeries([a / Fraction(other) for a in self.coeffs], self.order, self.symbolic)

    def __pow__(self, e):
        return series_pow(self, e)

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncSeries(self.coeffs[: order + 1], order, self.symbolic)

    def scale_x(self, c):
        """Substitute x -> c*x."""
        out = []
        p = 1
        for a in self.coeffs:
            out.append(a * p)
            p = p * c
        return TruncSeries(out, self.order, self.symbolic)

    def subs_xpow(self, k):
        """Substitute x -> x^k."""
        zero = self.zero_value()
        out = [zero] * (self.order + 1)
        for i in range(0, self.order // k + 1):
            out[i * k] = self.coeffs[i]
        return TruncSeries(out, self.order, self.symbolic)

    def map_coeffs(self, f, symbolic=None):
        return TruncSeries([f(a) for a in self.coeffs], self.order, self.symbolic if symbolic is None else symbolic)

    def at_q(self, value):
        """Specialize a symbolic series at q = value."""
        if not self.symbolic:
            raise TypeError("series is already numeric")
        return TruncSeries([a(value) for a in self.coeffs], self.order, False)

    def compose_q_power(self, d):
        if not self.symbolic:
            raise TypeError("q-substitution needs a symbolic series")
        return TruncSeries([a.compose_power(d) for a in self.coeffs], self.order, True)

    def is_integral(self):
        if self.symbolic:
            return all(a.is_integral() for a in self.coeffs)
        return all(a.denominator == 1 for a in self.coeffs)

    def __str__(self):
        parts = []
        for k, a in enumerate(self.coeffs):
            if a == 0:
                continue
            text = str(a)
            if k == 0:
                parts.append(text)
                continue
            mono = "x" if k == 1 else f"x^{k}"
            if text == "1":
                parts.append(mono)
            elif text == "-1":
                parts.append("-" + mono)
            elif " " in text:
                parts.append(f"({text})*{mono}")
            else:
                parts.append(f"{text}*{mono}")
        parts.append(f"O(x^{self.order + 1})")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"TruncSeries({str(self)!r})"


def series_mul(a, b):
    a._check(b)
    n = a.order
    ac, bc = a.coeffs, b.coeffs
    zero = a.zero_value()
    out = [zero] * (n + 1)
    nz_b = [j for j in range(n + 1) if bc[j] != 0]
    for i in range(n + 1):
        x = ac[i]
        if x == 0:
            continue
        for j in nz_b:
            if i + j > n:
                break
            out[i + j] = out[i + j] + x * bc[j]
    return TruncSeries(out, n, a.symbolic)


def _unit_inverse(c, symbolic):
    if symbolic:
        if not c.is_constant() or c.is_zero():
            raise ZeroDivisionError("constant term is not a unit")
        return QPoly._coerce(1 / c.constant())
    if c == 0:
        raise ZeroDivisionError("constant term is zero")
    return 1 / c


def series_inv(a):
    n = a.order
    c = a.coeffs
    u = _unit_inverse(c[0], a.symbolic)
    out = [u]
    for k in range(1, n + 1):
        acc = a.zero_value()
        for j in range(1, k + 1):
            if c[j] != 0:
                acc = acc + c[j] * out[k - j]
        out.append(-(acc * u))
    return TruncSeries(out, n, a.symbolic)


def series_pow(a, e):
    if not isinstance(e, int):
        raise TypeError("series_pow takes an integer exponent; use series_rpow otherwise")
    if e < 0:
        return series_pow(series_inv(a), -e)
    result = TruncSeries.one(a.order, a.symbolic)
    base = a
    while e:
        if e & 1:
            result = series_mul(result, base)
        e >>= 1
        if e:
            base = series_mul(base, base)
    return result


def series_exp(a):
    if a.coeffs[0] != 0:
        raise ValueError("exp needs a zero constant term")
    n = a.order
    c = a.coeffs
    out = [QPoly._coerce(1) if a.symbolic else Fraction(1)]
    for k in range(1, n + 1):
        acc = a.zero_value()
        for j in range(1, k + 1):
            if c[j] != 0:
                acc = acc + c[j] * out[k - j] * j
        out.append(acc / k)
    return TruncSeries(out, n, a.symbolic)


def series_log(a):
    if a.coeffs[0] != 1:
        raise ValueError("log needs constant term 1")
    n = a.order
    f = a.coeffs
    out = [a.zero_value()]
    for k in range(1, n + 1):
        acc = f[k] * k
        for j in range(1, k):
            if f[k - j] != 0:
                acc = acc - out[j] * f[k - j] * j
        out.append(acc / k)
    return TruncSeries(out, n, a.symbolic)


def series_rpow(a, e):
    """a^e for a rational or QPoly exponent, via exp(e log a); needs a(0) = 1."""
    return series_exp(series_log(a) * e)


@lru_cache(maxsize=None)
def _falling_cached(symbolic, m, ks):
    # symbolic is part of the key: QPoly constants hash like the equal Fraction
    total = sum(ks)
    acc = QPoly._coerce(1) if symbolic else Fraction(1)
    for i in range(total):
        acc = acc * (m - i)
    den = 1
    for k in ks:
        den *= math.factorial(k)
    return acc / den


def _falling_over_factorials(m, ks):
    return _falling_cached(isinstance(m, QPoly), m, ks)


def poly_multinomial(m, ks):
    """Generalized multinomial coefficient binom(m; k1, ..., ks).

    Positive ks give m(m-1)...(m+1-sum k)/prod k!.  Negative ks give
    (-1)^{sum k} times the positive version.  Applied to -m this is exactly
    the clause binom(-m; -k) = binom(m - 1 + sum k; k), so that case needs
    no separate branch.  ``m`` may be a QPoly or a rational.
    """
    ks = tuple(ks)
    if not ks:
        raise ValueError("empty multiplicity list")
    if any(k == 0 for k in ks):
        raise ValueError("multiplicities must be nonzero")
    if isinstance(m, int):
        m = Fraction(m)
    if all(k > 0 for k in ks):
        return _falling_over_factorials(m, tuple(sorted(ks)))
    if all(k < 0 for k in ks):
        pos = tuple(sorted(-k for k in ks))
        val = _falling_over_factorials(m, pos)
        return -val if sum(pos) % 2 else val
    raise ValueError(f"mixed-sign multiplicities {ks}")
