"""Partitions, multisets of pairs and the T_S transform.

A partition is kept as increasing (value, multiplicity) pairs.  Following
the multiset language, ``B(lam)`` is the set of distinct parts,
``E(lam, b)`` the multiplicity of b and ``E(lam)`` the partition formed by
the multiplicities.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .exactalg import QPoly, TruncSeries, poly_multinomial, series_exp, series_log

__all__ = [
    "Partition",
    "PairMultiset",
    "partitions_of",
    "pair_multisets",
    "partition_count",
    "class_size",
    "sign_functions",
    "ts_transform",
    "ts_transform_product",
    "t2_eps",
    "t2_eps_closed",
    "t2_eps_partition_sum",
]


@dataclass(frozen=True)
class Partition:
    items: tuple  # ((value, multiplicity), ...) with values increasing
    n: int = field(init=False, compare=False)

    def __post_init__(self):
        prev = 0
        for v, m in self.items:
            if v <= prev or m < 1:
                raise ValueError(f"malformed partition {self.items}")
            prev = v
        object.__setattr__(self, "n", sum(v * m for v, m in self.items))

    @classmethod
    def from_parts(cls, parts):
        counts = defaultdict(int)
        for p in parts:
            counts[p] += 1
        return cls(tuple(sorted(counts.items())))

    @property
    def parts(self):
        """Nonincreasing part sequence [lam]."""
        out = []
        for v, m in reversed(self.items):
            out.extend([v] * m)
        return tuple(out)

    @property
    def length(self):
        return sum(m for _, m in self.items)

    def base(self):
        return tuple(v for v, _ in self.items)

    def mult(self, b):
        for v, m in self.items:
            if v == b:
                return m
        return 0

    def multiplicities(self):
        """E(lam) as a partition of length(lam)."""
        return Partition.from_parts(m for _, m in self.items)

    def __str__(self):
        if not self.items:
            return "{}"
        return "{" + ",".join(f"{v}" if m == 1 else f"{v}^{m}" for v, m in self.items) + "}"


def partitions_of(n):
    """Partitions of n in reverse lexicographic order of their part sequences."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        yield Partition(())
        return

    def rec(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    for parts in rec(n, n):
        yield Partition.from_parts(parts)


_pcount = [1]


def partition_count(n):
    while len(_pcount) <= n:
        k = len(_pcount)
        # Euler's pentagonal recurrence
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > k:
                break
            s = 1 if j % 2 else -1
            total += s * _pcount[k - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= k:
                total += s * _pcount[k - g2]
            j += 1
        _pcount.append(total)
    return _pcount[n]


@dataclass(frozen=True)
class PairMultiset:
    items: tuple  # (((m, d), e), ...) sorted by (m*d, m) decreasing
    n: int

    def __post_init__(self):
        if sum(m * d * e for (m, d), e in self.items) != self.n:
            raise ValueError("weight does not match the pairs")

    def by_d(self):
        """Map d -> list of (m, e) for the pairs with that d."""
        out = defaultdict(list)
        for (m, d), e in self.items:
            out[d].append((m, e))
        return dict(out)

    def __str__(self):
        return "{" + ", ".join(f"({m},{d})" + (f"^{e}" if e > 1 else "") for (m, d), e in self.items) + "}"


def _pairs_by_weight(n):
    out = []
    for w in range(n, 0, -1):
        for m in range(w, 0, -1):
            if w % m == 0:
                out.append((m, w // m))
    return out


def pair_multisets(n):
    """All elements of M_n: multisets of pairs (m, d) with sum of m*d*e = n.

    Pairs are ordered by (m*d, m) decreasing and multisets come out in
    reverse lexicographic order of their sorted pair sequences.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    pairs = _pairs_by_weight(n)

    def rec(idx, remaining):
        if remaining == 0:
            yield ()
            return
        for i in range(idx, len(pairs)):
            m, d = pairs[i]
            w = m * d
            if w > remaining:
                continue
            for e in range(remaining // w, 0, -1):
                for rest in rec(i + 1, remaining - e * w):
                    yield (((m, d), e),) + rest

    for items in rec(0, n):
        yield PairMultiset(items, n)


def class_size(lam):
    """Number of permutations of cycle type lam."""
    if not lam.items:
        raise ValueError("empty partition")
    den = 1
    for b, e in lam.items:
        den *= math.factorial(e) * b ** e
    return math.factorial(lam.n) // den


def sign_functions(lam):
    """All +-1 assignments to the parts of [lam], in binary order."""
    return itertools.product((1, -1), repeat=lam.length)


def _as_callable(seq):
    if callable(seq):
        return seq
    return lambda i: seq[i]


def ts_transform(S, a, N, symbolic=True):
    """The S-transform T_S(a) through x^N, summed over M_n.

    ``S(d)`` gives S_d and ``a(m, d)`` gives the m-th coefficient of the
    transformed series with q replaced by q^d.  Both may be callables or
    indexable objects.
    """
    S = _as_callable(S)
    if not callable(a):
        seq = a
        a = lambda m, d: seq[m]
    s_cache = {}
    a_cache = {}

    def s_of(d):
        if d not in s_cache:
            s_cache[d] = S(d)
        return s_cache[d]

    def a_of(m, d):
        if (m, d) not in a_cache:
            a_cache[(m, d)] = a(m, d)
        return a_cache[(m, d)]

    one = QPoly([1]) if symbolic else Fraction(1)
    coeffs = [one]
    for n in range(1, N + 1):
        acc = QPoly() if symbolic else Fraction(0)
        for mu in pair_multisets(n):
            term = one
            for d, group in mu.by_d().items():
                sd = s_of(d)
                if sd == 0:
                    term = None
                    break
                term = term * poly_multinomial(sd, [e for _, e in group])
                for m, e in group:
                    am = a_of(m, d)
                    if am == 0:
                        term = None
                        break
                    term = term * am ** e
                if term is None:
                    break
            if term is not None:
                acc = acc + term
        coeffs.append(acc)
    return TruncSeries(coeffs, N, symbolic)


def ts_transform_product(S, A, N):
    """Reference form prod_d A(q^d, x^d)^{S_d} of the transform.

    ``A`` is a symbolic TruncSeries with constant term 1.
    """
    S = _as_callable(S)
    log_a = series_log(A)
    total = TruncSeries([0], N, True)
    for d in range(1, N + 1):
        sd = S(d)
        if sd == 0:
            continue
        total = total + log_a.compose_q_power(d).subs_xpow(d) * sd
    return series_exp(total)


def t2_eps_partition_sum(m, n, eps):
    acc = QPoly() if isinstance(m, QPoly) else Fraction(0)
    for lam in partitions_of(n):
        acc = acc + poly_multinomial(m, [e for _, e in lam.items]) * 2 ** lam.length
    return acc * eps ** n


def t2_eps_closed(m, n, eps):
    """Sum over i of 2^i binom(n-1; eps(n-i)) binom(m; eps*i)."""
    acc = QPoly() if isinstance(m, QPoly) else Fraction(0)
    for i in range(1, n + 1):
        left = math.comb(n - 1, n - i) if eps > 0 or n == i else poly_multinomial(Fraction(n - 1), [-(n - i)])
        acc = acc + poly_multinomial(m, [eps * i]) * left * 2 ** i
    return acc


def t2_eps(m, n, eps):
    if n < 1:
        raise ValueError("n must be positive")
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    a = t2_eps_partition_sum(m, n, eps)
    b = t2_eps_closed(m, n, eps)
    if a != b:
        raise ArithmeticError(f"T2 forms disagree at n={n}: {a} vs {b}")
    return a
