"""Brute-force equivariant reduced Euler characteristics of symplectic buildings.

chi_r(P, H) is the average over commuting r-tuples X in H of the reduced
Euler characteristic of the subposet fixed by X.  It is evaluated by the
class recursion chi_r(P, H) = sum over classes [g] of H of
chi_{r-1}(P^g, C_H(g)), and independently by summing over commuting pairs.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from ..counting import factorint, prime_power
from .fields import build_field
from .matrices import symplectic_group, symplectic_order, SIZE_CAP
from .poset import isotropic_poset, reduced_euler_char

__all__ = [
    "SymplecticSetup",
    "setup",
    "chi_r_bruteforce",
    "chi_r_p_bruteforce",
    "chi_r_direct",
    "supported_sizes",
    "UnsupportedSize",
]

R_LIMITS = {(1, 2): 3, (1, 3): 3, (1, 4): 3, (1, 5): 3, (1, 7): 3, (2, 2): 3, (2, 3): 2}


class UnsupportedSize(ValueError):
    pass


def supported_sizes():
    return dict(R_LIMITS)


def _threads():
    try:
        return max(1, int(os.environ.get("SYMPLECTIC_EULER_THREADS", "1")))
    except ValueError:
        return 1


class SymplecticSetup:
    """Sp(2n, q), its building and the fixed-subspace table of every element."""

    def __init__(self, n, q):
        pp = prime_power(q) if isinstance(q, int) else None
        if pp is None:
            raise UnsupportedSize(f"{q!r} is not a prime power")
        if n < 1 or (n, q) not in R_LIMITS:
            raise UnsupportedSize(f"Sp({2 * n},{q}) is outside the oracle sizes")
        self.n, self.q = n, q
        self.char = pp[0]
        self.F = build_field(q)
        self.G = symplectic_group(n, self.F)
        self.poset = isotropic_poset(n, self.F)
        self.fixed = self.poset.fixed_masks(self.G)
        self._chi = {}
        self._memo = {}

    def chi(self, mask):
        key = mask.tobytes()
        v = self._chi.get(key)
        if v is None:
            v = reduced_euler_char(self.poset, mask)
            self._chi[key] = v
        return v

    def chi_many(self, masks):
        """Sum of chi over rows of a boolean mask array."""
        if len(masks) == 0:
            return 0
        packed = np.packbits(masks, axis=1)
        uniq, counts = np.unique(packed, axis=0, return_counts=True)
        total = 0
        S = masks.shape[1]
        for row, c in zip(uniq, counts):
            total += int(c) * self.chi(np.unpackbits(row)[:S].astype(bool))
        return total

    def p_power(self, p):
        orders = self.G.element_orders
        ok = np.ones(len(orders), dtype=bool)
        for k, o in enumerate(orders):
            ok[k] = all(pr == p for pr, _ in factorint(int(o))) if o > 1 else True
        return ok


_setups = {}


def setup(n, q):
    key = (n, q)
    if key not in _setups:
        _setups[key] = SymplecticSetup(n, q)
    return _setups[key]


def _recurse(S, r, mask, H, allowed, tag=0):
    """chi_r(P restricted to mask, H) as a Fraction; allowed filters the summed classes.

    ``tag`` names the class filter in the memo key (the prime, or 0 for none).
    """
    key = (r, mask.tobytes(), H.tobytes(), tag)
    if key in S._memo:
        return S._memo[key]
    if r == 1:
        val = Fraction(S.chi_many(S.fixed[H] & mask), len(H))
    else:
        val = Fraction(0)
        for g, _cls, cent in S.G.classes(H):
            if allowed is not None and not allowed[g]:
                continue
            val += _recurse(S, r - 1, mask & S.fixed[g], cent, allowed, tag)
    S._memo[key] = val
    return val


def _check_r(S, r):
    if not isinstance(r, int) or r < 1:
        raise ValueError("r must be a positive integer")
    if r > R_LIMITS[(S.n, S.q)]:
        raise UnsupportedSize(f"r={r} is beyond the oracle limit for Sp({2 * S.n},{S.q})")


def _as_int(val):
    if val.denominator != 1:
        raise ArithmeticError(f"non-integral equivariant Euler characteristic {val}")
    return int(val)


def chi_r_bruteforce(n, q, r, threads=None):
    """The equivariant reduced Euler characteristic chi_r of the building of Sp(2n, q)."""
    S = setup(n, q)
    _check_r(S, r)
    full = np.ones(S.poset.size, dtype=bool)
    H = np.arange(len(S.G))
    if r == 1:
        return _as_int(_recurse(S, 1, full, H, None))
    threads = threads or _threads()
    classes = S.G.classes()
    if threads == 1:
        parts = [_recurse(S, r - 1, full & S.fixed[g], cent, None) for g, _c, cent in classes]
    else:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(lambda t: _recurse(S, r - 1, full & S.fixed[t[0]], t[2], None), classes))
    return _as_int(sum(parts, Fraction(0)))


def chi_r_p_bruteforce(n, q, r, p):
    """p-primary variant: classes beyond the innermost average have p-power order."""
    pp = prime_power(q) if isinstance(q, int) else None
    if pp is None:
        raise UnsupportedSize(f"{q!r} is not a prime power")
    if pp[0] == p:
        # the building has no fixed points under p-elements...
        # and the whole sum collapses to zero for every r
        S = setup(n, q)
        _check_r(S, r)
        return 0
    S = setup(n, q)
    _check_r(S, r)
    full = np.ones(S.poset.size, dtype=bool)
    H = np.arange(len(S.G))
    allowed = S.p_power(p)
    return _as_int(_recurse(S, r, full, H, allowed, p))


def chi_r_direct(n, q, r):
    """Average of chi over all commuting r-tuples, r <= 2, summed pair by pair.

    Quadratic in the group order; practical only when the group has a Cayley table.
    """
    S = setup(n, q)
    _check_r(S, r)
    G = S.G
    N = len(G)
    if r == 1:
        return _as_int(Fraction(S.chi_many(S.fixed), N))
    if r != 2:
        raise UnsupportedSize("the direct sum is implemented for r <= 2")
    total = 0
    for g in range(N):
        cent = G.commutes_with(np.arange(N), g)
        total += S.chi_many(S.fixed[cent] & S.fixed[g])
    return _as_int(Fraction(total, N))
