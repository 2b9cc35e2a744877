"""Finite abelian groups, eulerian functions and commuting-tuple counts.

phi_{Z^r}(B) counts epimorphisms Z^r -> B and phi_{Z_p^r}(B) counts
epimorphisms from Z x Z_p^{r-1}.  Both are computed from the invariants of
B and checked against direct tuple counts on small tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..counting import euler_phi, factorint, is_prime
from ..partitions import partitions_of

__all__ = [
    "AbelianGroup",
    "FiniteGroup",
    "abelian_groups_of_order",
    "eulerian_phi_zr",
    "eulerian_phi_zpr",
    "epimorphism_counts",
    "abelian_subgroups",
    "commuting_tuple_count",
    "commuting_tuple_classes",
    "hom_count_check",
    "HomCountReport",
]


@dataclass(frozen=True)
class AbelianGroup:
    invariants: tuple  # d_1 | d_2 | ... | d_t, each >= 2

    def __post_init__(self):
        inv = tuple(int(d) for d in self.invariants)
        object.__setattr__(self, "invariants", inv)
        for d in inv:
            if d < 2:
                raise ValueError("invariant factors must be at least 2")
        for a, b in zip(inv, inv[1:]):
            if b % a:
                raise ValueError(f"invariant factors {inv} do not form a divisibility chain")

    @classmethod
    def from_elementary_divisors(cls, divs):
        """Build from prime powers, e.g. (2, 4, 3) -> C_2 x C_12."""
        by_p = {}
        for d in divs:
            if d == 1:
                continue
            f = factorint(d)
            if len(f) != 1:
                raise ValueError(f"{d} is not a prime power")
            by_p.setdefault(f[0][0], []).append(d)
        t = max((len(v) for v in by_p.values()), default=0)
        inv = [1] * t
        for p, powers in by_p.items():
            powers = sorted(powers)
            for i, d in enumerate(powers):
                inv[t - len(powers) + i] *= d
        return cls(tuple(inv))

    @classmethod
    def cyclic(cls, n):
        return cls((n,) if n > 1 else ())

    @property
    def order(self):
        out = 1
        for d in self.invariants:
            out *= d
        return out

    @property
    def rank(self):
        return len(self.invariants)

    def is_cyclic(self):
        return self.rank <= 1

    def primes(self):
        return sorted({p for d in self.invariants for p, _ in factorint(d)})

    def sylow(self, p):
        """The Sylow p-subgroup as an AbelianGroup."""
        parts = []
        for d in self.invariants:
            e = dict(factorint(d)).get(p, 0)
            if e:
                parts.append(p ** e)
        return AbelianGroup(tuple(parts))

    def p_rank(self, p):
        return self.sylow(p).rank

    def elements(self):
        return list(itertools.product(*[range(d) for d in self.invariants]))

    def to_finite_group(self):
        elems = self.elements()
        index = {e: i for i, e in enumerate(elems)}
        N = len(elems)
        table = np.empty((N, N), dtype=np.int32)
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                table[i, j] = index[tuple((x + y) % d for x, y, d in zip(a, b, self.invariants))]
        return FiniteGroup(table, name=str(self))

    def __str__(self):
        if not self.invariants:
            return "1"
        return " x ".join(f"C{d}" for d in self.invariants)


def abelian_groups_of_order(n):
    """All abelian groups of order n up to isomorphism."""
    choices = []
    for p, e in factorint(n):
        choices.append([[p ** k for k in lam.parts] for lam in partitions_of(e)])
    out = []
    for combo in itertools.product(*choices):
        out.append(AbelianGroup.from_elementary_divisors([d for part in combo for d in part]))
    return out


def _phi_p_group(B, p, r):
    """phi_{Z^r} of an abelian p-group: |B|^r prod_{j<d} (1 - p^{j-r})."""
    d = B.rank
    order = B.order
    # |Phi(B)|^r prod (p^r - p^j), with |Phi(B)| = |B| / p^d
    out = (order // p ** d) ** r
    for j in range(d):
        out *= p ** r - p ** j
    return out


def eulerian_phi_zr(B, r):
    if r < 1:
        raise ValueError("r must be positive")
    if not isinstance(B, AbelianGroup):
        B = AbelianGroup(tuple(B))
    out = 1
    for p in B.primes():
        out *= _phi_p_group(B.sylow(p), p, r)
    return out


def eulerian_phi_zpr(B, r, p):
    if r < 1:
        raise ValueError("r must be positive")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not isinstance(B, AbelianGroup):
        B = AbelianGroup(tuple(B))
    out = 1
    for s in B.primes():
        Bs = B.sylow(s)
        if s == p:
            out *= _phi_p_group(Bs, p, r)
        elif Bs.is_cyclic():
            out *= euler_phi(Bs.order)
        else:
            return 0
    return out


class FiniteGroup:
    """A finite group given by its multiplication table."""

    def __init__(self, table, name=""):
        self.table = np.asarray(table, dtype=np.int32)
        N = self.table.shape[0]
        self.N = N
        rows = np.nonzero((self.table == np.arange(N)[None, :]).all(axis=1))[0]
        if len(rows) != 1:
            raise ValueError("table has no identity")
        self.identity = int(rows[0])
        self.inverse = np.argmax(self.table == self.identity, axis=1)
        self.name = name

    @classmethod
    def cyclic(cls, n):
        a = np.arange(n)
        return cls((a[:, None] + a[None, :]) % n, name=f"C{n}")

    @classmethod
    def from_matrix_group(cls, G):
        if G.table is None:
            raise ValueError("matrix group too large for a table")
        return cls(G.table, name=G.name)

    def __len__(self):
        return self.N

    @cached_property
    def element_orders(self):
        orders = np.zeros(self.N, dtype=np.int64)
        cur = np.arange(self.N)
        k = 1
        while not orders.all():
            orders[(cur == self.identity) & (orders == 0)] = k
            cur = self.table[cur, np.arange(self.N)]
            k += 1
        return orders

    def p_power_mask(self, p):
        return np.array([o == 1 or all(s == p for s, _ in factorint(int(o))) for o in self.element_orders])

    def commute(self, g):
        """Boolean mask of the centralizer of g."""
        return self.table[g, :] == self.table[:, g]

    @cached_property
    def commuting(self):
        return self.table == self.table.T

    def cyclic_subgroup(self, g):
        out = [self.identity]
        x = g
        while x != self.identity:
            out.append(int(x))
            x = self.table[x, g]
        return np.array(out)

    def join_abelian(self, members, g):
        """Subgroup generated by an abelian subgroup and an element centralizing it."""
        S = np.nonzero(members)[0]
        C = self.cyclic_subgroup(g)
        out = np.zeros(self.N, dtype=bool)
        out[self.table[np.ix_(S, C)].ravel()] = True
        return out

    def abelian_invariants(self, members):
        """AbelianGroup type of an abelian subgroup given as a mask."""
        S = np.nonzero(members)[0]
        orders = self.element_orders[S]
        n = len(S)
        divs = []
        for p, e in factorint(n) if n > 1 else ():
            # N_k = #{x : x^{p^k} = 1}; log_p(N_k / N_{k-1}) factors have order >= p^k
            counts = [int(np.sum(np.gcd(orders, p ** k) == orders)) for k in range(e + 1)]
            ranks = [round(np.log(counts[k] / counts[k - 1]) / np.log(p)) for k in range(1, e + 1)]
            for k in range(1, e + 1):
                nxt = ranks[k] if k < e else 0
                divs.extend([p ** k] * (ranks[k - 1] - nxt))
        return AbelianGroup.from_elementary_divisors(divs)


def abelian_subgroups(G):
    """All abelian subgroups of a FiniteGroup, as boolean masks."""
    start = np.zeros(G.N, dtype=bool)
    start[G.identity] = True
    seen = {start.tobytes(): start}
    frontier = [start]
    comm = G.commuting
    while frontier:
        nxt = []
        for A in frontier:
            cent = comm[A].all(axis=0) & ~A
            for g in np.nonzero(cent)[0]:
                B = G.join_abelian(A, int(g))
                key = B.tobytes()
                if key not in seen:
                    seen[key] = B
                    nxt.append(B)
        frontier = nxt
    return list(seen.values())


def epimorphism_counts(G, r, first=None, rest=None):
    """Map from abelian subgroup key to the number of r-tuples generating it.

    Tuples are built one coordinate at a time; the generated subgroup is
    tracked explicitly.  ``first`` and ``rest`` restrict the allowed
    elements of the first and later coordinates (boolean masks).
    """
    first = np.ones(G.N, dtype=bool) if first is None else first
    rest = np.ones(G.N, dtype=bool) if rest is None else rest
    start = np.zeros(G.N, dtype=bool)
    start[G.identity] = True
    ways = {start.tobytes(): (start, 1)}
    join_cache = {}
    comm = G.commuting
    for step in range(r):
        allowed = first if step == 0 else rest
        new = {}
        for key, (A, w) in ways.items():
            cent = comm[A].all(axis=0)
            for g in np.nonzero(allowed)[0]:
                if not cent[g]:
                    continue
                ck = (key, int(g))
                if ck not in join_cache:
                    B = A if A[g] else G.join_abelian(A, int(g))
                    join_cache[ck] = (B.tobytes(), B)
                bk, B = join_cache[ck]
                prev = new.get(bk)
                new[bk] = (B, w + (prev[1] if prev else 0))
        ways = new
    return ways


def commuting_tuple_count(G, r, mask=None):
    """|Hom(Z^r, G)| by centralizer recursion over actual elements.

    With ``mask`` (p-power elements), coordinates after the first are
    restricted, which counts |Hom(Z x Z_p^{r-1}, G)|.
    """
    def rec(k, H, first):
        if k == 0:
            return 1
        total = 0
        for g in np.nonzero(H & (mask if (mask is not None and not first) else True))[0]:
            total += rec(k - 1, H & G.commute(int(g)), False)
        return total

    return rec(r, np.ones(G.N, dtype=bool), True)


def commuting_tuple_classes(G, r, mask=None):
    """Number of G-orbits, under simultaneous conjugation, of commuting r-tuples."""
    tuples = []

    def rec(k, H, prefix):
        if k == 0:
            tuples.append(prefix)
            return
        sel = H if mask is None else H & mask
        for g in np.nonzero(sel)[0]:
            rec(k - 1, H & G.commute(int(g)), prefix + (int(g),))

    rec(r, np.ones(G.N, dtype=bool), ())
    if r == 0:
        return 1
    T = np.array(tuples, dtype=np.int64)
    h = np.arange(G.N)
    hinv = G.inverse
    seen = set()
    classes = 0
    for t in T:
        key = tuple(t)
        if key in seen:
            continue
        classes += 1
        # the orbit of t: rows h t h^{-1}
        conj = np.stack([G.table[G.table[h, x], hinv] for x in t], axis=1)
        for row in map(tuple, conj):
            seen.add(row)
    return classes


@dataclass
class HomCountReport:
    group: str
    r: int
    hom_direct: int
    hom_from_phi: int
    classes_direct: int
    classes_from_hom: int
    p: int | None = None

    @property
    def ok(self):
        return self.hom_direct == self.hom_from_phi and self.classes_direct == self.classes_from_hom

    def __bool__(self):
        return self.ok


def hom_count_check(G, r, p=None):
    """Compare |Hom(Z^r, G)| with the sum of phi over abelian subgroups, and
    |Hom(Z^{r+1}, G)|/|G| with the class count of commuting r-tuples.

    With p given the same checks run for Z x Z_p^{r-1}.
    """
    if not isinstance(G, FiniteGroup):
        G = FiniteGroup.from_matrix_group(G)
    mask = None if p is None else G.p_power_mask(p)
    direct = commuting_tuple_count(G, r, mask)
    phi = 0
    for B in abelian_subgroups(G):
        inv = G.abelian_invariants(B)
        phi += eulerian_phi_zr(inv, r) if p is None else eulerian_phi_zpr(inv, r, p)
    hom_next = commuting_tuple_count(G, r + 1, mask)
    if hom_next % G.N:
        raise ArithmeticError("|Hom| not divisible by |G|")
    if p is None:
        classes = commuting_tuple_classes(G, r)
    else:
        # classes of commuting (r)-tuples of p-power elements match Hom(Z x Z_p^r)/G
        classes = commuting_tuple_classes(G, r, mask)
    return HomCountReport(G.name, r, direct, phi, classes, hom_next // G.N, p)
