"""Characteristic polynomials and centralizers of semisimple symplectic elements."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .fields import build_field
from .matrices import charpoly_rows, symplectic_group, symplectic_order
from .polys import PolyCatalogue, _monic_rows, canonical_factorization, poly_str

__all__ = [
    "CharpolyReport",
    "charpoly_selfreciprocal_check",
    "self_reciprocal_count",
    "gl_order",
    "gu_order",
    "predicted_centralizer_order",
    "centralizer_spot_check",
    "class_records",
    "dump_classes_jsonl",
]


def gl_order(m, Q):
    out = Q ** (m * (m - 1) // 2)
    for i in range(1, m + 1):
        out *= Q ** i - 1
    return out


def gu_order(m, Q):
    out = Q ** (m * (m - 1) // 2)
    for i in range(1, m + 1):
        out *= Q ** i - (-1) ** i
    return out


def self_reciprocal_count(F, degree):
    """Number of palindromic monic polynomials of the given degree."""
    if isinstance(F, int):
        F = build_field(F)
    rows = _monic_rows(degree, F.q, nonzero_constant=False)
    return int(np.all(rows == rows[:, ::-1], axis=1).sum())


@dataclass
class CharpolyReport:
    n: int
    q: int
    elements: int
    all_self_reciprocal: bool
    semisimple_charpolys: int
    expected: int

    @property
    def ok(self):
        return self.all_self_reciprocal and self.semisimple_charpolys == self.expected

    def __bool__(self):
        return self.ok


def _semisimple_mask(G, char):
    return G.element_orders % char != 0


def charpoly_selfreciprocal_check(n, F, G=None):
    if isinstance(F, int):
        F = build_field(F)
    G = G if G is not None else symplectic_group(n, F)
    rows = charpoly_rows(G.elems, F)
    palin = bool(np.all(rows == rows[:, ::-1]))
    semi = _semisimple_mask(G, F.p)
    distinct = len({r.tobytes() for r in rows[semi]})
    return CharpolyReport(n, F.q, len(G), palin, distinct, F.q ** n)


def predicted_centralizer_order(charpoly, cat):
    """|C(g)| from the canonical factorization of the characteristic polynomial."""
    q = cat.q
    fac = canonical_factorization(charpoly, cat)
    out = 1
    for a in (fac.a_minus, fac.a_plus):
        if a % 2:
            raise ValueError("odd multiplicity of x - 1 or x + 1")
        out *= symplectic_order(a // 2, q) if a else 1
    for f, m in fac.self_reciprocal:
        deg = len(f) - 1
        out *= gu_order(m, q ** (deg // 2))
    for (s, _), m in fac.pairs:
        out *= gl_order(m, q ** (len(s) - 1))
    return out


def centralizer_spot_check(n, q, samples=5, G=None):
    """Compare |C(g)| for a few semisimple class representatives with the predicted order.

    Returns a list of (representative index, charpoly, actual, predicted).
    Representatives are spread over the semisimple classes in index order.
    """
    F = build_field(q)
    G = G if G is not None else symplectic_group(n, F)
    cat = PolyCatalogue(F, 2 * n)
    semi = _semisimple_mask(G, F.p)
    reps = [(g, len(cls), cent) for g, cls, cent in G.classes() if semi[g]]
    step = max(1, len(reps) // samples)
    out = []
    for g, size, cent in reps[::step][:samples]:
        cp = tuple(int(c) for c in charpoly_rows(G.elems[g][None], F)[0])
        out.append((int(g), cp, len(G) // size, predicted_centralizer_order(list(cp), cat)))
    return out


def class_records(G):
    F = G.F
    orders = G.element_orders
    for g, cls, cent in G.classes():
        cp = charpoly_rows(G.elems[g][None], F)[0]
        yield {
            "group": G.name,
            "representative": G.elems[g].tolist(),
            "class_size": int(len(cls)),
            "centralizer_order": int(len(cent)),
            "element_order": int(orders[g]),
            "charpoly": poly_str(cp),
        }


def dump_classes_jsonl(G, stream):
    n = 0
    for rec in class_records(G):
        stream.write(json.dumps(rec, sort_keys=True) + "\n")
        n += 1
    return n
