"""Posets of totally isotropic subspaces and reduced Euler characteristics.

A subspace is identified with the set of projective points it contains;
``member[s, i]`` records whether point i lies in subspace s.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import kernels
from .fields import build_field
from .matrices import all_vectors, form_values

__all__ = [
    "Poset",
    "Subspace",
    "IsotropicPoset",
    "isotropic_poset",
    "rref",
    "reduced_euler_char",
    "reduced_euler_char_chains",
]


def rref(rows, F):
    """Reduced row-echelon form of a list of vectors, zero rows dropped."""
    M = [list(map(int, r)) for r in rows]
    out = []
    col = 0
    width = len(M[0]) if M else 0
    r = 0
    while r < len(M) and col < width:
        piv = next((i for i in range(r, len(M)) if M[i][col]), None)
        if piv is None:
            col += 1
            continue
        M[r], M[piv] = M[piv], M[r]
        s = int(F.inv[M[r][col]])
        M[r] = [int(F.mul[s, c]) for c in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col]:
                t = M[i][col]
                M[i] = [int(F.add[a, F.neg[F.mul[t, b]]]) for a, b in zip(M[i], M[r])]
        r += 1
        col += 1
    for row in M[:r]:
        out.append(tuple(row))
    return tuple(out)


@dataclass(frozen=True)
class Subspace:
    basis: tuple  # rows of the reduced row-echelon form

    @property
    def dim(self):
        return len(self.basis)

    def __str__(self):
        return "<" + ", ".join("".join(map(str, r)) for r in self.basis) + ">"


class Poset:
    """Finite poset given by its strict order matrix ``less[x, y]`` (x < y)."""

    def __init__(self, less, labels=None):
        self.less = np.asarray(less, dtype=bool)
        self.size = self.less.shape[0]
        self.labels = labels if labels is not None else list(range(self.size))
        # a linear extension: number of elements below
        self.height = self.less.sum(axis=0)
        self.topo = np.argsort(self.height, kind="stable")

    def __len__(self):
        return self.size

    def relations(self):
        return int(self.less.sum())

    def covers(self):
        """Count of covering pairs x < y with nothing strictly between."""
        L = self.less.astype(np.int64)
        between = (L @ L) > 0
        return int((self.less & ~between).sum())

    def chain_lengths(self):
        """Maximum number of elements in a chain."""
        best = np.ones(self.size, dtype=np.int64)
        for y in self.topo:
            below = np.nonzero(self.less[:, y])[0]
            if len(below):
                best[y] = 1 + best[below].max()
        return int(best.max()) if self.size else 0


class IsotropicPoset(Poset):
    """Nonzero totally isotropic subspaces of F_q^{2n} ordered by inclusion."""

    def __init__(self, n, F, subspaces, member, points, vec_index):
        self.n = n
        self.F = F
        self.subspaces = subspaces
        self.member = member
        self.points = points
        self.vec_index = vec_index
        self.dims = np.array([s.dim for s in subspaces], dtype=np.int64)
        counts = member.sum(axis=1)
        M = member.astype(np.int64)
        inter = M @ M.T
        less = (inter == counts[:, None]) & (counts[:, None] < counts[None, :])
        super().__init__(less, subspaces)

    def count_by_dim(self):
        return {int(k): int((self.dims == k).sum()) for k in np.unique(self.dims)}

    def point_perms(self, G, idx=None):
        """Point permutations induced by v -> v g for elements of the group."""
        E = G.elems if idx is None else G.elems[idx]
        return kernels.point_images(E, self.points, self.F.add, self.F.mul, self.vec_index, self.F.q)

    def fixed_masks(self, G, idx=None, chunk=20000):
        """fixed[k, s] = True when element k maps subspace s onto itself."""
        N = len(G) if idx is None else len(idx)
        out = np.empty((N, self.size), dtype=bool)
        member = np.ascontiguousarray(self.member, dtype=np.uint8)
        for lo in range(0, N, chunk):
            sel = np.arange(lo, min(N, lo + chunk)) if idx is None else np.asarray(idx)[lo:lo + chunk]
            perms = self.point_perms(G, sel)
            out[lo:lo + len(sel)] = kernels.fixed_subspaces(perms, member).astype(bool)
        return out


def _span_points(basis, F, vec_index):
    k = len(basis)
    B = np.array(basis, dtype=np.uint8)
    coeffs = all_vectors(k, F.q)[1:]
    acc = np.zeros((len(coeffs), B.shape[1]), dtype=np.uint8)
    for i in range(k):
        acc = F.add[acc, F.mul[coeffs[:, i][:, None], B[i][None, :]]]
    return np.unique(vec_index[kernels.vec_codes(acc, F.q)])


def isotropic_poset(n, F):
    if isinstance(F, int):
        F = build_field(F)
    q = F.q
    d = 2 * n
    V = all_vectors(d, q)
    codes = np.arange(q ** d)
    # a point is represented by its vector whose first nonzero entry is 1
    nz = V != 0
    first = np.where(nz.any(axis=1), nz.argmax(axis=1), -1)
    lead = V[np.arange(len(V)), np.maximum(first, 0)]
    is_rep = (first >= 0) & (lead == 1)
    points = V[is_rep]
    point_codes = codes[is_rep]
    vec_index = np.full(q ** d, -1, dtype=np.int32)
    vec_index[point_codes] = np.arange(len(points), dtype=np.int32)
    # every nonzero vector maps to the point it spans
    for c in range(2, q):
        scaled = F.mul[c, points]
        vec_index[kernels.vec_codes(scaled, q)] = np.arange(len(points), dtype=np.int32)
    P = len(points)
    perp = np.zeros((P, P), dtype=bool)
    for i in range(P):
        perp[i] = form_values(points, points[i], F) == 0

    level = {}
    for i in range(P):
        mask = np.zeros(P, dtype=bool)
        mask[i] = True
        level[mask.tobytes()] = (Subspace(rref([points[i]], F)), mask)
    layers = [level]
    for _ in range(1, n):
        nxt = {}
        for sub, mask in layers[-1].values():
            orth = perp[mask].all(axis=0) & ~mask
            for v in np.nonzero(orth)[0]:
                basis = list(sub.basis) + [tuple(points[v])]
                pts = _span_points(basis, F, vec_index)
                m = np.zeros(P, dtype=bool)
                m[pts] = True
                key = m.tobytes()
                if key not in nxt:
                    nxt[key] = (Subspace(rref(basis, F)), m)
        layers.append(nxt)
    subspaces = []
    masks = []
    for layer in layers:
        for key in sorted(layer):
            sub, m = layer[key]
            # total isotropy of the spanned subspace
            if not perp[np.ix_(m, m)].all():
                raise ArithmeticError("non-isotropic subspace generated")
            subspaces.append(sub)
            masks.append(m)
    member = np.array(masks, dtype=bool)
    return IsotropicPoset(n, F, subspaces, member, points, vec_index)


def _restrict(poset, mask):
    if mask is None:
        return np.arange(poset.size)
    mask = np.asarray(mask, dtype=bool)
    return poset.topo[mask[poset.topo]]


def reduced_euler_char(poset, mask=None):
    """Reduced Euler characteristic of the order complex of the (sub)poset.

    Uses f(x) = 1 - sum_{y < x} f(y), so that chi = -1 + sum_x f(x); the sum
    is the alternating chain count grouped by top element.
    """
    order = _restrict(poset, mask)
    if len(order) == 0:
        return -1
    sub = poset.less[np.ix_(order, order)]
    f = np.zeros(len(order), dtype=object)
    for k in range(len(order)):
        below = np.nonzero(sub[:k, k])[0]
        f[k] = 1 - sum(f[below]) if len(below) else 1
    return int(-1 + sum(f))


def reduced_euler_char_chains(poset, mask=None):
    """Same value by explicit enumeration of all chains."""
    order = _restrict(poset, mask)
    sub = poset.less[np.ix_(order, order)]
    above = [np.nonzero(sub[k])[0] for k in range(len(order))]
    total = -1

    def walk(k, length):
        nonlocal total
        total += 1 if length % 2 else -1
        for nxt in above[k]:
            walk(nxt, length + 1)

    for k in range(len(order)):
        walk(k, 1)
    return total
