"""Matrices over small fields and the symplectic groups Sp(2n, q).

Groups are held as a sorted stack of matrices (an (N, d, d) uint8 array)
so that membership, products and conjugation reduce to table lookups and
binary searches on integer codes.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from functools import cached_property

import numpy as np

from .. import kernels
from .fields import FiniteField, build_field

__all__ = [
    "FqMatrix",
    "MatrixGroup",
    "symplectic_form",
    "symplectic_group",
    "symplectic_order",
    "form_values",
    "all_vectors",
    "charpoly_rows",
    "SIZE_CAP",
    "TABLE_CAP",
]

SIZE_CAP = 10 ** 6
TABLE_CAP = 2500


def symplectic_order(n, q):
    out = q ** (n * n)
    for i in range(1, n + 1):
        out *= q ** (2 * i) - 1
    return out


def symplectic_form(n, F):
    """J = [[0, I], [-I, 0]] in the basis e_1..e_n, f_1..f_n."""
    d = 2 * n
    J = np.zeros((d, d), dtype=np.uint8)
    for i in range(n):
        J[i, n + i] = 1
        J[n + i, i] = F.neg[1]
    return J


def all_vectors(d, q):
    """All q^d row vectors, row k having base-q code k (MSB first)."""
    idx = np.arange(q ** d, dtype=np.int64)
    out = np.empty((q ** d, d), dtype=np.uint8)
    for j in range(d - 1, -1, -1):
        out[:, j] = idx % q
        idx //= q
    return out


def form_values(V, u, F):
    """<v, u> = v J u^T for every row v of V."""
    n = V.shape[1] // 2
    acc = np.zeros(len(V), dtype=np.uint8)
    for i in range(n):
        acc = F.add[acc, F.mul[V[:, i], u[n + i]]]
        acc = F.add[acc, F.neg[F.mul[V[:, n + i], u[i]]]]
    return acc


def _matmul(a, b, F):
    return kernels.batch_matmul(a[None], b, F.add, F.mul)[0]


class FqMatrix:
    """A square matrix over a FiniteField."""

    __slots__ = ("F", "a")

    def __init__(self, F, a):
        self.F = F
        self.a = np.asarray(a, dtype=np.uint8)
        if self.a.ndim != 2 or self.a.shape[0] != self.a.shape[1]:
            raise ValueError("expected a square matrix")

    @property
    def dim(self):
        return self.a.shape[0]

    def __matmul__(self, other):
        return FqMatrix(self.F, _matmul(self.a, other.a, self.F))

    @property
    def T(self):
        return FqMatrix(self.F, self.a.T.copy())

    def __eq__(self, other):
        return isinstance(other, FqMatrix) and other.F is self.F and np.array_equal(self.a, other.a)

    def __hash__(self):
        return hash(self.a.tobytes())

    def code(self):
        return int(kernels.vec_codes(self.a.reshape(1, -1), self.F.q)[0])

    def is_symplectic(self):
        n = self.dim // 2
        J = symplectic_form(n, self.F)
        return np.array_equal(_matmul(_matmul(self.a, J, self.F), self.a.T.copy(), self.F), J)

    def charpoly(self):
        """Coefficients of det(xI - g), ascending."""
        return tuple(int(c) for c in charpoly_rows(self.a[None], self.F)[0])

    def __repr__(self):
        return f"FqMatrix({self.a.tolist()}, q={self.F.q})"


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def charpoly_rows(E, F):
    """Characteristic polynomials of a stack of matrices, shape (N, d+1), ascending.

    The coefficient of x^{d-k} is (-1)^k times the sum of the principal
    k x k minors, each minor expanded by the Leibniz formula.
    """
    E = np.asarray(E, dtype=np.uint8)
    N, d, _ = E.shape
    out = np.zeros((N, d + 1), dtype=np.uint8)
    out[:, d] = 1
    for k in range(1, d + 1):
        ek = np.zeros(N, dtype=np.uint8)
        perms = [(p, _perm_sign(p)) for p in itertools.permutations(range(k))]
        for rows in itertools.combinations(range(d), k):
            for perm, sgn in perms:
                term = np.ones(N, dtype=np.uint8)
                for i, j in enumerate(perm):
                    term = F.mul[term, E[:, rows[i], rows[j]]]
                ek = F.add[ek, term if sgn > 0 else F.neg[term]]
        out[:, d - k] = ek if k % 2 == 0 else F.neg[ek]
    return out


class MatrixGroup(Sequence):
    """A finite matrix group stored as a sorted stack of matrices."""

    def __init__(self, F: FiniteField, elems, name=""):
        self.F = F
        elems = np.ascontiguousarray(elems, dtype=np.uint8)
        codes = kernels.vec_codes(elems.reshape(len(elems), -1), F.q)
        order = np.argsort(codes, kind="stable")
        self.elems = elems[order]
        self.codes = codes[order]
        if len(self.codes) > 1 and np.any(self.codes[1:] == self.codes[:-1]):
            raise ValueError("repeated group elements")
        self.d = elems.shape[1]
        self.name = name

    def __len__(self):
        return len(self.elems)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [FqMatrix(self.F, a) for a in self.elems[i]]
        return FqMatrix(self.F, self.elems[i])

    @property
    def order(self):
        return len(self.elems)

    def index_of(self, mats):
        """Indices of a stack of matrices (all must lie in the group)."""
        mats = np.asarray(mats, dtype=np.uint8)
        c = kernels.vec_codes(mats.reshape(len(mats), -1), self.F.q)
        idx = np.searchsorted(self.codes, c)
        idx = np.minimum(idx, len(self.codes) - 1)
        if not np.array_equal(self.codes[idx], c):
            raise ValueError("matrix not in the group")
        return idx

    @cached_property
    def identity(self):
        return int(self.index_of(np.eye(self.d, dtype=np.uint8)[None])[0])

    def products(self, i, j):
        """Indices of elems[i] @ elems[j], elementwise over arrays (or broadcast scalars)."""
        i, j = np.broadcast_arrays(np.asarray(i), np.asarray(j))
        if self.table is not None:
            return self.table[i, j]
        C = kernels.batch_matmul(self.elems[i.ravel()], self.elems[j.ravel()], self.F.add, self.F.mul)
        return self.index_of(C).reshape(i.shape)

    @cached_property
    def inverse(self):
        """inverse[i] = index of the inverse of element i."""
        n = self.d // 2
        J = symplectic_form(n, self.F) if self.name.startswith("Sp") else None
        if J is not None:
            # g^{-1} = J^{-1} g^T J, with J^{-1} = -J
            Jinv = self.F.neg[J]
            gt = np.ascontiguousarray(np.transpose(self.elems, (0, 2, 1)))
            left = kernels.batch_matmul(np.broadcast_to(Jinv, gt.shape), gt, self.F.add, self.F.mul)
            return self.index_of(kernels.batch_matmul(left, J, self.F.add, self.F.mul))
        if self.table is not None:
            return np.argmax(self.table == self.identity, axis=1)
        raise NotImplementedError("inverse needs a table or a symplectic group")

    @cached_property
    def table(self):
        """Cayley table table[i, j] = index of g_i g_j, built when the group is small."""
        N = len(self.elems)
        if N > TABLE_CAP:
            return None
        A = np.repeat(self.elems, N, axis=0)
        B = np.tile(self.elems, (N, 1, 1))
        C = kernels.batch_matmul(A, B, self.F.add, self.F.mul)
        c = kernels.vec_codes(C.reshape(N * N, -1), self.F.q)
        idx = np.searchsorted(self.codes, c)
        if not np.array_equal(self.codes[np.minimum(idx, N - 1)], c):
            raise ValueError("set of matrices is not closed under products")
        return idx.reshape(N, N).astype(np.int32)

    def conjugates(self, H, g):
        """Indices of h g h^{-1} for h in the index array H."""
        H = np.asarray(H)
        inv = self.inverse
        if self.table is not None:
            return self.table[self.table[H, g], inv[H]]
        F = self.F
        hg = kernels.batch_matmul(self.elems[H], self.elems[g], F.add, F.mul)
        return self.index_of(kernels.batch_matmul(hg, self.elems[inv[H]], F.add, F.mul))

    def commutes_with(self, H, g):
        H = np.asarray(H)
        return H[self.conjugates(H, g) == g]

    @cached_property
    def element_orders(self):
        N = len(self.elems)
        orders = np.zeros(N, dtype=np.int64)
        cur = np.arange(N)
        k = 1
        e = self.identity
        while True:
            hit = (cur == e) & (orders == 0)
            orders[hit] = k
            if orders.all():
                return orders
            cur = self.products(cur, np.arange(N))
            k += 1

    def classes(self, H=None):
        """Conjugacy classes of the subgroup H (index array, default the whole group).

        Returns (representative, class, centralizer) triples; the representative
        is the least element of its class.
        """
        H = np.arange(len(self.elems)) if H is None else np.sort(np.asarray(H))
        pos = {int(h): i for i, h in enumerate(H)}
        seen = np.zeros(len(H), dtype=bool)
        out = []
        for i, g in enumerate(H):
            if seen[i]:
                continue
            g = int(g)
            conj = self.conjugates(H, g)
            cls = np.unique(conj)
            for c in cls:
                seen[pos[int(c)]] = True
            out.append((g, cls, H[conj == g]))
        return out


def symplectic_group(n, F, cap=SIZE_CAP):
    """Sp(2n, q) by completing symplectic bases row by row.

    Row i is the image of e_{i+1} and row n+i the image of f_{i+1}; the
    pairs are chosen in the order (e_1, f_1), (e_2, f_2), ... inside the
    orthogonal complement of the pairs already chosen.
    """
    if isinstance(F, int):
        F = build_field(F)
    q = F.q
    size = symplectic_order(n, q)
    if n < 1:
        raise ValueError("n must be positive")
    if size > cap:
        raise ValueError(f"|Sp({2 * n},{q})| = {size} exceeds the cap {cap}")
    d = 2 * n
    V = all_vectors(d, q)
    forms = {}

    def form_with(k):
        if k not in forms:
            forms[k] = form_values(V, V[k], F)
        return forms[k]

    out = []

    def rec(level, chosen_e, chosen_f, allowed):
        for e in np.nonzero(allowed)[0]:
            if e == 0:
                continue
            fe = form_with(e)
            fs = np.nonzero(allowed & (fe == F.neg[1]))[0]  # <e, f> = 1
            if level == n - 1:
                block = np.zeros((len(fs), d, d), dtype=np.uint8)
                for i, (ce, cf) in enumerate(zip(chosen_e, chosen_f)):
                    block[:, i] = V[ce]
                    block[:, n + i] = V[cf]
                block[:, level] = V[e]
                block[:, n + level] = V[fs]
                out.append(block)
                continue
            for f in fs:
                nxt = allowed & (fe == 0) & (form_with(f) == 0)
                rec(level + 1, chosen_e + [e], chosen_f + [f], nxt)

    rec(0, [], [], np.ones(len(V), dtype=bool))
    elems = np.concatenate(out)
    if len(elems) != size:
        raise ArithmeticError(f"enumerated {len(elems)} elements, expected {size}")
    G = MatrixGroup(F, elems, name=f"Sp({d},{q})")
    J = symplectic_form(n, F)
    gJ = kernels.batch_matmul(G.elems, J, F.add, F.mul)
    gt = np.ascontiguousarray(np.transpose(G.elems, (0, 2, 1)))
    check = kernels.batch_matmul(gJ, gt, F.add, F.mul)
    if not np.all(check == J):
        raise ArithmeticError("basis completion produced a non-symplectic matrix")
    G.n = n
    return G
