"""Reference implementations of the hot kernels (numpy and plain Python).

Field elements are small ints with arithmetic given by lookup tables:
``add`` and ``mul`` are (q, q) uint8 arrays, ``neg`` and ``inv`` are (q,)
arrays (``inv[0]`` is unused).  Polynomials are uint8 rows of coefficients
in ascending degree.
"""

import numpy as np

BACKEND = "python"


def batch_matmul(A, B, add, mul):
    """C[k] = A[k] @ B[k] over the field; B may be a single (d, d) matrix."""
    A = np.ascontiguousarray(A, dtype=np.uint8)
    B = np.ascontiguousarray(B, dtype=np.uint8)
    if B.ndim == 2:
        B = np.broadcast_to(B, A.shape)
    k, d, _ = A.shape
    C = np.zeros((k, d, d), dtype=np.uint8)
    for t in range(d):
        # outer products of column t of A with row t of B
        C = add[C, mul[A[:, :, t][:, :, None], B[:, t, :][:, None, :]]]
    return C


def vec_codes(V, q):
    """Base-q codes of the rows of V, most significant entry first."""
    V = np.asarray(V, dtype=np.int64)
    w = q ** np.arange(V.shape[-1] - 1, -1, -1, dtype=np.int64)
    return V @ w


def point_images(G, pts, add, mul, vec_index, q):
    """perm[k, i] = index of the point spanned by pts[i] @ G[k]."""
    G = np.ascontiguousarray(G, dtype=np.uint8)
    k, d, _ = G.shape
    P = len(pts)
    out = np.empty((k, P), dtype=np.int32)
    for i in range(P):
        acc = np.zeros((k, d), dtype=np.uint8)
        for j in range(d):
            c = pts[i][j]
            if c:
                acc = add[acc, mul[c, G[:, j, :]]]
        out[:, i] = vec_index[vec_codes(acc, q)]
    return out


def fixed_subspaces(perms, member):
    """fixed[k, s] = 1 when the point permutation perms[k] maps subspace s onto itself."""
    perms = np.asarray(perms)
    member = np.asarray(member, dtype=bool)
    k = perms.shape[0]
    S = member.shape[0]
    out = np.empty((k, S), dtype=np.uint8)
    notm = ~member
    chunk = max(1, 2_000_000 // max(1, S * member.shape[1]))
    for lo in range(0, k, chunk):
        pk = perms[lo:lo + chunk]
        img = member[:, pk]  # (S, c, P): is the image of point i in s?
        ok = img | notm[:, None, :]
        out[lo:lo + chunk] = ok.all(axis=2).T
    return out


# polynomial arithmetic over F_q with tables

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _mulmod(a, b, f, add, mul, neg):
    n = len(f) - 1
    c = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    c[i + j] = add[c[i + j]][mul[x][y]]
    for k in range(len(c) - 1, n - 1, -1):
        t = c[k]
        if t:
            for j in range(n):
                c[k - n + j] = add[c[k - n + j]][neg[mul[t][f[j]]]]
            c[k] = 0
    return _trim(c[:n] if len(c) > n else c)


def _powmod(base, e, f, add, mul, neg):
    result = [1]
    while e:
        if e & 1:
            result = _mulmod(result, base, f, add, mul, neg)
        e >>= 1
        if e:
            base = _mulmod(base, base, f, add, mul, neg)
    return result


def _gcd_degree(a, b, add, mul, neg, inv):
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        # a <- a mod b
        lead = inv[b[-1]]
        while len(a) >= len(b):
            t = mul[a[-1]][lead]
            shift = len(a) - len(b)
            for j in range(len(b)):
                a[shift + j] = add[a[shift + j]][neg[mul[t][b[j]]]]
            _trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1


def _tables(add, mul, neg, inv):
    return add.tolist(), mul.tolist(), neg.tolist(), inv.tolist()


def irreducible_flags(polys, add, mul, neg, inv, q):
    """Ben-Or test on monic polynomials (rows in ascending degree)."""
    add, mul, neg, inv = _tables(add, mul, neg, inv)
    polys = np.asarray(polys)
    out = np.zeros(len(polys), dtype=np.uint8)
    for idx, row in enumerate(polys.tolist()):
        f = _trim(row)
        n = len(f) - 1
        if n < 1:
            continue
        irreducible = True
        h = [0, 1] if n > 1 else [neg[f[0]]]
        for _ in range(n // 2):
            h = _powmod(h, q, f, add, mul, neg)
            g = list(h) + [0] * max(0, 2 - len(h))
            g[1] = add[g[1]][neg[1]]
            if _gcd_degree(f, g, add, mul, neg, inv) >= 1:
                irreducible = False
                break
        out[idx] = irreducible
    return out


def x_pow_is_one(polys, e, add, mul, neg):
    """flag[k] = 1 when x^e = 1 modulo polys[k]."""
    add, mul, neg = add.tolist(), mul.tolist(), neg.tolist()
    polys = np.asarray(polys)
    out = np.zeros(len(polys), dtype=np.uint8)
    for idx, row in enumerate(polys.tolist()):
        f = _trim(row)
        if len(f) < 2:
            continue
        base = [0, 1] if len(f) > 2 else [neg[f[0]]]
        out[idx] = _powmod(base, e, f, add, mul, neg) == [1]
    return out
