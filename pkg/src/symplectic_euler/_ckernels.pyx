# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the kernels in _pykernels (same signatures)."""

import numpy as np

BACKEND = "cython"

cdef enum:
    MAXDEG = 64

ctypedef unsigned char u8


def batch_matmul(A, B, add, mul):
    A = np.ascontiguousarray(A, dtype=np.uint8)
    B = np.ascontiguousarray(B, dtype=np.uint8)
    cdef Py_ssize_t k = A.shape[0], d = A.shape[1]
    cdef bint single = B.ndim == 2
    if single:
        B = B.reshape(1, d, d)
    C = np.zeros((k, d, d), dtype=np.uint8)
    cdef const u8[:, :, ::1] a = A
    cdef const u8[:, :, ::1] b = B
    cdef u8[:, :, ::1] c = C
    cdef const u8[:, ::1] ad = np.ascontiguousarray(add, dtype=np.uint8)
    cdef const u8[:, ::1] mu = np.ascontiguousarray(mul, dtype=np.uint8)
    cdef Py_ssize_t n, i, j, t, bn
    cdef u8 acc
    with nogil:
        for n in range(k):
            bn = 0 if single else n
            for i in range(d):
                for j in range(d):
                    acc = 0
                    for t in range(d):
                        acc = ad[acc, mu[a[n, i, t], b[bn, t, j]]]
                    c[n, i, j] = acc
    return C


def vec_codes(V, q):
    V = np.asarray(V, dtype=np.int64)
    w = q ** np.arange(V.shape[V.ndim - 1] - 1, -1, -1, dtype=np.int64)
    return V @ w


def point_images(G, pts, add, mul, vec_index, q):
    G = np.ascontiguousarray(G, dtype=np.uint8)
    P_arr = np.ascontiguousarray(pts, dtype=np.uint8)
    cdef Py_ssize_t k = G.shape[0], d = G.shape[1], P = P_arr.shape[0]
    out = np.empty((k, P), dtype=np.int32)
    cdef const u8[:, :, ::1] g = G
    cdef const u8[:, ::1] pv = P_arr
    cdef int[:, ::1] o = out
    cdef const int[::1] vi = np.ascontiguousarray(vec_index, dtype=np.int32)
    cdef const u8[:, ::1] ad = np.ascontiguousarray(add, dtype=np.uint8)
    cdef const u8[:, ::1] mu = np.ascontiguousarray(mul, dtype=np.uint8)
    cdef long long qq = q, code
    cdef Py_ssize_t n, i, j, col
    cdef u8 acc
    with nogil:
        for n in range(k):
            for i in range(P):
                code = 0
                for col in range(d):
                    acc = 0
                    for j in range(d):
                        acc = ad[acc, mu[pv[i, j], g[n, j, col]]]
                    code = code * qq + acc
                o[n, i] = vi[code]
    return out


def fixed_subspaces(perms, member):
    Pm = np.ascontiguousarray(perms, dtype=np.int32)
    M = np.ascontiguousarray(member, dtype=np.uint8)
    cdef Py_ssize_t k = Pm.shape[0], P = Pm.shape[1], S = M.shape[0]
    out = np.zeros((k, S), dtype=np.uint8)
    cdef const int[:, ::1] pm = Pm
    cdef const u8[:, ::1] m = M
    cdef u8[:, ::1] o = out
    cdef Py_ssize_t n, s, i
    cdef bint ok
    with nogil:
        for n in range(k):
            for s in range(S):
                ok = True
                for i in range(P):
                    if m[s, i] and not m[s, pm[n, i]]:
                        ok = False
                        break
                o[n, s] = ok
    return out


# polynomial arithmetic with fixed-size buffers

cdef int _trim(u8* a, int length) nogil:
    while length > 0 and a[length - 1] == 0:
        length -= 1
    return length


cdef int _mulmod(const u8* a, int la, const u8* b, int lb, const u8* f, int n,
                 u8* out, const u8[:, ::1] ad, const u8[:, ::1] mu, const u8[::1] ng) nogil:
    cdef u8 c[2 * MAXDEG]
    cdef int i, j, kk, lc
    cdef u8 t
    if la == 0 or lb == 0:
        return 0
    lc = la + lb - 1
    for i in range(lc):
        c[i] = 0
    for i in range(la):
        if a[i]:
            for j in range(lb):
                if b[j]:
                    c[i + j] = ad[c[i + j], mu[a[i], b[j]]]
    kk = lc - 1
    while kk >= n:
        t = c[kk]
        if t:
            for j in range(n):
                c[kk - n + j] = ad[c[kk - n + j], ng[mu[t, f[j]]]]
            c[kk] = 0
        kk -= 1
    if lc > n:
        lc = n
    for i in range(lc):
        out[i] = c[i]
    return _trim(out, lc)


cdef int _powmod(const u8* base_in, int lb, long long e, const u8* f, int n, u8* out,
                 const u8[:, ::1] ad, const u8[:, ::1] mu, const u8[::1] ng) nogil:
    cdef u8 base[MAXDEG]
    cdef u8 tmp[MAXDEG]
    cdef int i, lr, lbase
    for i in range(lb):
        base[i] = base_in[i]
    lbase = lb
    out[0] = 1
    lr = 1
    while e:
        if e & 1:
            lr = _mulmod(out, lr, base, lbase, f, n, tmp, ad, mu, ng)
            for i in range(lr):
                out[i] = tmp[i]
        e >>= 1
        if e:
            lbase = _mulmod(base, lbase, base, lbase, f, n, tmp, ad, mu, ng)
            for i in range(lbase):
                base[i] = tmp[i]
    return lr


cdef int _gcd_degree(const u8* f, int lf, const u8* g, int lg,
                     const u8[:, ::1] ad, const u8[:, ::1] mu, const u8[::1] ng, const u8[::1] iv) nogil:
    cdef u8 a[MAXDEG + 1]
    cdef u8 b[MAXDEG + 1]
    cdef u8 tmp
    cdef int la, lb, i, shift, ltmp
    cdef u8 lead, t
    for i in range(lf):
        a[i] = f[i]
    for i in range(lg):
        b[i] = g[i]
    la = _trim(a, lf)
    lb = _trim(b, lg)
    while lb > 0:
        lead = iv[b[lb - 1]]
        while la >= lb:
            t = mu[a[la - 1], lead]
            shift = la - lb
            for i in range(lb):
                a[shift + i] = ad[a[shift + i], ng[mu[t, b[i]]]]
            la = _trim(a, la)
            if la == 0:
                break
        # swap a and b
        for i in range(MAXDEG + 1):
            tmp = a[i]
            a[i] = b[i]
            b[i] = tmp
        ltmp = la
        la = lb
        lb = ltmp
    return la - 1


def irreducible_flags(polys, add, mul, neg, inv, q):
    Parr = np.ascontiguousarray(polys, dtype=np.uint8)
    cdef Py_ssize_t k = Parr.shape[0], w = Parr.shape[1]
    if w - 1 > MAXDEG // 2:
        raise ValueError("degree too large for the compiled kernel")
    out = np.zeros(k, dtype=np.uint8)
    cdef const u8[:, ::1] P = Parr
    cdef u8[::1] o = out
    cdef const u8[:, ::1] ad = np.ascontiguousarray(add, dtype=np.uint8)
    cdef const u8[:, ::1] mu = np.ascontiguousarray(mul, dtype=np.uint8)
    cdef const u8[::1] ng = np.ascontiguousarray(neg, dtype=np.uint8)
    cdef const u8[::1] iv = np.ascontiguousarray(inv, dtype=np.uint8)
    cdef long long qq = q
    cdef u8 f[MAXDEG + 1]
    cdef u8 h[MAXDEG]
    cdef u8 tmp[MAXDEG]
    cdef u8 g[MAXDEG]
    cdef Py_ssize_t idx
    cdef int i, n, lh, lg, step
    cdef bint irred
    with nogil:
        for idx in range(k):
            for i in range(w):
                f[i] = P[idx, i]
            n = _trim(f, <int>w) - 1
            if n < 1:
                o[idx] = 0
                continue
            if n == 1:
                o[idx] = 1
                continue
            h[0] = 0
            h[1] = 1
            lh = 2
            irred = True
            for step in range(n // 2):
                lh = _powmod(h, lh, qq, f, n, tmp, ad, mu, ng)
                for i in range(lh):
                    h[i] = tmp[i]
                for i in range(n):
                    g[i] = h[i] if i < lh else 0
                g[1] = ad[g[1], ng[1]]
                lg = _trim(g, n)
                if lg == 0 or _gcd_degree(f, n + 1, g, lg, ad, mu, ng, iv) >= 1:
                    irred = False
                    break
            o[idx] = irred
    return out


def x_pow_is_one(polys, e, add, mul, neg):
    Parr = np.ascontiguousarray(polys, dtype=np.uint8)
    cdef Py_ssize_t k = Parr.shape[0], w = Parr.shape[1]
    if w - 1 > MAXDEG:
        raise ValueError("degree too large for the compiled kernel")
    out = np.zeros(k, dtype=np.uint8)
    cdef const u8[:, ::1] P = Parr
    cdef u8[::1] o = out
    cdef const u8[:, ::1] ad = np.ascontiguousarray(add, dtype=np.uint8)
    cdef const u8[:, ::1] mu = np.ascontiguousarray(mul, dtype=np.uint8)
    cdef const u8[::1] ng = np.ascontiguousarray(neg, dtype=np.uint8)
    cdef long long ee = e
    cdef u8 f[MAXDEG + 1]
    cdef u8 base[2]
    cdef u8 res[MAXDEG]
    cdef Py_ssize_t idx
    cdef int i, n, lr, lb
    with nogil:
        for idx in range(k):
            for i in range(w):
                f[i] = P[idx, i]
            n = _trim(f, <int>w) - 1
            if n < 1:
                o[idx] = 0
                continue
            if n == 1:
                base[0] = ng[f[0]]
                lb = _trim(base, 1)
            else:
                base[0] = 0
                base[1] = 1
                lb = 2
            lr = _powmod(base, lb, ee, f, n, res, ad, mu, ng)
            o[idx] = lr == 1 and res[0] == 1
    return out
