# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_kernel_py``; same functions, same results."""

from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memset, memcpy

from ._kernel_py import WindowError, columns, combine, dual as _dual_py


cdef inline long _mod(long a, long q) nogil:
    a %= q
    return a + q if a < 0 else a


cdef long _inv(long a, long q) nogil:
    cdef long r = 1, b = a % q, e = q - 2
    while e > 0:
        if e & 1:
            r = r * b % q
        b = b * b % q
        e >>= 1
    return r


cdef void _axpy(long* c, const long* f, const long* p, int rows, int N, long q, long sign) nogil:
    cdef int r, e, d, base
    cdef long pe
    for r in range(rows):
        base = r * N
        for e in range(N):
            pe = p[base + e]
            if pe:
                for d in range(N - e):
                    if f[d]:
                        c[base + e + d] = _mod(c[base + e + d] + sign * f[d] * pe, q)


cdef bint _any(const long* a, int length) nogil:
    cdef int k
    for k in range(length):
        if a[k]:
            return True
    return False


def hermite(gens, int n, int N, long q):
    cdef int B = N // 2
    cdef int size = n * N
    cdef int m = len(gens)
    cdef int cap = m + n + 1
    cdef long* buf = <long*> calloc(cap * size, sizeof(long))
    cdef long* piv = <long*> calloc(n * size, sizeof(long))
    cdef long* f = <long*> calloc(N, sizeof(long))
    cdef long* w = <long*> calloc(N, sizeof(long))
    cdef long* tmp = <long*> calloc(size, sizeof(long))
    cdef int* alive = <int*> calloc(cap, sizeof(int))
    cdef int* exps = <int*> malloc(n * sizeof(int))
    cdef int ncols = 0, i, j, k, e, d, idx, best, best_e, off, e0, r
    cdef long s, inv0
    cdef long* c
    cdef long* p
    if buf == NULL or piv == NULL or f == NULL or w == NULL or tmp == NULL or alive == NULL or exps == NULL:
        raise MemoryError()
    try:
        for g in gens:
            c = buf + ncols * size
            for k in range(size):
                c[k] = _mod(g[k], q)
            if _any(c, size):
                alive[ncols] = 1
                ncols += 1
            else:
                memset(c, 0, size * sizeof(long))
        for i in range(n):
            exps[i] = B
        for i in range(n - 1, -1, -1):
            off = i * N
            best = -1
            best_e = N
            for idx in range(ncols):
                if not alive[idx]:
                    continue
                c = buf + idx * size
                for e in range(best_e):
                    if c[off + e]:
                        best_e = e
                        best = idx
                        break
            p = piv + i * size
            if best < 0:
                continue
            alive[best] = 0
            e0 = best_e
            c = buf + best * size
            # normalize the pivot entry to t^a
            memset(w, 0, N * sizeof(long))
            inv0 = _inv(c[off + e0], q)
            for k in range(N):
                s = 1 if k == 0 else 0
                for j in range(1, k + 1):
                    if e0 + j >= N:
                        break
                    if c[off + e0 + j]:
                        s -= c[off + e0 + j] * w[k - j]
                w[k] = _mod(s * inv0, q)
            memset(p, 0, size * sizeof(long))
            _axpy(p, w, c, i + 1, N, q, 1)
            for idx in range(ncols):
                if not alive[idx]:
                    continue
                c = buf + idx * size
                memset(f, 0, N * sizeof(long))
                for d in range(N - e0):
                    f[d] = c[off + e0 + d]
                if _any(f, N):
                    _axpy(c, f, p, i + 1, N, q, -1)
                if not _any(c, size):
                    alive[idx] = 0
            memset(tmp, 0, size * sizeof(long))
            for r in range(i):
                for e in range(e0):
                    tmp[r * N + e + N - e0] = p[r * N + e]
            if _any(tmp, size):
                if ncols == cap:
                    # compact dead slots
                    k = 0
                    for idx in range(ncols):
                        if alive[idx]:
                            if k != idx:
                                memcpy(buf + k * size, buf + idx * size, size * sizeof(long))
                            alive[k] = 1
                            k += 1
                    for idx in range(k, ncols):
                        alive[idx] = 0
                    ncols = k
                memcpy(buf + ncols * size, tmp, size * sizeof(long))
                alive[ncols] = 1
                ncols += 1
            exps[i] = e0 - B
        for j in range(n):
            c = piv + j * size
            for i in range(j - 1, -1, -1):
                if exps[i] == B:
                    continue
                e0 = exps[i] + B
                off = i * N
                memset(f, 0, N * sizeof(long))
                for d in range(N - e0):
                    f[d] = c[off + e0 + d]
                if _any(f, N):
                    _axpy(c, f, piv + i * size, i + 1, N, q, -1)
        out_exps = tuple([exps[i] for i in range(n)])
        out = tuple([piv[k] for k in range(n * size)])
        return out_exps, out
    finally:
        free(buf)
        free(piv)
        free(f)
        free(w)
        free(tmp)
        free(alive)
        free(exps)


def contains(exps, data, vec, int n, int N, long q):
    cdef int B = N // 2
    cdef int size = n * N
    cdef long* v = <long*> malloc(size * sizeof(long))
    cdef long* col = <long*> malloc(size * sizeof(long))
    cdef long* f = <long*> calloc(N, sizeof(long))
    cdef int i, k, d, off, a, e0
    if v == NULL or col == NULL or f == NULL:
        raise MemoryError()
    try:
        for k in range(size):
            v[k] = _mod(vec[k], q)
        for i in range(n - 1, -1, -1):
            off = i * N
            a = exps[i]
            if a == B:
                if _any(v + off, N):
                    return False
                continue
            e0 = a + B
            if _any(v + off, e0):
                return False
            memset(f, 0, N * sizeof(long))
            for d in range(N - e0):
                f[d] = v[off + e0 + d]
            if _any(f, N):
                for k in range(size):
                    col[k] = data[i * size + k]
                _axpy(v, f, col, i + 1, N, q, -1)
        return not _any(v, size)
    finally:
        free(v)
        free(col)
        free(f)


def dual(exps, data, int n, int N, long q):
    return _dual_py(exps, data, n, N, q)


def meet(e1, d1, e2, d2, int n, int N, long q):
    g = dual(e1, d1, n, N, q) + dual(e2, d2, n, N, q)
    ke, kd = hermite(g, n, N, q)
    return hermite(dual(ke, kd, n, N, q), n, N, q)


def join(e1, d1, e2, d2, int n, int N, long q):
    cdef int size = n * N
    gens = [d1[j * size:(j + 1) * size] for j in range(n)]
    gens += [d2[j * size:(j + 1) * size] for j in range(n)]
    return hermite(gens, n, N, q)


def ascend(exps, data, int n, int N):
    cdef int B = N // 2
    cdef int size = n * N
    cdef int j, r, off
    out = [0] * (n * size)
    for j in range(n):
        for r in range(n):
            off = j * size + r * N
            if data[off]:
                raise WindowError("ascend leaves the window")
            out[off: off + N - 1] = data[off + 1: off + N]
        if exps[j] == B:
            out[j * size + j * N + N - 1] = 1
    return tuple([a - 1 for a in exps]), tuple(out)


def descend(exps, data, int n, int N, long q):
    cdef int B = N // 2
    cdef int size = n * N
    cdef int i, j, r, off
    for i in range(n):
        v = [0] * size
        v[i * N + N - 1] = 1
        if not contains(exps, data, v, n, N, q):
            raise WindowError("descend leaves the window")
    out = [0] * (n * size)
    for j in range(n):
        for r in range(n):
            off = j * size + r * N
            out[off + 1: off + N] = data[off: off + N - 1]
        if exps[j] + 1 == B:
            out[j * size:(j + 1) * size] = [0] * size
    return tuple([a + 1 for a in exps]), tuple(out)
