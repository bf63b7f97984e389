"""Pure-Python window kernel for the module lattice.

A module L with t^B R^n <= L <= t^-B R^n is stored through its image in
(F_q[t]/t^2B)^n.  A column is a flat list of n*N coefficients (N = 2B), row r
occupying slots r*N .. r*N+N-1, slot e holding the coefficient of t^(e-B).
A canonical basis is a pair (exps, data): exps[i] is the pivot exponent of
column i (B meaning the column is t^B e_i, stored as zeros) and data is the
column-major concatenation of the n canonical columns.

Every function here has a twin with the same signature in ``_kernel.pyx``.
"""

from __future__ import annotations


class WindowError(ArithmeticError):
    pass


def _inverse_series(u, length, q):
    inv0 = pow(u[0], q - 2, q)
    w = [0] * length
    lu = len(u)
    for k in range(length):
        s = 1 if k == 0 else 0
        for j in range(1, min(k, lu - 1) + 1):
            uj = u[j]
            if uj:
                s -= uj * w[k - j]
        w[k] = s * inv0 % q
    return w


def _axpy(c, f, p, rows, N, q, sign=-1):
    """c[r] += sign * f * p[r] for r < rows, truncated to N slots per row."""
    nz = [d for d, x in enumerate(f) if x]
    if not nz:
        return
    for r in range(rows):
        base = r * N
        for e in range(N):
            pe = p[base + e]
            if pe:
                for d in nz:
                    k = e + d
                    if k >= N:
                        break
                    c[base + k] = (c[base + k] + sign * f[d] * pe) % q


def hermite(gens, n, N, q):
    """Canonical basis of span(gens) + t^B R^n."""
    B = N // 2
    cols = [list(g) for g in gens if any(g)]
    exps = [B] * n
    pivots = [None] * n
    for i in range(n - 1, -1, -1):
        off = i * N
        best = -1
        best_e = N
        for idx, c in enumerate(cols):
            for e in range(off, off + best_e):
                if c[e]:
                    if e - off < best_e:
                        best_e = e - off
                        best = idx
                    break
        if best < 0:
            pivots[i] = [0] * (n * N)
            continue
        p = cols.pop(best)
        e0 = best_e
        u = p[off + e0: off + N]
        if u[0] != 1 or any(u[1:]):
            w = _inverse_series(u, N, q)
            newp = [0] * (n * N)
            _axpy(newp, w, p, i + 1, N, q, sign=1)
            p = newp
        for c in cols:
            seg = c[off + e0: off + N]
            if any(seg):
                _axpy(c, seg, p, i + 1, N, q)
        # t^B e_i reduced against the pivot leaves t^(B-a) p with row i cleared
        shift = N - e0
        extra = [0] * (n * N)
        nonzero = False
        for r in range(i):
            base = r * N
            for e in range(e0):
                x = p[base + e]
                if x:
                    extra[base + e + shift] = x
                    nonzero = True
        cols = [c for c in cols if any(c)]
        if nonzero:
            cols.append(extra)
        pivots[i] = p
        exps[i] = e0 - B
    for j in range(n):
        col = pivots[j]
        for i in range(j - 1, -1, -1):
            if exps[i] == B:
                continue
            e0 = exps[i] + B
            off = i * N
            seg = col[off + e0: off + N]
            if any(seg):
                _axpy(col, seg, pivots[i], i + 1, N, q)
    data = []
    for c in pivots:
        data.extend(c)
    return tuple(exps), tuple(data)


def contains(exps, data, vec, n, N, q):
    """Whether the window vector ``vec`` lies in the module (exps, data)."""
    B = N // 2
    v = list(vec)
    for i in range(n - 1, -1, -1):
        off = i * N
        a = exps[i]
        if a == B:
            if any(v[off: off + N]):
                return False
            continue
        e0 = a + B
        if any(v[off: off + e0]):
            return False
        seg = v[off + e0: off + N]
        if any(seg):
            col = data[i * n * N: (i + 1) * n * N]
            _axpy(v, seg, col, i + 1, N, q)
    return not any(v)


# Laurent polynomials as (low exponent, coefficient list) for the exact inverse


def _lp_mul(a, b, q):
    la, ca = a
    lb, cb = b
    if not ca or not cb:
        return (0, [])
    out = [0] * (len(ca) + len(cb) - 1)
    for i, x in enumerate(ca):
        if x:
            for j, y in enumerate(cb):
                if y:
                    out[i + j] += x * y
    return (la + lb, [v % q for v in out])


def _lp_add(a, b, q):
    la, ca = a
    lb, cb = b
    if not ca:
        return b
    if not cb:
        return a
    lo = min(la, lb)
    hi = max(la + len(ca), lb + len(cb))
    out = [0] * (hi - lo)
    for i, x in enumerate(ca):
        out[la - lo + i] += x
    for i, x in enumerate(cb):
        out[lb - lo + i] += x
    return _lp_trim(lo, [v % q for v in out])


def _lp_trim(lo, c):
    s = 0
    while s < len(c) and c[s] == 0:
        s += 1
    e = len(c)
    while e > s and c[e - 1] == 0:
        e -= 1
    if s == e:
        return (0, [])
    return (lo + s, c[s:e])


def entry_lp(data, n, N, j, r):
    B = N // 2
    off = (j * n + r) * N
    return _lp_trim(-B, list(data[off: off + N]))


def dual(exps, data, n, N, q):
    """Generators of the dual module: the rows of the inverse of the basis."""
    B = N // 2
    H = [[None] * n for _ in range(n)]
    for j in range(n):
        for r in range(j):
            H[r][j] = entry_lp(data, n, N, j, r)
    X = [[(0, [])] * n for _ in range(n)]
    for i in range(n):
        X[i][i] = (-exps[i], [1])
    for j in range(n):
        for i in range(j - 1, -1, -1):
            s = (0, [])
            for k in range(i + 1, j + 1):
                h = H[i][k]
                if h[1] and X[k][j][1]:
                    s = _lp_add(s, _lp_mul(h, X[k][j], q), q)
            if s[1]:
                lo, c = s
                X[i][j] = (lo - exps[i], [(-x) % q for x in c])
    gens = []
    for i in range(n):
        col = [0] * (n * N)
        for j in range(n):
            lo, c = X[i][j]
            if not c:
                continue
            if lo < -B:
                raise WindowError("dual module leaves the window")
            for d, x in enumerate(c):
                e = lo + d + B
                if e >= N:
                    break
                col[j * N + e] = x
        gens.append(col)
    return gens


def meet(e1, d1, e2, d2, n, N, q):
    g = dual(e1, d1, n, N, q) + dual(e2, d2, n, N, q)
    ke, kd = hermite(g, n, N, q)
    return hermite(dual(ke, kd, n, N, q), n, N, q)


def join(e1, d1, e2, d2, n, N, q):
    size = n * N
    gens = [d1[j * size:(j + 1) * size] for j in range(n)]
    gens += [d2[j * size:(j + 1) * size] for j in range(n)]
    return hermite(gens, n, N, q)


def ascend(exps, data, n, N):
    """t^-1 L, or WindowError if some coefficient sits at exponent -B."""
    B = N // 2
    size = n * N
    out = [0] * (n * size)
    for j in range(n):
        for r in range(n):
            off = j * size + r * N
            if data[off]:
                raise WindowError("ascend leaves the window")
            out[off: off + N - 1] = data[off + 1: off + N]
        if exps[j] == B:
            out[j * size + j * N + N - 1] = 1
    return tuple(a - 1 for a in exps), tuple(out)


def descend(exps, data, n, N, q):
    """t L, or WindowError unless t^(B-1) R^n <= L."""
    B = N // 2
    size = n * N
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
    return tuple(a + 1 for a in exps), tuple(out)


def combine(data, coeffs, n, N, q):
    """sum_j coeffs[j] * column j."""
    size = n * N
    out = [0] * size
    for j, c in enumerate(coeffs):
        if c:
            base = j * size
            for k in range(size):
                x = data[base + k]
                if x:
                    out[k] = (out[k] + c * x) % q
    return out


def columns(data, n, N):
    size = n * N
    return [list(data[j * size:(j + 1) * size]) for j in range(n)]
