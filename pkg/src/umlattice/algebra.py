"""Exact arithmetic over F_p, F_p[t] and the rational function field F_p(t).

Polynomials are stored as tuples of coefficients in ascending degree with no
trailing zeros; the zero polynomial is the empty tuple.  Rational functions are
kept in lowest terms with a monic denominator, so structural equality is field
equality.  The valuation is the order of vanishing at ``t = 0``.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Sequence

INF = math.inf


class AlgebraError(ArithmeticError):
    pass


class DivisionByZero(AlgebraError, ZeroDivisionError):
    pass


class DimensionMismatch(AlgebraError, ValueError):
    pass


class SingularMatrix(AlgebraError):
    pass


class RankDeficient(AlgebraError):
    pass


class WindowExceeded(AlgebraError):
    """A Laurent exponent left the configured window."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


class PrimeField:
    """The field F_p for a small prime ``p`` (at most 97)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or not 2 <= p <= 97 or not is_prime(p):
            raise ValueError(f"expected a prime 2 <= p <= 97, got {p!r}")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def reduce(self, a: int) -> int:
        return a % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise DivisionByZero("inverse of 0 in F_%d" % self.p)
        return pow(a, self.p - 2, self.p)


# ---------------------------------------------------------------------------
# coefficient-tuple helpers


def _trim(c: list) -> tuple:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, x in enumerate(b):
        c[i] = (c[i] + x) % p
    return _trim(c)


def _sub(a, b, p):
    n = max(len(a), len(b))
    c = [0] * n
    for i, x in enumerate(a):
        c[i] = x
    for i, x in enumerate(b):
        c[i] = (c[i] - x) % p
    return _trim(c)


def _mul(a, b, p):
    if not a or not b:
        return ()
    c = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    return _trim([v % p for v in c])


def _scale(a, s, p):
    s %= p
    if s == 0:
        return ()
    return tuple((x * s) % p for x in a)


def _divmod(a, b, p):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    inv = pow(b[-1], p - 2, p)
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        return (), tuple(a)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        coef = r[k + db] * inv % p
        q[k] = coef
        if coef:
            for j, y in enumerate(b):
                r[k + j] = (r[k + j] - coef * y) % p
    return _trim(q), _trim(r[:db])


def _monic(a, p):
    if not a:
        return a
    return _scale(a, pow(a[-1], p - 2, p), p)


def _gcd(a, b, p):
    while b:
        a, b = b, _divmod(a, b, p)[1]
    return _monic(a, p)


def _ord(a) -> int:
    for i, x in enumerate(a):
        if x:
            return i
    return -1


def _series_inverse(a, prec, p):
    """First ``prec`` coefficients of 1/a as a power series; requires a[0] != 0."""
    inv0 = pow(a[0], p - 2, p)
    out = [0] * prec
    for k in range(prec):
        s = 1 if k == 0 else 0
        for j in range(1, min(k, len(a) - 1) + 1):
            s -= a[j] * out[k - j]
        out[k] = s * inv0 % p
    return out


# ---------------------------------------------------------------------------


class Polynomial:
    """Polynomial over F_p with ascending coefficient tuple ``coeffs``."""

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs: Iterable[int], p: int):
        self.p = p
        self.coeffs = _trim([int(c) % p for c in coeffs])

    @classmethod
    def _raw(cls, coeffs: tuple, p: int) -> "Polynomial":
        obj = object.__new__(cls)
        obj.p = p
        obj.coeffs = coeffs
        return obj

    @classmethod
    def monomial(cls, k: int, p: int, c: int = 1) -> "Polynomial":
        return cls([0] * k + [c], p)

    def _check(self, other):
        if isinstance(other, int):
            return Polynomial([other], self.p)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.p != self.p:
            raise DimensionMismatch("polynomials over different fields")
        return other

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def order(self) -> int:
        """Order of vanishing at t = 0 (-1 for the zero polynomial)."""
        return _ord(self.coeffs)

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(_add(self.coeffs, other.coeffs, self.p), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(_sub(self.coeffs, other.coeffs, self.p), self.p)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Polynomial._raw(_scale(self.coeffs, -1, self.p), self.p)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(_mul(self.coeffs, other.coeffs, self.p), self.p)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._check(other)
        q, r = _divmod(self.coeffs, other.coeffs, self.p)
        return Polynomial._raw(q, self.p), Polynomial._raw(r, self.p)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def gcd(self, other: "Polynomial") -> "Polynomial":
        return Polynomial._raw(_gcd(self.coeffs, other.coeffs, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial([other], self.p)
        return isinstance(other, Polynomial) and other.p == self.p and other.coeffs == self.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)}, p={self.p})"

    def to_string(self) -> str:
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"

    __str__ = to_string

    @classmethod
    def from_string(cls, s: str, p: int) -> "Polynomial":
        data = json.loads(s)
        if not isinstance(data, list) or not all(isinstance(c, int) for c in data):
            raise ValueError(f"not a coefficient list: {s!r}")
        return cls(data, p)


class RationalFunction:
    """Element num/den of F_p(t) in lowest terms with monic denominator."""

    __slots__ = ("p", "num", "den")

    def __init__(self, num, den=None, p: int | None = None):
        if isinstance(num, Polynomial):
            p = num.p
            n = num.coeffs
        else:
            if p is None:
                raise ValueError("prime p required")
            n = _trim([int(c) % p for c in num])
        if den is None:
            d = (1,)
        elif isinstance(den, Polynomial):
            if den.p != p:
                raise DimensionMismatch("numerator and denominator over different fields")
            d = den.coeffs
        else:
            d = _trim([int(c) % p for c in den])
        if not d:
            raise DivisionByZero("zero denominator")
        self.p = p
        self.num, self.den = _normalize(n, d, p)

    @classmethod
    def _raw(cls, num: tuple, den: tuple, p: int) -> "RationalFunction":
        obj = object.__new__(cls)
        obj.p = p
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def constant(cls, c: int, p: int) -> "RationalFunction":
        c %= p
        return cls._raw((c,) if c else (), (1,), p)

    @classmethod
    def zero(cls, p: int) -> "RationalFunction":
        return cls._raw((), (1,), p)

    @classmethod
    def one(cls, p: int) -> "RationalFunction":
        return cls._raw((1,), (1,), p)

    @classmethod
    def t_power(cls, k: int, p: int) -> "RationalFunction":
        """The monomial t^k for any integer k."""
        if k >= 0:
            return cls._raw((0,) * k + (1,), (1,), p)
        return cls._raw((1,), (0,) * (-k) + (1,), p)

    @classmethod
    def laurent(cls, coeffs: Sequence[int], low: int, p: int) -> "RationalFunction":
        """sum_i coeffs[i] t^(low + i)."""
        c = [int(x) % p for x in coeffs]
        if low >= 0:
            return cls._raw(*_normalize(_trim([0] * low + c), (1,), p), p)
        return cls._raw(*_normalize(_trim(c), (0,) * (-low) + (1,), p), p)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.p != self.p:
                raise DimensionMismatch("rational functions over different fields")
            return other
        if isinstance(other, int):
            return RationalFunction.constant(other, self.p)
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        if self.den == other.den:
            return RationalFunction._raw(*_normalize(_add(self.num, other.num, p), self.den, p), p)
        n = _add(_mul(self.num, other.den, p), _mul(other.num, self.den, p), p)
        return RationalFunction._raw(*_normalize(n, _mul(self.den, other.den, p), p), p)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(_scale(self.num, -1, self.p), self.den, self.p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        if not self.num or not other.num:
            return RationalFunction.zero(p)
        # cross-cancel before multiplying to keep degrees small
        g1 = _gcd(self.num, other.den, p)
        g2 = _gcd(other.num, self.den, p)
        n1 = _divmod(self.num, g1, p)[0] if len(g1) > 1 else self.num
        d2 = _divmod(other.den, g1, p)[0] if len(g1) > 1 else other.den
        n2 = _divmod(other.num, g2, p)[0] if len(g2) > 1 else other.num
        d1 = _divmod(self.den, g2, p)[0] if len(g2) > 1 else self.den
        num = _mul(n1, n2, p)
        den = _mul(d1, d2, p)
        inv = pow(den[-1], p - 2, p)
        return RationalFunction._raw(_scale(num, inv, p), _scale(den, inv, p), p)

    __rmul__ = __mul__

    def inv(self) -> "RationalFunction":
        if not self.num:
            raise DivisionByZero("inverse of zero rational function")
        p = self.p
        inv = pow(self.num[-1], p - 2, p)
        return RationalFunction._raw(_scale(self.den, inv, p), _scale(self.num, inv, p), p)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inv()

    def val(self):
        """t-adic valuation; ``math.inf`` for zero."""
        if not self.num:
            return INF
        return _ord(self.num) - _ord(self.den)

    def laurent_coefficients(self, lo: int, hi: int) -> list[int]:
        """Coefficients of t^lo, ..., t^(hi-1) in the Laurent expansion at t = 0."""
        p = self.p
        out = [0] * max(hi - lo, 0)
        if not self.num or hi <= lo:
            return out
        o1, o2 = _ord(self.num), _ord(self.den)
        v = o1 - o2
        start = max(lo, v)
        if start >= hi:
            return out
        prec = hi - v
        n1 = self.num[o1:]
        d1 = self.den[o2:]
        s = _mul(n1, tuple(_series_inverse(d1, prec, p)), p)
        for e in range(start, hi):
            k = e - v
            if k < len(s):
                out[e - lo] = s[k]
        return out

    def is_laurent_polynomial(self) -> bool:
        return len(self.den) - 1 == _ord(self.den)

    def __eq__(self, other):
        if isinstance(other, int):
            other = RationalFunction.constant(other, self.p)
        return (
            isinstance(other, RationalFunction)
            and other.p == self.p
            and other.num == self.num
            and other.den == self.den
        )

    def __hash__(self):
        return hash((self.p, self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.to_string()}, p={self.p})"

    def to_string(self) -> str:
        n = "[" + ",".join(map(str, self.num)) + "]"
        d = "[" + ",".join(map(str, self.den)) + "]"
        return f"{n}/{d}"

    __str__ = to_string

    @classmethod
    def from_string(cls, s: str, p: int) -> "RationalFunction":
        s = s.strip()
        if "/" in s:
            a, b = s.split("/", 1)
            return cls(Polynomial.from_string(a, p), Polynomial.from_string(b, p))
        return cls(Polynomial.from_string(s, p))


def _normalize(n: tuple, d: tuple, p: int) -> tuple[tuple, tuple]:
    if not n:
        return (), (1,)
    if len(d) > 1:
        g = _gcd(n, d, p)
        if len(g) > 1:
            n = _divmod(n, g, p)[0]
            d = _divmod(d, g, p)[0]
    inv = pow(d[-1], p - 2, p)
    if inv != 1:
        n = _scale(n, inv, p)
        d = _scale(d, inv, p)
    return n, d


def val(f: RationalFunction):
    return f.val()


# ---------------------------------------------------------------------------
# matrices


class RatMatrix:
    """Dense matrix over F_p(t); immutable once built."""

    __slots__ = ("p", "rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[RationalFunction]], p: int):
        rows = [tuple(r) for r in entries]
        if not rows or not rows[0]:
            raise DimensionMismatch("matrix dimensions must be positive")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged matrix")
        for r in rows:
            for x in r:
                if not isinstance(x, RationalFunction) or x.p != p:
                    raise DimensionMismatch("entries must be rational functions over F_%d" % p)
        self.p = p
        self.rows = len(rows)
        self.cols = width
        self.entries = tuple(rows)

    @classmethod
    def identity(cls, n: int, p: int) -> "RatMatrix":
        z, o = RationalFunction.zero(p), RationalFunction.one(p)
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], p)

    @classmethod
    def diagonal(cls, diag: Sequence[RationalFunction], p: int) -> "RatMatrix":
        z = RationalFunction.zero(p)
        n = len(diag)
        return cls([[diag[i] if i == j else z for j in range(n)] for i in range(n)], p)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[RationalFunction]], p: int) -> "RatMatrix":
        n = len(columns[0])
        return cls([[c[i] for c in columns] for i in range(n)], p)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and other.p == self.p and other.entries == self.entries

    def __hash__(self):
        return hash((self.p, self.entries))

    def __repr__(self):
        return f"RatMatrix({self.to_json()}, p={self.p})"

    def transpose(self) -> "RatMatrix":
        return RatMatrix([list(c) for c in self.columns()], self.p)

    def __mul__(self, other: "RatMatrix") -> "RatMatrix":
        if not isinstance(other, RatMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch("incompatible shapes")
        z = RationalFunction.zero(self.p)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                s = z
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a.num:
                        b = other.entries[k][j]
                        if b.num:
                            s = s + a * b
                row.append(s)
            out.append(row)
        return RatMatrix(out, self.p)

    def apply(self, v: Sequence[RationalFunction]) -> list[RationalFunction]:
        if len(v) != self.cols:
            raise DimensionMismatch("vector length mismatch")
        z = RationalFunction.zero(self.p)
        out = []
        for r in self.entries:
            s = z
            for a, b in zip(r, v):
                if a.num and b.num:
                    s = s + a * b
            out.append(s)
        return out

    def to_json(self) -> list[list[str]]:
        return [[x.to_string() for x in r] for r in self.entries]

    @classmethod
    def from_json(cls, data, p: int) -> "RatMatrix":
        return cls([[RationalFunction.from_string(x, p) for x in r] for r in data], p)


def det(M: RatMatrix) -> RationalFunction:
    """Determinant by Gaussian elimination over F_p(t)."""
    if M.rows != M.cols:
        raise DimensionMismatch("det of a non-square matrix")
    p = M.p
    a = [list(r) for r in M.entries]
    n = M.rows
    result = RationalFunction.one(p)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c].num), None)
        if piv is None:
            return RationalFunction.zero(p)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        pv = a[c][c]
        result = result * pv
        inv = pv.inv()
        for r in range(c + 1, n):
            if a[r][c].num:
                f = a[r][c] * inv
                for k in range(c, n):
                    if a[c][k].num:
                        a[r][k] = a[r][k] - f * a[c][k]
    return result


def solve(M: RatMatrix, b: Sequence[RationalFunction]) -> list[RationalFunction]:
    """The unique x with M x = b for square nonsingular M."""
    if M.rows != M.cols:
        raise DimensionMismatch("solve needs a square matrix")
    if len(b) != M.rows:
        raise DimensionMismatch("right-hand side length mismatch")
    n = M.rows
    a = [list(r) + [b[i]] for i, r in enumerate(M.entries)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c].num), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = a[c][c].inv()
        a[c] = [x * inv if x.num else x for x in a[c]]
        for r in range(n):
            if r != c and a[r][c].num:
                f = a[r][c]
                a[r] = [x - f * y if y.num else x for x, y in zip(a[r], a[c])]
    return [a[i][n] for i in range(n)]


def _reduce_mod_pivot(e: RationalFunction, a: int) -> tuple[RationalFunction, RationalFunction]:
    """Split e = r + c t^a with r a Laurent polynomial of exponents < a and c in R."""
    p = e.p
    v = e.val()
    if v == INF or v >= a:
        return RationalFunction.zero(p), e * RationalFunction.t_power(-a, p)
    r = RationalFunction.laurent(e.laurent_coefficients(v, a), v, p)
    c = (e - r) * RationalFunction.t_power(-a, p)
    return r, c


def dvr_hermite(M: RatMatrix, bound: int | None = None) -> RatMatrix:
    """Canonical basis of the R-module spanned by the columns of ``M``.

    R is the valuation ring {f : val(f) >= 0}.  The result H is upper
    triangular with H[i][i] = t^(a_i); entries to the right of a pivot in row i
    are Laurent polynomials with exponents below a_i.  Column pivots are picked
    by minimal valuation, ties broken by least column index.  If ``bound`` is
    given, every exponent must lie in [-bound, bound].
    """
    n = M.rows
    if M.cols < n:
        raise RankDeficient("fewer generators than rows")
    p = M.p
    cols = [list(c) for c in M.columns()]
    pivots: list = [None] * n
    exps = [0] * n
    for i in range(n - 1, -1, -1):
        best = None
        best_v = INF
        for idx, c in enumerate(cols):
            v = c[i].val()
            if v < best_v:
                best, best_v = idx, v
        if best is None:
            raise RankDeficient("generators do not span K^n")
        piv = cols.pop(best)
        a = int(best_v)
        unit = RationalFunction.t_power(a, p) / piv[i]
        piv = [x * unit if x.num else x for x in piv]
        for c in cols:
            g = c[i]
            if g.num:
                f = g * RationalFunction.t_power(-a, p)
                for r in range(i + 1):
                    if piv[r].num:
                        c[r] = c[r] - f * piv[r]
        cols = [c for c in cols if any(x.num for x in c[:i])]
        pivots[i] = piv
        exps[i] = a
    for j in range(n):
        col = pivots[j]
        for i in range(j - 1, -1, -1):
            if not col[i].num:
                continue
            r, c = _reduce_mod_pivot(col[i], exps[i])
            if c.num:
                other = pivots[i]
                for k in range(i):
                    if other[k].num:
                        col[k] = col[k] - c * other[k]
            col[i] = r
    H = RatMatrix.from_columns(pivots, p)
    if bound is not None:
        for row in H.entries:
            for x in row:
                if x.num:
                    lo = x.val()
                    hi = lo + len(x.num) - 1 - _ord(x.num)
                    if lo < -bound or hi > bound:
                        raise WindowExceeded(f"entry {x} outside exponent window [-{bound}, {bound}]")
    return H


def module_contains(H: RatMatrix, v: Sequence[RationalFunction]) -> bool:
    """Membership of v in the R-span of the columns of the square basis H."""
    x = solve(H, v)
    return all(c.val() >= 0 for c in x)
