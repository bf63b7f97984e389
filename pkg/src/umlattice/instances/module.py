"""Full-rank free R-submodules of F_q(t)^n, R the valuation ring at t = 0.

Elements are canonical bases ``(exps, data)`` as produced by the window
kernel; every module L satisfies t^B R^n <= L <= t^-B R^n.  Join is the sum,
meet the intersection, computed through dual modules.
"""

from __future__ import annotations

import itertools

from .. import kernel
from ..algebra import (
    PrimeField,
    RationalFunction,
    RatMatrix,
    WindowExceeded,
    dvr_hermite,
    module_contains,
)
from ..core import Lattice


def projective_points(n: int, q: int) -> list:
    """Normalized representatives of the lines of F_q^n (first nonzero = 1)."""
    out = []
    for lead in range(n):
        for tail in itertools.product(range(q), repeat=n - lead - 1):
            out.append((0,) * lead + (1,) + tail)
    return out


def _nullspace(c, q):
    """Basis of {x : sum c_i x_i = 0} over F_q for a normalized nonzero c."""
    n = len(c)
    lead = next(i for i, a in enumerate(c) if a)
    basis = []
    for j in range(n):
        if j == lead:
            continue
        v = [0] * n
        v[j] = 1
        v[lead] = (-c[j]) % q
        basis.append(v)
    return basis


class ModuleLattice(Lattice):
    kind = "module"

    def __init__(self, n: int = 2, q: int = 2, B: int = 4, sample_radius: int = 1):
        super().__init__()
        PrimeField(q)
        if n < 1 or B < 1:
            raise ValueError("n and B must be positive")
        self.n = n
        self.q = q
        self.B = B
        self.N = 2 * B
        self.sample_radius = sample_radius
        self._lines = projective_points(n, q)

    def config(self):
        return {"kind": self.kind, "n": self.n, "q": self.q, "B": self.B}

    # --- window helpers --------------------------------------------------------
    def _wrap(self, fn, *args):
        try:
            return fn(*args)
        except kernel.WindowError as exc:
            raise WindowExceeded(str(exc)) from None

    def from_columns(self, cols):
        """Canonical basis of span(cols) + t^B R^n from window columns."""
        return kernel.hermite(cols, self.n, self.N, self.q)

    def columns(self, x):
        return kernel.columns(x[1], self.n, self.N)

    def unit_vector(self, i, exponent):
        v = [0] * (self.n * self.N)
        e = exponent + self.B
        if not 0 <= e < self.N:
            raise WindowExceeded("exponent outside the window")
        v[i * self.N + e] = 1
        return v

    def diagonal(self, exponents):
        """The module t^e1 R + ... + t^en R."""
        return self.from_columns([self.unit_vector(i, e) for i, e in enumerate(exponents)])

    def contains(self, x, vec) -> bool:
        return kernel.contains(x[0], x[1], vec, self.n, self.N, self.q)

    # --- lattice ---------------------------------------------------------------
    def _meet(self, x, y):
        return self._wrap(kernel.meet, x[0], x[1], y[0], y[1], self.n, self.N, self.q)

    def _join(self, x, y):
        return kernel.join(x[0], x[1], y[0], y[1], self.n, self.N, self.q)

    def leq(self, x, y):
        if x == y:
            return True
        if sum(x[0]) < sum(y[0]):
            return False
        return all(self.contains(y, c) for c in self.columns(x))

    def _ascend(self, x):
        return self._wrap(kernel.ascend, x[0], x[1], self.n, self.N)

    def _descend(self, x):
        return self._wrap(kernel.descend, x[0], x[1], self.n, self.N, self.q)

    def _covers(self, x):
        up = self.ascend(x)
        cols = self.columns(x)
        n, N, q = self.n, self.N, self.q
        out = []
        for c in self._lines:
            v = kernel.combine(up[1], c, n, N, q)
            out.append(self.from_columns(cols + [v]))
        return out

    def _cocovers(self, x):
        down = self.descend(x)
        n, N, q = self.n, self.N, self.q
        downcols = self.columns(down)
        out = []
        for c in self._lines:
            gens = [kernel.combine(x[1], v, n, N, q) for v in _nullspace(c, q)]
            out.append(self.from_columns(downcols + gens))
        return out

    def valuation(self, x):
        return -sum(x[0])

    def h_value(self, x) -> int:
        return sum(x[0])

    def sort_key(self, x):
        return x

    # --- exact views -------------------------------------------------------------
    def to_matrix(self, x) -> RatMatrix:
        q, B, N, n = self.q, self.B, self.N, self.n
        cols = []
        for j, col in enumerate(self.columns(x)):
            if x[0][j] == B:
                entries = [RationalFunction.zero(q)] * n
                entries[j] = RationalFunction.t_power(B, q)
            else:
                entries = [RationalFunction.laurent(col[r * N:(r + 1) * N], -B, q) for r in range(n)]
            cols.append(entries)
        return RatMatrix.from_columns(cols, q)

    def vector_to_window(self, vec) -> list:
        """Window image of an exact vector; raises if some entry has val < -B."""
        out = []
        for f in vec:
            if f.val() < -self.B:
                raise WindowExceeded("vector leaves the window")
            out.extend(f.laurent_coefficients(-self.B, self.B))
        return out

    def from_matrix(self, M: RatMatrix):
        """Module spanned by the columns of M; must lie in the window."""
        if M.rows != self.n or M.p != self.q:
            raise ValueError("matrix shape or field mismatch")
        H = dvr_hermite(M)
        cols = [self.vector_to_window(c) for c in H.columns()]
        x = self.from_columns(cols)
        # t^B R^n must already be inside the span
        for i in range(self.n):
            e = [RationalFunction.zero(self.q)] * self.n
            e[i] = RationalFunction.t_power(self.B, self.q)
            if not module_contains(H, e):
                raise WindowExceeded("module does not contain t^B R^n")
        return x

    def encode(self, x):
        return {"basis": self.to_matrix(x).to_json()}

    def decode(self, obj):
        if not isinstance(obj, dict) or set(obj) != {"basis"}:
            raise ValueError(f"expected {{'basis': [[...]]}}, got {obj!r}")
        M = RatMatrix.from_json(obj["basis"], self.q)
        return self.from_matrix(M)

    @property
    def base(self):
        return self.diagonal([0] * self.n)

    def random_element(self, rng, radius: int | None = None):
        """Random module between t^r R^n and t^-r R^n."""
        r = self.sample_radius if radius is None else radius
        n, N, B, q = self.n, self.N, self.B, self.q
        gens = [self.unit_vector(i, r) for i in range(n)] if r < B else []
        for _ in range(rng.randint(1, n + 1)):
            v = [0] * (n * N)
            for i in range(n):
                for e in range(-r, r):
                    v[i * N + e + B] = rng.randrange(q)
            gens.append(v)
        return self.from_columns(gens)
