"""The lattice V x Z attached to a (d0, d1)-biregular tree.

A vertex is the tuple of child indices on the path from the root.  The root
has color 0 and d0 children; any other vertex of color c has d_c - 1
children.  Nothing is materialized: adjacency is read off the path.
"""

from __future__ import annotations

from ..core import Lattice


class Tree(Lattice):
    kind = "tree"
    n = 2

    def __init__(self, d0: int = 3, d1: int = 3):
        super().__init__()
        if d0 < 2 or d1 < 2:
            raise ValueError("tree degrees must be at least 2")
        self.d = (d0, d1)

    def config(self):
        return {"kind": self.kind, "n": 2, "d0": self.d[0], "d1": self.d[1]}

    # --- tree structure ------------------------------------------------------
    def color(self, v) -> int:
        return len(v) % 2

    def n_children(self, v) -> int:
        if not v:
            return self.d[0]
        return self.d[len(v) % 2] - 1

    def valid_vertex(self, v) -> bool:
        for i in range(len(v)):
            c = v[i]
            if not isinstance(c, int) or isinstance(c, bool) or not 0 <= c < self.n_children(v[:i]):
                return False
        return True

    def neighbors(self, v) -> list:
        out = [v + (i,) for i in range(self.n_children(v))]
        if v:
            out.insert(0, v[:-1])
        return out

    def path(self, u, v) -> list:
        """Vertices of the unique path from u to v."""
        k = 0
        while k < len(u) and k < len(v) and u[k] == v[k]:
            k += 1
        up = [u[:i] for i in range(len(u), k - 1, -1)]
        down = [v[:i] for i in range(k + 1, len(v) + 1)]
        return up + down

    # --- lattice --------------------------------------------------------------
    def valuation(self, x):
        v, k = x
        return len(v) % 2 + 2 * k

    def _coords(self, x, l0, i):
        val = self.valuation(x)
        idx = i + l0
        return (val + idx) // 2, (val - idx) // 2

    def _path_op(self, x, y, op):
        p = self.path(x[0], y[0])
        l0 = self.color(x[0])
        a1, b1 = self._coords(x, l0, 0)
        a2, b2 = self._coords(y, l0, len(p) - 1)
        a, b = op(a1, a2), op(b1, b2)
        idx = a - b
        val = a + b
        i = idx - l0
        if not 0 <= i < len(p):
            raise AssertionError("path coordinates left the path")
        v = p[i]
        return (v, (val - self.color(v)) // 2)

    def _meet(self, x, y):
        return self._path_op(x, y, min)

    def _join(self, x, y):
        return self._path_op(x, y, max)

    def leq(self, x, y):
        if x == y:
            return True
        return self._meet(x, y) == x

    def _covers(self, x):
        v, k = x
        k2 = k if self.color(v) == 0 else k + 1
        return [(w, k2) for w in self.neighbors(v)]

    def _cocovers(self, x):
        v, k = x
        k2 = k - 1 if self.color(v) == 0 else k
        return [(w, k2) for w in self.neighbors(v)]

    def _ascend(self, x):
        return (x[0], x[1] + 1)

    def _descend(self, x):
        return (x[0], x[1] - 1)

    def sort_key(self, x):
        return (len(x[0]), x[0], x[1])

    def encode(self, x):
        return {"path": list(x[0]), "k": x[1]}

    def decode(self, obj):
        if not isinstance(obj, dict) or set(obj) != {"path", "k"}:
            raise ValueError(f"expected {{'path': [...], 'k': int}}, got {obj!r}")
        v = tuple(obj["path"]) if isinstance(obj["path"], list) else None
        k = obj["k"]
        if v is None or not self.valid_vertex(v) or not isinstance(k, int) or isinstance(k, bool):
            raise ValueError(f"invalid tree element {obj!r}")
        return (v, k)

    @property
    def base(self):
        return ((), 0)

    def random_element(self, rng, depth: int = 4, radius: int = 3):
        v = ()
        for _ in range(rng.randint(0, depth)):
            v = v + (rng.randrange(self.n_children(v)),)
        return (v, rng.randint(-radius, radius))
