"""The lattice Z^n with the componentwise order."""

from __future__ import annotations

from ..core import Lattice


class Zn(Lattice):
    kind = "zn"

    def __init__(self, n: int):
        super().__init__()
        if not isinstance(n, int) or n < 1:
            raise ValueError("n must be a positive integer")
        self.n = n

    def _check(self, x):
        if len(x) != self.n:
            raise ValueError(f"expected a vector of length {self.n}")

    def _meet(self, x, y):
        self._check(x)
        self._check(y)
        return tuple(min(a, b) for a, b in zip(x, y))

    def _join(self, x, y):
        self._check(x)
        self._check(y)
        return tuple(max(a, b) for a, b in zip(x, y))

    def leq(self, x, y):
        return all(a <= b for a, b in zip(x, y))

    def _covers(self, x):
        return [x[:i] + (x[i] + 1,) + x[i + 1:] for i in range(self.n)]

    def _cocovers(self, x):
        return [x[:i] + (x[i] - 1,) + x[i + 1:] for i in range(self.n)]

    def _ascend(self, x):
        return tuple(a + 1 for a in x)

    def _descend(self, x):
        return tuple(a - 1 for a in x)

    def valuation(self, x):
        return sum(x)

    def sort_key(self, x):
        return x

    def encode(self, x):
        return list(x)

    def decode(self, obj):
        if not isinstance(obj, list) or len(obj) != self.n or not all(
            isinstance(a, int) and not isinstance(a, bool) for a in obj
        ):
            raise ValueError(f"expected a list of {self.n} integers, got {obj!r}")
        return tuple(obj)

    @property
    def base(self):
        return (0,) * self.n

    def random_element(self, rng, radius: int = 3):
        return tuple(rng.randint(-radius, radius) for _ in range(self.n))
