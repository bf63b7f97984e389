"""Generic uniform modular lattice interface and the finite-interval toolkit.

An instance subclasses :class:`Lattice` and supplies meet, join, covers,
cocovers and an element encoding.  Everything else (ranks, intervals,
complements, Boolean skeletons, relative positions) is written once here
against that interface.
"""

from __future__ import annotations

import json
import random
from collections import deque
from typing import Any, Hashable, Iterable, Optional, Sequence

Element = Hashable

DEFAULT_CAP = 20000


class LatticeError(Exception):
    """Base class for precondition failures on lattice operations."""


class OrderError(LatticeError, ValueError):
    pass


class ChainError(LatticeError, ValueError):
    pass


class CapExceeded(LatticeError):
    pass


class BrokenInstance(LatticeError, AssertionError):
    """The instance violates an axiom it is supposed to satisfy."""


class _Cache(dict):
    __slots__ = ("limit",)

    def __init__(self, limit):
        super().__init__()
        self.limit = limit

    def put(self, key, value):
        if len(self) >= self.limit:
            self.clear()
        self[key] = value
        return value


class Lattice:
    """A uniform modular lattice given by its capability set.

    Subclasses implement ``_meet``, ``_join``, ``_covers``, ``_cocovers``,
    ``encode`` and ``decode`` and set ``n``.  Overriding ``_ascend``,
    ``_descend`` and ``valuation`` is optional; the generic versions follow the
    definitions (join of covers, meet of cocovers).
    """

    n: int = 0
    kind = "abstract"
    cache_limit = 200000

    def __init__(self):
        self._caches = {}

    def _cache(self, name):
        c = self._caches.get(name)
        if c is None:
            c = self._caches[name] = _Cache(self.cache_limit)
        return c

    # --- required capabilities -------------------------------------------
    def _meet(self, x, y):
        raise NotImplementedError

    def _join(self, x, y):
        raise NotImplementedError

    def _covers(self, x) -> list:
        raise NotImplementedError

    def _cocovers(self, x) -> list:
        raise NotImplementedError

    def encode(self, x) -> Any:
        raise NotImplementedError

    def decode(self, obj) -> Element:
        raise NotImplementedError

    # --- cached front ends -------------------------------------------------
    def meet(self, x, y):
        if x == y:
            return x
        key = (x, y) if hash(x) <= hash(y) else (y, x)
        c = self._cache("meet")
        r = c.get(key)
        if r is None:
            r = c.put(key, self._meet(*key))
        return r

    def join(self, x, y):
        if x == y:
            return x
        key = (x, y) if hash(x) <= hash(y) else (y, x)
        c = self._cache("join")
        r = c.get(key)
        if r is None:
            r = c.put(key, self._join(*key))
        return r

    def leq(self, x, y) -> bool:
        return x == y or self.meet(x, y) == x

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def covers(self, x) -> list:
        c = self._cache("covers")
        r = c.get(x)
        if r is None:
            r = c.put(x, sorted(self._covers(x), key=self.sort_key))
        return r

    def cocovers(self, x) -> list:
        c = self._cache("cocovers")
        r = c.get(x)
        if r is None:
            r = c.put(x, sorted(self._cocovers(x), key=self.sort_key))
        return r

    def ascend(self, x):
        c = self._cache("ascend")
        r = c.get(x)
        if r is None:
            r = c.put(x, self._ascend(x))
        return r

    def descend(self, x):
        c = self._cache("descend")
        r = c.get(x)
        if r is None:
            r = c.put(x, self._descend(x))
        return r

    def _ascend(self, x):
        return ascend_generic(self, x)

    def _descend(self, x):
        return descend_generic(self, x)

    def valuation(self, x) -> Optional[int]:
        """A valuation with unit steps along covers, or None if not offered."""
        return None

    @property
    def has_valuation(self) -> bool:
        return type(self).valuation is not Lattice.valuation

    # --- misc ---------------------------------------------------------------
    def sort_key(self, x):
        return json.dumps(self.encode(x), sort_keys=True, separators=(",", ":"))

    @property
    def base(self):
        raise NotImplementedError

    def random_element(self, rng: random.Random):
        raise NotImplementedError

    def config(self) -> dict:
        return {"kind": self.kind, "n": self.n}

    def encode_chain(self, chain):
        return [self.encode(c) for c in chain]

    def decode_chain(self, data):
        return [self.decode(c) for c in data]


def ascend_generic(L: Lattice, x):
    cov = L.covers(x)
    if not cov:
        raise BrokenInstance("element has no covers")
    r = cov[0]
    for c in cov[1:]:
        r = L.join(r, c)
    return r


def descend_generic(L: Lattice, x):
    cov = L.cocovers(x)
    if not cov:
        raise BrokenInstance("element has no cocovers")
    r = cov[0]
    for c in cov[1:]:
        r = L.meet(r, c)
    return r


class Opposite(Lattice):
    """The order dual of a lattice: meet/join and covers/cocovers swapped."""

    def __init__(self, inner: Lattice):
        super().__init__()
        self.inner = inner
        self.n = inner.n
        self.kind = "opposite:" + inner.kind

    def _meet(self, x, y):
        return self.inner.join(x, y)

    def _join(self, x, y):
        return self.inner.meet(x, y)

    def leq(self, x, y):
        return self.inner.leq(y, x)

    def _covers(self, x):
        return self.inner.cocovers(x)

    def _cocovers(self, x):
        return self.inner.covers(x)

    def _ascend(self, x):
        return self.inner.descend(x)

    def _descend(self, x):
        return self.inner.ascend(x)

    def valuation(self, x):
        v = self.inner.valuation(x)
        return None if v is None else -v

    @property
    def has_valuation(self):
        return self.inner.has_valuation

    def encode(self, x):
        return self.inner.encode(x)

    def decode(self, obj):
        return self.inner.decode(obj)

    def sort_key(self, x):
        return self.inner.sort_key(x)

    @property
    def base(self):
        return self.inner.base

    def random_element(self, rng):
        return self.inner.random_element(rng)


# ---------------------------------------------------------------------------
# ranks and intervals


def shift(L: Lattice, x, k: int):
    """k-fold ascend (k >= 0) or |k|-fold descend."""
    if k >= 0:
        for _ in range(k):
            x = L.ascend(x)
    else:
        for _ in range(-k):
            x = L.descend(x)
    return x


def shift_chain(L: Lattice, chain, k: int) -> list:
    return [shift(L, c, k) for c in chain]


def interval_rank(L: Lattice, x, y, greedy: bool = False) -> int:
    """Length of a maximal chain from x to y.

    Uses the instance valuation when present; ``greedy=True`` forces the
    walk through covers restricted to the interval.
    """
    if not L.leq(x, y):
        raise OrderError("interval_rank needs x <= y")
    if L.has_valuation and not greedy:
        return L.valuation(y) - L.valuation(x)
    r = 0
    while x != y:
        for c in L.covers(x):
            if L.leq(c, y):
                x = c
                break
        else:
            raise BrokenInstance("no cover of x below y")
        r += 1
    return r


def relative_valuation(L: Lattice, base, x, greedy: bool = False) -> int:
    if L.has_valuation and not greedy:
        return L.valuation(x) - L.valuation(base)
    m = L.meet(x, base)
    return interval_rank(L, m, x, greedy) - interval_rank(L, m, base, greedy)


def enumerate_interval(L: Lattice, x, y, cap: int = DEFAULT_CAP) -> list:
    """All z with x <= z <= y, sorted by canonical key."""
    if not L.leq(x, y):
        raise OrderError("enumerate_interval needs x <= y")
    seen = {x}
    queue = deque([x])
    while queue:
        z = queue.popleft()
        if z == y:
            continue
        for c in L.covers(z):
            if c not in seen and L.leq(c, y):
                seen.add(c)
                if len(seen) > cap:
                    raise CapExceeded(f"interval has more than {cap} elements")
                queue.append(c)
    return sorted(seen, key=L.sort_key)


def _scan_order(L: Lattice, items: Iterable, rng: Optional[random.Random]) -> list:
    items = sorted(items, key=L.sort_key)
    if rng is not None:
        rng.shuffle(items)
    return items


def leq_shift(L: Lattice, x, y) -> int:
    """Least k >= 0 with x <= shift(y, k)."""
    k = 0
    z = y
    bound = None
    while not L.leq(x, z):
        if bound is None:
            bound = interval_rank(L, L.meet(x, y), x)
        k += 1
        if k > bound:
            raise BrokenInstance("leq_shift exceeded the rank bound")
        z = L.ascend(z)
    return k


# ---------------------------------------------------------------------------
# chains


def check_chain(L: Lattice, chain: Sequence) -> list:
    chain = list(chain)
    for a, b in zip(chain, chain[1:]):
        if not L.lt(a, b):
            raise ChainError("elements do not form a strictly increasing chain")
    return chain


def is_short(L: Lattice, chain: Sequence) -> bool:
    chain = list(chain)
    if not chain:
        return False
    try:
        check_chain(L, chain)
    except ChainError:
        return False
    return L.leq(chain[-1], L.ascend(chain[0]))


def check_short(L: Lattice, chain: Sequence) -> list:
    chain = check_chain(L, chain)
    if not chain:
        raise ChainError("empty chain")
    if not L.leq(chain[-1], L.ascend(chain[0])):
        raise ChainError("chain is not short")
    return chain


def refine_chain(L: Lattice, chain: Sequence, rng: Optional[random.Random] = None) -> list:
    """Insert covers between consecutive elements until the chain is maximal."""
    chain = check_chain(L, chain)
    out = [chain[0]]
    for b in chain[1:]:
        a = out[-1]
        while a != b:
            cands = [c for c in L.covers(a) if L.leq(c, b)]
            if not cands:
                raise BrokenInstance("no cover toward the next chain element")
            a = _scan_order(L, cands, rng)[0] if rng is not None else cands[0]
            out.append(a)
    return out


def maximal_in_interval(L: Lattice, bottom, top, chain: Sequence = (), rng=None) -> list:
    """A maximal chain of [bottom, top] through every element of ``chain``."""
    pts = {bottom, top}
    for c in chain:
        if not (L.leq(bottom, c) and L.leq(c, top)):
            raise ChainError("chain element outside the interval")
        pts.add(c)
    pts = sorted(pts, key=lambda z: L.valuation(z) if L.has_valuation else interval_rank(L, bottom, z))
    return refine_chain(L, pts, rng)


def maximalize_short(L: Lattice, chain: Sequence, rng=None) -> list:
    """Refine a short chain to a maximal one x ... ascend(x)."""
    chain = check_short(L, chain)
    x = chain[0]
    top = L.ascend(x)
    if chain[-1] != top:
        chain = chain + [top]
    return refine_chain(L, chain, rng)


def is_maximal_short(L: Lattice, chain: Sequence) -> bool:
    chain = list(chain)
    if len(chain) != L.n + 1 or chain[-1] != L.ascend(chain[0]):
        return False
    return all(b in L.covers(a) for a, b in zip(chain, chain[1:]))


def dedupe(items: Iterable) -> list:
    seen = set()
    out = []
    for x in items:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


# ---------------------------------------------------------------------------
# complemented modular toolkit


def in_generated(L: Lattice, c, p, q) -> bool:
    """Whether c lies in the sublattice generated by [b,p] and [b,q].

    For complements p, q of a complemented modular interval this sublattice is
    {u v w : u <= p, w <= q}, so membership reduces to c = (c^p) v (c^q).
    """
    return L.join(L.meet(c, p), L.meet(c, q)) == c


def find_complement(L: Lattice, bottom, top, p, C: Sequence = (), rng=None, cap=DEFAULT_CAP):
    """A complement q of p in [bottom, top] whose pairing with p generates C."""
    if not (L.leq(bottom, p) and L.leq(p, top)):
        raise OrderError("p outside [bottom, top]")
    if p == bottom:
        return top
    if p == top:
        return bottom
    vb = L.valuation(bottom) if L.has_valuation else None
    vp = L.valuation(p) if L.has_valuation else None
    for q in _scan_order(L, enumerate_interval(L, bottom, top, cap), rng):
        if vb is not None:
            # p^q = bottom and p v q = top force the ranks to add up
            if L.valuation(q) - vb + vp - vb != L.valuation(top) - vb:
                continue
        if L.join(p, q) != top or L.meet(p, q) != bottom:
            continue
        if all(in_generated(L, c, p, q) for c in C):
            return q
    raise BrokenInstance("no complement found; interval not complemented modular")


def atoms_join(L: Lattice, bottom, atoms) -> Any:
    r = bottom
    for a in atoms:
        r = L.join(r, a)
    return r


def in_boolean(L: Lattice, bottom, atoms, c) -> bool:
    """Membership in the Boolean sublattice generated by independent atoms."""
    return atoms_join(L, bottom, [a for a in atoms if L.leq(a, c)]) == c


def boolean_skeleton(L: Lattice, bottom, top, C: Sequence = (), D: Sequence = (), rng=None) -> list:
    """Independent atoms of [bottom, top] generating chains C and D."""
    r = interval_rank(L, bottom, top)
    if r == 0:
        return []
    Cm = maximal_in_interval(L, bottom, top, C, rng)
    co = Cm[-2]
    Dp = dedupe(L.meet(d, co) for d in D)
    atoms = boolean_skeleton(L, bottom, co, Cm[:-1], Dp, rng)
    q = find_complement(L, bottom, top, co, D, rng)
    atoms = atoms + [q]
    if atoms_join(L, bottom, atoms) != top:
        raise BrokenInstance("boolean skeleton atoms do not join to top")
    for c in list(C) + list(D):
        if not in_boolean(L, bottom, atoms, c):
            raise BrokenInstance("boolean skeleton misses a chain element")
    return atoms


def spherical_relative_position(L: Lattice, bottom, top, C: Sequence, y) -> list:
    C = check_chain(L, C)
    if C[0] != bottom or C[-1] != top or len(C) - 1 != interval_rank(L, bottom, top):
        raise ChainError("C must be a maximal chain of [bottom, top]")
    if not (L.leq(bottom, y) and L.leq(y, top)):
        raise OrderError("y outside [bottom, top]")
    prev = L.meet(C[0], y)
    bits = []
    for c in C[1:]:
        cur = L.meet(c, y)
        bits.append(1 if cur != prev else 0)
        prev = cur
    return bits


def relative_position(L: Lattice, C: Sequence, y) -> list:
    """Coordinates of y with respect to a maximal short chain C."""
    C = list(C)
    if not is_maximal_short(L, C):
        raise ChainError("relative_position needs a maximal short chain")
    n = L.n
    k = leq_shift(L, C[0], y)
    Cs = shift_chain(L, C, -k)
    z = [0] * n
    cur = Cs[0]
    j = 1
    level = Cs
    while cur != y:
        nxt = L.meet(L.ascend(cur), y)
        if nxt == cur:
            raise BrokenInstance("relative position iteration stalled")
        prev = L.meet(level[0], y)
        step = 0
        for i in range(1, n + 1):
            m = L.meet(level[i], y)
            if m != prev:
                z[i - 1] += 1
                step += 1
            prev = m
        if L.has_valuation and step != L.valuation(nxt) - L.valuation(cur):
            raise BrokenInstance("relative position step disagrees with rank")
        cur = nxt
        j += 1
        level = [L.ascend(c) for c in level]
    return [v - k for v in z]


def independent(L: Lattice, base, atoms) -> bool:
    return interval_rank(L, base, atoms_join(L, base, atoms)) == len(atoms)
