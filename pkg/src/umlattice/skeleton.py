"""Segments, rays, frames and Z^n-skeletons (apartments) of a uniform lattice.

The main entry point is :func:`skeleton_from_chains`, which builds a
skeleton containing two given short chains by the backward frame-extension
induction.  Every intermediate claim of that induction is checked at run
time; a failed check raises :class:`ConstructionError` with a JSON dump of the
construction state.
"""

from __future__ import annotations

import itertools
import json
import random
from typing import Optional, Sequence

from .core import (
    BrokenInstance,
    ChainError,
    Lattice,
    atoms_join,
    boolean_skeleton,
    check_short,
    dedupe,
    find_complement,
    interval_rank,
    leq_shift,
    maximalize_short,
    relative_position,
    shift,
    shift_chain,
)


class ConstructionError(AssertionError):
    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state or {}

    def dump(self) -> str:
        return json.dumps({"error": str(self), "state": self.state}, sort_keys=True)


class FrameError(ValueError):
    pass


# ---------------------------------------------------------------------------
# segments and rays


def is_segment(L: Lattice, seg: Sequence) -> bool:
    seg = list(seg)
    for a, b in zip(seg, seg[1:]):
        if b not in L.covers(a):
            return False
    for l in range(1, len(seg) - 1):
        if L.leq(seg[l + 1], L.ascend(seg[l - 1])):
            return False
    return True


def extend_ray(L: Lattice, seg: Sequence, rng: Optional[random.Random] = None) -> list:
    """Append one atom to a segment keeping the segment condition."""
    seg = list(seg)
    top = seg[-1]
    cands = list(L.covers(top))
    if rng is not None:
        rng.shuffle(cands)
    if len(seg) == 1:
        return seg + [cands[0]]
    target = L.ascend(top)
    prev_up = L.ascend(seg[-2])
    for a in cands:
        if L.join(a, prev_up) == target:
            return seg + [a]
    raise BrokenInstance("segment cannot be extended")


class Frame:
    """A partial k-frame: k segments (rays) from a common base."""

    def __init__(self, L: Lattice, base, rays, rng=None):
        self.L = L
        self.base = base
        self.rays = [list(r) for r in rays]
        self.rng = rng
        for r in self.rays:
            if not r or r[0] != base:
                raise FrameError("every ray must start at the base")

    @property
    def k(self) -> int:
        return len(self.rays)

    @property
    def lengths(self) -> list:
        return [len(r) - 1 for r in self.rays]

    def copy(self) -> "Frame":
        return Frame(self.L, self.base, [list(r) for r in self.rays], self.rng)

    def ensure(self, i: int, length: int):
        r = self.rays[i]
        while len(r) - 1 < length:
            r[:] = extend_ray(self.L, r, self.rng)

    def __call__(self, z, extend: bool = True):
        return frame_eval(self.L, self, z, extend=extend)

    def first_atoms(self) -> list:
        return [r[1] for r in self.rays]

    def is_valid(self) -> bool:
        L = self.L
        if not all(is_segment(L, r) for r in self.rays):
            return False
        if any(len(r) < 2 for r in self.rays):
            return False
        a = self.first_atoms()
        if not L.leq(atoms_join(L, self.base, a), L.ascend(self.base)):
            return False
        return interval_rank(L, self.base, atoms_join(L, self.base, a)) == len(a)

    def member(self, u) -> Optional[list]:
        """Coordinates z with self(z) == u, or None if u is not in <frame>."""
        L = self.L
        if not L.leq(self.base, u):
            return None
        z = []
        for r in self.rays:
            l = 0
            while l + 1 < len(r) and L.leq(r[l + 1], u):
                l += 1
            z.append(l)
        return z if frame_eval(L, self, z, extend=False, check=False) == u else None

    def to_json(self) -> dict:
        enc = self.L.encode
        return {"base": enc(self.base), "rays": [[enc(a) for a in r] for r in self.rays]}


def frame_eval(L: Lattice, F: Frame, z, extend: bool = True, check: bool = True):
    """alpha(z) = join of a_i^{z_i}; the rank from the base must be sum(z)."""
    if len(z) != F.k:
        raise FrameError("coordinate vector length does not match the frame")
    if any(v < 0 for v in z):
        raise FrameError("negative frame coordinates")
    u = F.base
    for i, v in enumerate(z):
        if v >= len(F.rays[i]):
            if not extend:
                raise FrameError("ray prefix too short")
            F.ensure(i, v)
        u = L.join(u, F.rays[i][v])
    if check and L.has_valuation and L.valuation(u) - L.valuation(F.base) != sum(z):
        raise BrokenInstance("frame rank identity fails")
    return u


def frame_lift(L: Lattice, F: Frame, p) -> Frame:
    """The frame b_i^l = p v a_i^l at p."""
    if L.meet(p, atoms_join(L, F.base, F.first_atoms())) != F.base:
        raise FrameError("p does not meet the first atoms in the base")
    return Frame(L, p, [[L.join(p, a) for a in r] for r in F.rays], F.rng)


# ---------------------------------------------------------------------------
# skeletons


class ZnSkeleton:
    """The Z^n-skeleton generated by a frame at ``base``.

    Points with all coordinates >= -anchor are read off a copy of the frame
    pushed down by ``anchor`` steps, which keeps ray extensions low in the
    lattice; deeper points are reached by descending.
    """

    def __init__(self, L: Lattice, frame: Frame, anchor: int = 2):
        if frame.k != L.n:
            raise FrameError("a skeleton needs a frame with n rays")
        self.L = L
        self.frame = frame
        self.base = frame.base
        self.anchor = anchor
        self.deep = Frame(L, shift(L, frame.base, -anchor),
                          [shift_chain(L, r, -anchor) for r in frame.rays], frame.rng)
        self._memo = {}

    @property
    def n(self):
        return self.L.n

    def element_at(self, z):
        z = tuple(z)
        r = self._memo.get(z)
        if r is not None:
            return r
        k = max(self.anchor, -min(z))
        w = [v + k for v in z]
        r = shift(self.L, self.deep(w), self.anchor - k)
        self._memo[z] = r
        return r

    def base_chain(self) -> list:
        n = self.n
        return [self.element_at([1] * i + [0] * (n - i)) for i in range(n + 1)]

    def coordinates_of(self, y) -> Optional[list]:
        return coordinates_of(self, y)

    def to_json(self) -> dict:
        d = self.frame.to_json()
        d["anchor"] = self.anchor
        return d

    @classmethod
    def from_json(cls, L: Lattice, data: dict) -> "ZnSkeleton":
        base = L.decode(data["base"])
        rays = [[L.decode(a) for a in r] for r in data["rays"]]
        F = Frame(L, base, rays)
        if not F.is_valid():
            raise FrameError("rays do not form a frame")
        return cls(L, F, int(data.get("anchor", 2)))


def coordinates_of(S: ZnSkeleton, y) -> Optional[list]:
    z = relative_position(S.L, S.base_chain(), y)
    return z if S.element_at(z) == y else None


def chain_coordinates(S: ZnSkeleton, C: Sequence, y) -> Optional[list]:
    """Coordinates of y in S re-expressed against a maximal short chain C of S.

    If C corresponds to 0 < e_s1 < e_s1 + e_s2 < ... in S, the result is
    (z_s1 - c_s1, z_s2 - c_s2, ...) where c is the coordinate of C[0].
    """
    pts = [coordinates_of(S, c) for c in C]
    zy = coordinates_of(S, y)
    if zy is None or any(p is None for p in pts):
        return None
    order = []
    for a, b in zip(pts, pts[1:]):
        diff = [v - u for u, v in zip(a, b)]
        order.append(diff.index(1))
    return [zy[i] - pts[0][i] for i in order]


def window_points(n: int, w: int):
    return itertools.product(range(-w, w + 1), repeat=n)


def window_check(S: ZnSkeleton, w: int = 2, pairs: Optional[int] = 400, rng=None) -> list:
    """Check skeleton invariants on the coordinate window [-w, w]^n.

    Returns a list of failure descriptions (empty on success).  ``pairs``
    bounds the number of (z, z') pairs used for the meet/join check; None
    means all pairs.
    """
    L = S.L
    pts = [tuple(z) for z in window_points(S.n, w)]
    val = {z: S.element_at(z) for z in pts}
    fails = []
    if len(set(val.values())) != len(pts):
        fails.append({"check": "injective"})
    for z in pts:
        up = tuple(v + 1 for v in z)
        if L.ascend(val[z]) != S.element_at(up):
            fails.append({"check": "ascend", "z": list(z)})
    allpairs = list(itertools.combinations(pts, 2))
    if pairs is not None and len(allpairs) > pairs:
        rng = rng or random.Random(0)
        allpairs = rng.sample(allpairs, pairs)
    for a, b in allpairs:
        lo = tuple(min(u, v) for u, v in zip(a, b))
        hi = tuple(max(u, v) for u, v in zip(a, b))
        if L.meet(val[a], val[b]) != val[lo]:
            fails.append({"check": "meet", "z": list(a), "w": list(b)})
        if L.join(val[a], val[b]) != val[hi]:
            fails.append({"check": "join", "z": list(a), "w": list(b)})
    return fails


# ---------------------------------------------------------------------------
# the construction


class _Recorder:
    def __init__(self, L):
        self.L = L
        self.state = {}

    def put(self, key, value):
        enc = self.L.encode
        if isinstance(value, list):
            self.state[key] = [enc(v) for v in value]
        else:
            self.state[key] = enc(value)

    def fail(self, msg):
        raise ConstructionError(msg, dict(self.state))

    def check(self, cond, msg):
        if not cond:
            self.fail(msg)


def skeleton_from_chains(L: Lattice, C: Sequence, D: Sequence, rng=None,
                         anchor: int = 2, verify: bool = True) -> ZnSkeleton:
    """A Z^n-skeleton containing the short chains C and D."""
    if isinstance(rng, int):
        rng = random.Random(rng)
    rec = _Recorder(L)
    C = check_short(L, C)
    D = check_short(L, D)
    rec.put("C_input", C)
    rec.put("D_input", D)
    try:
        return _construct(L, C, D, rng, anchor, verify, rec)
    except ConstructionError:
        raise
    except (BrokenInstance, AssertionError, ChainError) as exc:
        raise ConstructionError(f"{type(exc).__name__}: {exc}", dict(rec.state)) from exc


def _construct(L, C, D, rng, anchor, verify, rec):
    # (i) maximal short chains
    C = maximalize_short(L, C, rng)
    D = maximalize_short(L, D, rng)
    # (ii) shift D so that x <= y
    x = C[0]
    k = leq_shift(L, x, D[0])
    D = shift_chain(L, D, k)
    y = D[0]
    rec.put("C", C)
    rec.put("D", D)
    rec.state["shift"] = k
    rec.check(L.leq(x, y), "x <= y after shifting D")
    # (iii) the sequences x_j, C_j, y_j, D_j, h_j
    xs = [x]
    while xs[-1] != y:
        nxt = L.meet(L.ascend(xs[-1]), y)
        rec.check(nxt != xs[-1], "x_j sequence stalled")
        xs.append(nxt)
    m = len(xs) - 1
    rec.put("x_seq", xs)

    def P(j):
        return x if j == 0 else L.ascend(xs[j - 1])

    Cs = [C]
    for j in range(1, m + 1):
        Cs.append(dedupe(L.ascend(L.meet(c, xs[j])) for c in Cs[-1]))
    ys = [y] + [L.join(P(j), y) for j in range(1, m + 1)]
    Ds = [dedupe(L.join(d, yj) for d in D) for yj in ys]
    hs = []
    for j in range(m):
        if j == 0:
            h = xs[1]
        else:
            h = L.join(xs[j + 1], P(j))
            rec.check(h == L.meet(L.ascend(xs[j]), ys[j]), "two expressions of h_j differ")
        hs.append(h)
    rec.put("y_seq", ys)
    rec.put("h_seq", hs)
    top = L.ascend(y)

    # (iv) base case
    bottom = P(m)
    atoms = boolean_skeleton(L, bottom, top, Cs[m], Ds[m], rng)
    frame = Frame(L, bottom, [[bottom, a] for a in atoms], rng)
    rec.state["level"] = m
    rec.put("frame_base", bottom)
    if verify:
        _verify_frame(L, frame, Cs[m], Ds[m], rec, "base case")

    # (v) backward extension
    for j in range(m - 1, -1, -1):
        rec.state["level"] = j
        Pj = P(j)
        s = frame.lengths
        rec.check(frame([1] * frame.k, extend=False) == L.ascend(xs[j + 1]), "alpha(1) != (x_{j+1})^+")
        rec.check(frame(s, extend=False) == top, "alpha(s) != y^+")
        brays = [[L.join(Pj, L.descend(a)) for a in r] for r in frame.rays]
        beta = Frame(L, Pj, brays, rng)
        u = find_complement(L, ys[j], top, ys[j + 1], Ds[j], rng)
        rec.put("u", u)
        rec.check(L.meet(L.ascend(xs[j]), u) == hs[j], "u is not a complement of (x_j)^+ in [h_j, y^+]")
        for i in range(frame.k):
            si = s[i]
            zi = [1] * frame.k
            zi[i] = si
            p = beta(zi, extend=False)
            tgt = L.meet(frame.rays[i][si], u)
            rec.check(p in L.cocovers(tgt), "beta(1+(s_i-1)e_i) not covered by a_i^{s_i} ^ u")
            rec.check(L.leq(beta.rays[i][si], p), "b_i^{s_i} above beta point")
            nb = find_complement(L, beta.rays[i][si], tgt, p, (), rng)
            beta.rays[i].append(nb)
        cs = boolean_skeleton(
            L, ys[j], ys[j + 1],
            dedupe(L.join(c, ys[j]) for c in Cs[j]),
            dedupe(L.meet(d, ys[j + 1]) for d in Ds[j]),
            rng,
        )
        v = find_complement(L, Pj, L.ascend(xs[j]), hs[j], Cs[j], rng)
        rec.put("v", v)
        for c in cs:
            beta.rays.append([Pj, L.meet(c, v)])
        frame = beta
        rec.put("frame_base", Pj)
        if verify:
            _verify_frame(L, frame, Cs[j], Ds[j], rec, f"level {j}")
            s = frame.lengths
            rec.check(frame([1] * frame.k, extend=False) == L.ascend(xs[j]), "beta(1) != (x_j)^+")
            rec.check(frame(s, extend=False) == top, "beta(s) != y^+")
    rec.check(frame.k == L.n, f"final frame has {frame.k} rays, expected {L.n}")
    rec.check(frame.base == x, "final frame is not based at x")
    S = ZnSkeleton(L, frame, anchor)
    if verify:
        for c in C + shift_chain(L, D, -k):
            rec.check(coordinates_of(S, c) is not None, "skeleton misses a chain element")
    return S


def _verify_frame(L, frame, Cj, Dj, rec, where):
    rec.check(frame.is_valid(), f"{where}: not a partial frame")
    for c in list(Cj) + list(Dj):
        if frame.member(c) is None:
            rec.put("missing", c)
            rec.fail(f"{where}: frame does not generate a chain element")


def random_short_chain(L: Lattice, rng: random.Random, x=None, maximal: bool = False) -> list:
    """A random short chain starting at x (random element if None)."""
    if x is None:
        x = L.random_element(rng)
    top = L.ascend(x)
    chain = [x]
    cur = x
    while cur != top:
        cur = rng.choice([c for c in L.covers(cur) if L.leq(c, top)])
        chain.append(cur)
    if maximal:
        return chain
    keep = sorted(rng.sample(range(1, len(chain)), rng.randint(0, len(chain) - 1)))
    return [x] + [chain[i] for i in keep]
