"""The simplicial complex C(L) of a uniform modular lattice and its inverse.

Vertices of C(L) are classes of L under x ~ ascend^k(x), represented by the
element of the class whose relative valuation (from ``L.base``) lies in
[0, n); that residue is also the vertex color.  Simplices are the classes of
short chains.  Apartments are Z^n-skeletons, coordinatized so that the color
of a vertex equals the coordinate sum of its point in Lambda.

The reverse direction, :func:`lattice_from_building`, rebuilds a lattice on
(vertex, level) pairs from an abstract window of a building together with an
apartment oracle.
"""

from __future__ import annotations

import itertools
import json
import random
from collections import deque
from math import comb
from typing import Callable, NamedTuple, Optional, Sequence

from .core import (
    BrokenInstance,
    Lattice,
    enumerate_interval,
    is_short,
    relative_position,
    relative_valuation,
    shift,
)
from .skeleton import (
    ConstructionError,
    ZnSkeleton,
    coordinates_of,
    random_short_chain,
    skeleton_from_chains,
)


class BuildingVertex(NamedTuple):
    rep: object
    color: int


class SimplexError(ValueError):
    pass


class WindowExhausted(LookupError):
    pass


def lam(z) -> tuple:
    """The representative of z + Z1 with coordinate sum in [0, n)."""
    n = len(z)
    k = sum(z) // n
    return tuple(v - k for v in z)


def vertex_of(L: Lattice, x) -> BuildingVertex:
    n = L.n
    v = relative_valuation(L, L.base, x)
    k = v // n
    return BuildingVertex(shift(L, x, -k), v - k * n)


def simplex_of(L: Lattice, C: Sequence) -> frozenset:
    if not is_short(L, C):
        raise SimplexError("chain is not short")
    verts = [vertex_of(L, c) for c in C]
    out = frozenset(verts)
    if len({v.color for v in out}) != len(out):
        raise BrokenInstance("simplex with repeated colors")
    return out


def lift_simplex(L: Lattice, A) -> list:
    """A short chain whose classes are the vertices of A (reps sorted by color)."""
    reps = [v.rep for v in sorted(A, key=lambda v: v.color)]
    for a, b in zip(reps, reps[1:]):
        if not L.lt(a, b):
            raise SimplexError("vertices do not lie on a common short chain")
    if reps and not L.leq(reps[-1], L.ascend(reps[0])):
        raise SimplexError("vertices do not lie on a common short chain")
    return reps


def lift_maximal(L: Lattice, A) -> list:
    chain = lift_simplex(L, A)
    if len(chain) != L.n:
        raise SimplexError("simplex is not maximal")
    chain = chain + [L.ascend(chain[0])]
    if any(b not in L.covers(a) for a, b in zip(chain, chain[1:])):
        raise SimplexError("simplex is not maximal")
    return chain


def adjacent(L: Lattice, u: BuildingVertex, v: BuildingVertex) -> bool:
    if u == v:
        return False
    a, b = (u, v) if u.color < v.color else (v, u)
    if a.color == b.color:
        return False
    return L.leq(a.rep, b.rep) and L.leq(b.rep, L.ascend(a.rep))


def neighbors(L: Lattice, v: BuildingVertex) -> list:
    """All vertices adjacent to v in C(L)."""
    top = L.ascend(v.rep)
    out = {vertex_of(L, z) for z in enumerate_interval(L, v.rep, top) if z != v.rep and z != top}
    return sorted(out, key=lambda w: (w.color, L.sort_key(w.rep)))


def random_simplex(L: Lattice, rng, maximal: bool = False) -> frozenset:
    return simplex_of(L, random_short_chain(L, rng, maximal=maximal))


# ---------------------------------------------------------------------------
# apartments


class Apartment:
    """A Z^n-skeleton viewed as a coordinatized subcomplex of C(L)."""

    def __init__(self, L: Lattice, skeleton: ZnSkeleton):
        self.L = L
        self.skeleton = skeleton
        self.offset = relative_valuation(L, L.base, skeleton.base)

    def point_of(self, x) -> Optional[list]:
        return coordinates_of(self.skeleton, x)

    def vertex_coords(self, v: BuildingVertex) -> Optional[tuple]:
        z = self.point_of(v.rep)
        if z is None:
            return None
        z = list(z)
        z[0] += self.offset
        return lam(z)

    def element_at_point(self, p):
        z = list(p)
        z[0] -= self.offset
        return self.skeleton.element_at(z)

    def vertex_at(self, p) -> BuildingVertex:
        return vertex_of(self.L, self.element_at_point(p))

    def contains_simplex(self, A) -> bool:
        return all(self.vertex_coords(v) is not None for v in A)

    def to_json(self) -> dict:
        return {"skeleton": self.skeleton.to_json(), "offset": self.offset}


def apartment_containing(L: Lattice, A, B, rng=None) -> Apartment:
    CA = lift_simplex(L, A)
    CB = lift_simplex(L, B)
    S = skeleton_from_chains(L, CA, CB, rng=rng)
    ap = Apartment(L, S)
    for v in list(A) + list(B):
        if ap.vertex_coords(v) is None:
            raise ConstructionError("apartment misses a simplex vertex", {"vertex": L.encode(v.rep)})
    return ap


def retraction(L: Lattice, ap: Apartment, A, y) -> list:
    """Skeleton coordinates of the image of y under the retraction onto ap centred at A."""
    chain = lift_maximal(L, A)
    pts = [ap.point_of(c) for c in chain]
    if any(p is None for p in pts):
        raise SimplexError("simplex is not in the apartment")
    r = relative_position(L, chain, y)
    z = list(pts[0])
    for i, (a, b) in enumerate(zip(pts, pts[1:])):
        d = [v - u for u, v in zip(a, b)]
        z[d.index(1)] += r[i]
    return z


# ---------------------------------------------------------------------------
# the reference complex O'(Lambda)


def lambda_points(n: int, w: int) -> list:
    return [p for p in itertools.product(range(-w, w + 1), repeat=n) if 0 <= sum(p) <= n - 1]


def reference_complex(n: int, w: int) -> dict:
    """Window of the affine Coxeter complex of type A_{n-1} on Lambda."""
    if n < 2 or w < 1:
        raise ValueError("need n >= 2 and w >= 1")
    verts = set(lambda_points(n, w))
    simplices = set()
    for z in verts:
        if sum(z) != 0:
            continue
        for perm in itertools.permutations(range(n)):
            cur = list(z)
            pts = [tuple(cur)]
            for i in perm[:-1]:
                cur[i] += 1
                pts.append(tuple(cur))
            if all(p in verts for p in pts):
                simplices.add(frozenset(pts))
    adj = {v: set() for v in verts}
    for s in simplices:
        for a in s:
            adj[a] |= s - {a}
    return {
        "n": n,
        "w": w,
        "vertices": verts,
        "simplices": simplices,
        "color": {v: sum(v) for v in verts},
        "adjacency": adj,
    }


def reference_adjacent(p, q) -> bool:
    """Adjacency in O'(Lambda): p, q differ by a 0/1 vector modulo 1."""
    if p == q:
        return False
    d = [b - a for a, b in zip(p, q)]
    lo = min(d)
    return max(d) - lo == 1


def star_counts(n: int, color: int) -> dict:
    return {k: comb(n, (k - color) % n) for k in range(n) if k != color}


# ---------------------------------------------------------------------------
# axiom checks


def _report(name, samples):
    return {"check": name, "samples": samples, "failures": []}


def check_b1(L: Lattice, ap: Apartment, w: int = 1) -> list:
    """Color- and incidence-preserving match of an apartment window with O'(Lambda)."""
    ref = reference_complex(L.n, w)
    fails = []
    img = {}
    for p in sorted(ref["vertices"]):
        v = ap.vertex_at(p)
        img[p] = v
        if v.color != sum(p):
            fails.append({"point": list(p), "color": v.color})
        back = ap.vertex_coords(v)
        if back != p:
            fails.append({"point": list(p), "roundtrip": None if back is None else list(back)})
    if len(set(img.values())) != len(img):
        fails.append({"injective": False})
    pts = sorted(img)
    for p, q in itertools.combinations(pts, 2):
        if reference_adjacent(p, q) != adjacent(L, img[p], img[q]):
            fails.append({"pair": [list(p), list(q)], "reference": reference_adjacent(p, q)})
    for s in ref["simplices"]:
        if len(s) != L.n:
            fails.append({"simplex_size": len(s)})
    return fails


def check_star(L: Lattice, ap: Apartment, w: int = 2) -> list:
    """Interior window vertices have C(n, |k - l|) apartment neighbours of color k."""
    n = L.n
    pts = lambda_points(n, w)
    img = {p: ap.vertex_at(p) for p in pts}
    fails = []
    for p in pts:
        if max(abs(c) for c in p) > w - 1:
            continue
        counts = {}
        for q in pts:
            if reference_adjacent(p, q) and adjacent(L, img[p], img[q]):
                counts[img[q].color] = counts.get(img[q].color, 0) + 1
        if counts != star_counts(n, img[p].color):
            fails.append({"point": list(p), "counts": counts})
    return fails


def check_b3(L: Lattice, ap1: Apartment, ap2: Apartment, A, B, w: int = 1) -> tuple:
    """The coordinate-matching map ap1 -> ap2 fixing A fixes common vertices.

    Both apartments are re-coordinatized by relative position against the
    maximal chain lifting A; a common vertex must get the same vector in both.
    """
    chain = lift_maximal(L, A)
    fails = []
    common = 0
    seen = set()
    pts = lambda_points(L.n, w)
    candidates = [ap1.element_at_point(p) for p in pts] + [v.rep for v in B] + [v.rep for v in A]
    for x in candidates:
        v = vertex_of(L, x)
        if v in seen:
            continue
        seen.add(v)
        z1 = ap1.point_of(v.rep)
        z2 = ap2.point_of(v.rep)
        if z1 is None or z2 is None:
            if v in A or v in B:
                fails.append({"missing": L.encode(v.rep)})
            continue
        common += 1
        r1 = retraction(L, ap1, A, v.rep)
        r2 = retraction(L, ap2, A, v.rep)
        if r1 != z1 or r2 != z2:
            fails.append({"vertex": L.encode(v.rep), "retraction_moves": True})
        c1 = _chain_vector(L, ap1, chain, v.rep)
        c2 = _chain_vector(L, ap2, chain, v.rep)
        if c1 != c2:
            fails.append({"vertex": L.encode(v.rep), "coords": [c1, c2]})
    return fails, common


def _chain_vector(L, ap, chain, y):
    pts = [ap.point_of(c) for c in chain]
    z = ap.point_of(y)
    order = []
    for a, b in zip(pts, pts[1:]):
        d = [v - u for u, v in zip(a, b)]
        order.append(d.index(1))
    return [z[i] - pts[0][i] for i in order]


def check_axioms(L: Lattice, samples: int = 10, seed: int = 0,
                 axioms: Sequence[str] = ("b1", "b2", "b3", "star"), w: int = 1) -> dict:
    """Property report for C(L): building axioms, coloring and dimension."""
    rng = random.Random(seed)
    reports = {name: _report(name, samples) for name in axioms}
    reports["dimension"] = _report("dimension", samples)
    for s in range(samples):
        A = random_simplex(L, rng, maximal=True)
        B = random_simplex(L, rng, maximal=rng.random() < 0.5)
        if len(A) != L.n or len({v.color for v in A}) != L.n:
            reports["dimension"]["failures"].append({"sample": s, "size": len(A)})
        try:
            ap1 = apartment_containing(L, A, B, rng=random.Random(rng.getrandbits(32)))
        except ConstructionError as exc:
            if "b2" in reports:
                reports["b2"]["failures"].append({"sample": s, "error": str(exc), "state": exc.state})
            continue
        if "b2" in reports and not (ap1.contains_simplex(A) and ap1.contains_simplex(B)):
            reports["b2"]["failures"].append({"sample": s, "error": "simplex not contained"})
        if "b1" in reports:
            for f in check_b1(L, ap1, w):
                f["sample"] = s
                reports["b1"]["failures"].append(f)
        if "star" in reports:
            for f in check_star(L, ap1, w + 1):
                f["sample"] = s
                reports["star"]["failures"].append(f)
        if "b3" in reports:
            ap2 = apartment_containing(L, A, B, rng=random.Random(rng.getrandbits(32)))
            fails, common = check_b3(L, ap1, ap2, A, B, w)
            for f in fails:
                f["sample"] = s
                reports["b3"]["failures"].append(f)
            reports["b3"].setdefault("common_vertices", 0)
            reports["b3"]["common_vertices"] += common
    checks = [reports[k] for k in list(axioms) + ["dimension"]]
    return {
        "instance": L.config(),
        "seed": seed,
        "checks": checks,
        "passed": all(not c["failures"] for c in checks),
    }


def building_degree(L: Lattice, x) -> int:
    return len(neighbors(L, vertex_of(L, x)))


# ---------------------------------------------------------------------------
# windows of C(L) and the reverse construction


class BuildingWindow:
    """A finite window of an abstract building with an apartment oracle.

    ``vertices`` are hashable ids, ``color`` maps id -> {0..n-1},
    ``simplices`` is a set of frozensets of ids (maximal simplices), and
    ``oracle(A, B)`` returns an object with ``coords(v)`` (Lambda point or
    None) and ``vertex_at(p)`` (id or None).
    """

    def __init__(self, n: int, vertices, color: dict, simplices, oracle: Callable,
                 labels: Optional[dict] = None, depth: Optional[dict] = None):
        self.n = n
        self.vertices = list(vertices)
        self.color = dict(color)
        self.simplices = set(simplices)
        self.oracle = oracle
        self.labels = labels or {v: str(v) for v in self.vertices}
        self.depth = depth or {}
        self.adj = {v: set() for v in self.vertices}
        for s in self.simplices:
            for a in s:
                self.adj[a] |= s - {a}
        for s in self.simplices:
            if len({self.color[v] for v in s}) != len(s):
                raise ValueError("simplex with repeated colors")

    def neighbors(self, v) -> set:
        return self.adj[v]

    def to_dot(self) -> str:
        lines = ["graph building {"]
        for v in self.vertices:
            lab = f"{self.color[v]}:{self.labels[v]}".replace("\\", "\\\\").replace('"', '\\"')
            lines.append(f'  "{v}" [label="{lab}"];')
        edges = set()
        for s in self.simplices:
            for a, b in itertools.combinations(sorted(s, key=str), 2):
                edges.add((a, b))
        for a, b in sorted(edges, key=str):
            lines.append(f'  "{a}" -- "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "vertices": [{"id": v, "color": self.color[v], "label": self.labels[v]} for v in self.vertices],
            "simplices": sorted(sorted(s) for s in self.simplices),
        }


class _SkeletonOracleView:
    def __init__(self, win, ap):
        self.win = win
        self.ap = ap

    def coords(self, vid):
        return self.ap.vertex_coords(self.win._vert[vid])

    def vertex_at(self, p):
        v = self.ap.vertex_at(p)
        return self.win._ids.get(v)


def building_window(L: Lattice, radius: int = 2, center=None, seed: int = 0) -> BuildingWindow:
    """Ball of C(L) around the class of ``center`` with a skeleton-based oracle."""
    center = L.base if center is None else center
    c = vertex_of(L, center)
    ids = {c: 0}
    verts = [c]
    depth = {0: 0}
    queue = deque([c])
    while queue:
        v = queue.popleft()
        d = depth[ids[v]]
        if d == radius:
            continue
        for w in neighbors(L, v):
            if w not in ids:
                ids[w] = len(verts)
                verts.append(w)
                depth[ids[w]] = d + 1
                queue.append(w)
    simplices = set()
    for v in verts:
        # maximal simplices through v: maximal chains of [v, ascend v]
        for chain in _maximal_chains(L, v.rep, L.ascend(v.rep)):
            s = frozenset(ids.get(vertex_of(L, z)) for z in chain[:-1])
            if None not in s:
                simplices.add(s)
    cache = {}

    def oracle(A, B):
        key = (frozenset(A), frozenset(B))
        if key not in cache:
            sa = frozenset(verts[i] for i in A)
            sb = frozenset(verts[i] for i in B)
            ap = apartment_containing(L, sa, sb, rng=None)
            cache[key] = _SkeletonOracleView(win, ap)
        return cache[key]

    win = BuildingWindow(
        L.n,
        range(len(verts)),
        {i: v.color for i, v in enumerate(verts)},
        simplices,
        oracle,
        labels={i: json.dumps(L.encode(v.rep), separators=(",", ":")) for i, v in enumerate(verts)},
        depth=depth,
    )
    win._vert = verts
    win._ids = ids
    return win


def _maximal_chains(L: Lattice, x, y) -> list:
    if x == y:
        return [[x]]
    out = []
    for c in L.covers(x):
        if L.leq(c, y):
            for rest in _maximal_chains(L, c, y):
                out.append([x] + rest)
    return out


class BuildingLattice(Lattice):
    """L(Delta): pairs (vertex, k) ordered through the colored edge rule."""

    kind = "from-building"

    def __init__(self, win: BuildingWindow):
        super().__init__()
        self.win = win
        self.n = win.n

    def config(self):
        return {"kind": self.kind, "n": self.n, "vertices": len(self.win.vertices)}

    def valuation(self, x):
        v, k = x
        return self.win.color[v] + k * self.n

    def _covers(self, x):
        v, k = x
        c = self.win.color[v]
        k2 = k if c + 1 < self.n else k + 1
        want = (c + 1) % self.n
        return [(w, k2) for w in self.win.neighbors(v) if self.win.color[w] == want]

    def _cocovers(self, x):
        v, k = x
        c = self.win.color[v]
        k2 = k if c >= 1 else k - 1
        want = (c - 1) % self.n
        return [(w, k2) for w in self.win.neighbors(v) if self.win.color[w] == want]

    def _ascend(self, x):
        return (x[0], x[1] + 1)

    def _descend(self, x):
        return (x[0], x[1] - 1)

    def _point(self, view, x):
        p = view.coords(x[0])
        if p is None:
            raise BrokenInstance("oracle apartment misses a query vertex")
        return tuple(c + x[1] for c in p)

    def _element(self, view, r):
        p = lam(r)
        v = view.vertex_at(p)
        if v is None:
            raise WindowExhausted("result leaves the building window")
        return (v, (sum(r) - sum(p)) // self.n)

    def _op(self, x, y, op):
        A, B = frozenset([x[0]]), frozenset([y[0]])
        views = [self.win.oracle(A, B), self.win.oracle(B, A)]
        results = []
        for view in views:
            p, q = self._point(view, x), self._point(view, y)
            r = tuple(op(a, b) for a, b in zip(p, q))
            results.append(self._element(view, r))
            # the stepping sequences towards max/min stay in every apartment
            cur = list(p)
            while tuple(cur) != r:
                for i in range(self.n):
                    if (op is max and q[i] > cur[i]) or (op is min and q[i] < cur[i]):
                        cur[i] += 1 if op is max else -1
                e = self._element(view, cur)
                for other in views:
                    if other.coords(e[0]) is None:
                        raise BrokenInstance("stepping sequence leaves an apartment")
        if results[0] != results[1]:
            raise BrokenInstance("meet/join depends on the apartment")
        return results[0]

    def _meet(self, x, y):
        return self._op(x, y, min)

    def _join(self, x, y):
        return self._op(x, y, max)

    def sort_key(self, x):
        return (x[0], x[1])

    def encode(self, x):
        return {"vertex": x[0], "k": x[1]}

    def decode(self, obj):
        v, k = obj["vertex"], obj["k"]
        if v not in self.win.color:
            raise ValueError("unknown vertex")
        return (v, int(k))

    @property
    def base(self):
        return (0, 0)

    def random_element(self, rng, depth: int = 1, radius: int = 2):
        inner = [v for v in self.win.vertices if self.win.depth.get(v, 0) <= depth]
        return (rng.choice(inner), rng.randint(-radius, radius))


def lattice_from_building(win: BuildingWindow) -> BuildingLattice:
    return BuildingLattice(win)


def roundtrip_check(L: Lattice, radius: int = 2, seed: int = 0) -> dict:
    """Compare C(L) with C(L(C(L))) on interior vertices of a window."""
    win = building_window(L, radius, seed=seed)
    L2 = lattice_from_building(win)
    fails = []
    interior = [v for v in win.vertices if win.depth[v] <= radius - 1]
    for v in interior:
        x = (v, 0)
        top = L2.ascend(x)
        try:
            elems = enumerate_interval(L2, x, top)
        except WindowExhausted as exc:
            fails.append({"vertex": v, "error": str(exc)})
            continue
        nb = {e[0] for e in elems if e != x and e != top}
        if nb != win.neighbors(v):
            fails.append({"vertex": v, "neighbors": sorted(nb), "expected": sorted(win.neighbors(v))})
        if L2.valuation(x) % L2.n != win.color[v]:
            fails.append({"vertex": v, "color": L2.valuation(x) % L2.n})
        mx = {frozenset(z[0] for z in ch[:-1]) for ch in _maximal_chains(L2, x, top)}
        expected = {s for s in win.simplices if v in s}
        if mx != expected:
            fails.append({"vertex": v, "maximal_simplices": len(mx), "expected": len(expected)})
    return {
        "check": "roundtrip",
        "instance": L.config(),
        "samples": len(interior),
        "vertices": len(win.vertices),
        "failures": fails,
        "passed": not fails,
    }
