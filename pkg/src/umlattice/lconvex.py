"""L-convex functions: verification of the defining inequalities and descent.

Values are exact: ints or Fractions, with ``INF`` (a float infinity) as the
sentinel for points outside the effective domain.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .core import Lattice, enumerate_interval, relative_position, relative_valuation, shift

INF = math.inf


@dataclass
class LConvexFunction:
    evaluate: Callable
    alpha: Fraction
    name: str = "g"

    def __call__(self, x):
        v = self.evaluate(x)
        if v == INF:
            return INF
        if isinstance(v, float):
            raise TypeError("values must be exact (int or Fraction)")
        return Fraction(v)


@dataclass
class DescentCertificate:
    minimizer: object
    value: object
    iterations: int
    budget_exhausted: bool = False
    checked: int = 0
    path: list = field(default_factory=list)

    def to_json(self, L: Lattice) -> dict:
        return {
            "minimizer": L.encode(self.minimizer),
            "value": _fmt(self.value),
            "iterations": self.iterations,
            "budget_exhausted": self.budget_exhausted,
            "checked": self.checked,
        }


def _fmt(v):
    if v == INF:
        return "inf"
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _key(L, x):
    return json.dumps(L.encode(x), sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# catalog


def valuation_function(L: Lattice) -> LConvexFunction:
    base = L.base
    return LConvexFunction(lambda x: relative_valuation(L, base, x), Fraction(L.n), "valuation")


def maxmin_function(L: Lattice) -> LConvexFunction:
    if L.kind != "zn":
        raise ValueError("maxmin is defined on Z^n only")
    return LConvexFunction(lambda x: max(x) - min(x), Fraction(0), "maxmin")


def sqrelpos_function(L: Lattice, chain=None) -> LConvexFunction:
    """Squared spread of the relative position against a maximal short chain.

    sum_i (r_i - mean r)^2 is unchanged by r -> r + k1, so alpha = 0.
    """
    if chain is None:
        top = L.ascend(L.base)
        chain = [L.base]
        while chain[-1] != top:
            chain.append(next(c for c in L.covers(chain[-1]) if L.leq(c, top)))
    n = L.n

    def g(x):
        r = relative_position(L, chain, x)
        m = Fraction(sum(r), n)
        return sum((v - m) ** 2 for v in r)

    return LConvexFunction(g, Fraction(0), "sqrelpos")


def table_function(L: Lattice, table: dict, alpha=0) -> LConvexFunction:
    """Function given by {canonical encoding -> value}; missing points are INF."""
    vals = {}
    for k, v in table.items():
        x = L.decode(json.loads(k) if isinstance(k, str) else k)
        vals[_key(L, x)] = INF if v in ("inf", None) else Fraction(v)
    return LConvexFunction(lambda x: vals.get(_key(L, x), INF), Fraction(alpha), "table")


CATALOG = {
    "valuation": valuation_function,
    "maxmin": maxmin_function,
    "sqrelpos": sqrelpos_function,
}


def catalog(L: Lattice, name: str) -> LConvexFunction:
    try:
        return CATALOG[name](L)
    except KeyError:
        raise ValueError(f"unknown function {name!r}; choose from {sorted(CATALOG)}") from None


# ---------------------------------------------------------------------------
# verification and descent


def verify_lconvex(L: Lattice, g: LConvexFunction, samples: int = 1000, seed: int = 0,
                   shifts: int = 3, sampler: Optional[Callable] = None) -> dict:
    """Check submodularity on sampled pairs and the slope along ascend."""
    rng = random.Random(seed)
    sampler = sampler or L.random_element
    fails = []
    for s in range(samples):
        x, y = sampler(rng), sampler(rng)
        gx, gy = g(x), g(y)
        gm, gj = g(L.meet(x, y)), g(L.join(x, y))
        if gx + gy < gm + gj:
            fails.append({"sample": s, "kind": "submodular", "x": L.encode(x), "y": L.encode(y),
                          "lhs": _fmt(gx + gy), "rhs": _fmt(gm + gj)})
        k = rng.randint(-shifts, shifts)
        gs = g(shift(L, x, k))
        want = gx + k * g.alpha if gx != INF else INF
        if gs != want:
            fails.append({"sample": s, "kind": "slope", "x": L.encode(x), "k": k,
                          "value": _fmt(gs), "expected": _fmt(want)})
    return {"check": "lconvex", "function": g.name, "samples": samples, "failures": fails,
            "passed": not fails}


def neighborhood(L: Lattice, x) -> list:
    lower = enumerate_interval(L, L.descend(x), x)
    upper = enumerate_interval(L, x, L.ascend(x))
    return lower + upper[1:]


def minimize(L: Lattice, g: LConvexFunction, start, budget: int = 1000) -> DescentCertificate:
    """Steepest descent over [descend(x), x] and [x, ascend(x)].

    Among strict improvements the least value wins, ties going to the least
    canonical encoding.  The result is a local certificate only.
    """
    x = start
    gx = g(x)
    if gx == INF:
        raise ValueError("g is not finite at the start point")
    it = 0
    checked = 0
    path = [x]
    while True:
        nb = neighborhood(L, x)
        checked += len(nb)
        best = None
        for z in nb:
            gz = g(z)
            if gz < gx and (best is None or (gz, _key(L, z)) < (best[0], best[1])):
                best = (gz, _key(L, z), z)
        if best is None:
            return DescentCertificate(x, gx, it, False, checked, path)
        if it >= budget:
            return DescentCertificate(x, gx, it, True, checked, path)
        gx, _, x = best
        path.append(x)
        it += 1


def is_certificate(L: Lattice, g: LConvexFunction, cert: DescentCertificate) -> bool:
    return all(g(z) >= cert.value for z in neighborhood(L, cert.minimizer))
