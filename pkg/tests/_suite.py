"""Replayable lattice invariant checks shared by several test files."""

import random

from umlattice.core import interval_rank, relative_valuation, shift


def valuation_pairs(L, pairs, seed, sample=None):
    rng = random.Random(seed)
    sample = sample or L.random_element
    base = L.base
    bad = []
    for _ in range(pairs):
        x, y = sample(rng), sample(rng)
        m, j = L.meet(x, y), L.join(x, y)
        v = lambda z: relative_valuation(L, base, z)
        if v(x) + v(y) != v(m) + v(j):
            bad.append((x, y))
        if not (L.leq(m, x) and L.leq(m, y) and L.leq(x, j) and L.leq(y, j)):
            bad.append((x, y))
        if L.meet(x, j) != x or L.join(x, m) != x:
            bad.append((x, y))
    return bad


def lattice_triples(L, triples, seed, sample=None):
    rng = random.Random(seed)
    sample = sample or L.random_element
    bad = []
    for _ in range(triples):
        x, y, z = sample(rng), sample(rng), sample(rng)
        if L.meet(L.meet(x, y), z) != L.meet(x, L.meet(y, z)):
            bad.append(("meet-assoc", x, y, z))
        if L.join(L.join(x, y), z) != L.join(x, L.join(y, z)):
            bad.append(("join-assoc", x, y, z))
        if L.meet(x, y) != L.meet(y, x) or L.join(x, y) != L.join(y, x):
            bad.append(("comm", x, y))
        # modular law with x <= x v z
        a, b = x, L.join(x, z)
        if L.join(L.meet(b, y), a) != L.meet(L.join(a, y), b):
            bad.append(("modular", x, y, z))
    return bad


def uniformity(L, samples, seed, sample=None):
    rng = random.Random(seed)
    sample = sample or L.random_element
    bad = []
    for _ in range(samples):
        x, y = sample(rng), sample(rng)
        if L.ascend(L.meet(x, y)) != L.meet(L.ascend(x), L.ascend(y)):
            bad.append(("asc-meet", x, y))
        if L.ascend(L.join(x, y)) != L.join(L.ascend(x), L.ascend(y)):
            bad.append(("asc-join", x, y))
        if L.descend(L.ascend(x)) != x or L.ascend(L.descend(x)) != x:
            bad.append(("inverse", x))
    return bad


def uniform_rank(L, samples, seed, sample=None):
    rng = random.Random(seed)
    sample = sample or L.random_element
    bad = []
    for _ in range(samples):
        x = sample(rng)
        if interval_rank(L, x, L.ascend(x), greedy=True) != L.n:
            bad.append(x)
        if relative_valuation(L, L.base, shift(L, x, 1)) != relative_valuation(L, L.base, x) + L.n:
            bad.append(x)
    return bad
