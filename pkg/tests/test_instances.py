import json
import random

import pytest

from umlattice.algebra import RationalFunction, WindowExceeded, dvr_hermite, module_contains
from umlattice.core import enumerate_interval
from umlattice.instances import ModuleLattice, Tree, Zn, make_instance


def gaussian_binomial(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def test_zn_ops():
    Z = Zn(2)
    assert Z.meet((1, 2), (3, 0)) == (1, 0)
    assert Z.join((1, 2), (3, 0)) == (3, 2)
    assert sorted(Z.covers((0, 0))) == [(0, 1), (1, 0)]
    assert Z.join((4, 4), (4, 4)) == (4, 4)
    with pytest.raises(ValueError):
        Z.meet((1, 2), (1, 2, 3))
    with pytest.raises(ValueError):
        Z.decode([1, True])


def test_tree_ops():
    T = Tree(3, 3)
    assert len(T.covers(((), 0))) == 3
    assert all(x[1] == 0 for x in T.covers(((), 0)))
    assert T.ascend(((1, 0), -2)) == ((1, 0), -1)
    assert T.decode(T.encode(((2, 1), 5))) == ((2, 1), 5)
    with pytest.raises(ValueError):
        T.decode({"path": [3], "k": 0})


def test_tree_interval_is_boolean_square():
    T = Tree(3, 3)
    x = ((0,), 1)
    # [x, ascend x] is the rank-2 interval: bottom, top and the neighbours of the vertex
    elems = enumerate_interval(T, x, T.ascend(x))
    assert len(elems) == 2 + 3


def test_tree_path_is_z2():
    """Along a path P, (P[i], k) sits at ((v + i) / 2, (v - i) / 2) in Z^2, v the valuation shift."""
    T = Tree(3, 4)
    rng = random.Random(3)
    for _ in range(20):
        u = T.random_element(rng)[0]
        v = T.random_element(rng)[0]
        P = T.path(u, v)
        pts = []
        l0 = len(P[0]) % 2
        for i, w in enumerate(P):
            for k in range(-1, 2):
                val_ = len(w) % 2 + 2 * k
                a, b = (val_ - l0 + i) // 2, (val_ - l0 - i) // 2
                pts.append(((w, k), (a, b)))
        where = {pz: z for z, pz in pts}
        for x, px in pts:
            for y, py in pts:
                assert T.leq(x, y) == (px[0] <= py[0] and px[1] <= py[1])
                lo = (min(px[0], py[0]), min(px[1], py[1]))
                if lo in where:
                    assert T.meet(x, y) == where[lo]


def test_tree_meet_brute_force():
    T = Tree(3, 3)
    rng = random.Random(9)
    for _ in range(40):
        x, y = T.random_element(rng, depth=2, radius=1), T.random_element(rng, depth=2, radius=1)
        m = T.meet(x, y)
        # brute force: greatest common lower bound in the down-set of x
        lows = enumerate_interval(T, m, x)
        common = [z for z in lows if T.leq(z, y)]
        assert max(common, key=T.valuation) == m
        assert len([z for z in common if T.valuation(z) == T.valuation(m)]) == 1


def test_module_diagonal_examples():
    M = ModuleLattice(2, 2, 4)
    a, b = M.diagonal([-1, 0]), M.diagonal([0, -1])
    assert M.join(a, b) == M.diagonal([-1, -1])
    assert M.meet(a, b) == M.base
    assert M.h_value(M.base) == 0
    assert M.h_value(a) == -1
    assert M.h_value(a) + M.h_value(b) == M.h_value(M.meet(a, b)) + M.h_value(M.join(a, b))


@pytest.mark.parametrize("n,q,count", [(2, 2, 3), (3, 2, 7), (2, 3, 4)])
def test_module_cover_counts(n, q, count):
    M = ModuleLattice(n, q, 4)
    rng = random.Random(n)
    for x in [M.base] + [M.random_element(rng) for _ in range(5)]:
        assert len(M.covers(x)) == count
        assert len(M.cocovers(x)) == count


@pytest.mark.parametrize("n,q", [(2, 2), (3, 2), (2, 3)])
def test_module_interval_is_subspace_lattice(n, q):
    M = ModuleLattice(n, q, 4)
    size = sum(gaussian_binomial(n, k, q) for k in range(n + 1))
    assert len(enumerate_interval(M, M.base, M.ascend(M.base))) == size


def test_module_encoding():
    M = ModuleLattice(2, 2, 4)
    x = M.diagonal([-1, 0])
    assert json.dumps(M.encode(x)) == '{"basis": [["[1]/[0,1]", "[]/[1]"], ["[]/[1]", "[1]/[1]"]]}'
    rng = random.Random(4)
    for _ in range(30):
        y = M.random_element(rng)
        assert M.decode(json.loads(json.dumps(M.encode(y)))) == y
        H = M.to_matrix(y)
        assert dvr_hermite(H) == H


def test_module_window_limits():
    M = ModuleLattice(2, 2, 2)
    with pytest.raises(WindowExceeded):
        M.ascend(M.diagonal([-2, -2]))
    with pytest.raises(WindowExceeded):
        M.descend(M.diagonal([2, 2]))


def _in(M, x, vec):
    H = M.to_matrix(x)
    return module_contains(H, vec)


def test_module_meet_membership():
    M = ModuleLattice(2, 2, 4)
    q = M.q
    rng = random.Random(6)
    for _ in range(100):
        x, y = M.random_element(rng), M.random_element(rng)
        m = M.meet(x, y)
        for _ in range(3):
            v = [RationalFunction.laurent([rng.randrange(q) for _ in range(3)], rng.randint(-2, 0), q)
                 for _ in range(2)]
            assert _in(M, m, v) == (_in(M, x, v) and _in(M, y, v))
        j = M.join(x, y)
        for c in M.to_matrix(x).columns() + M.to_matrix(y).columns():
            assert module_contains(M.to_matrix(j), list(c))


def test_make_instance():
    assert make_instance({"kind": "zn", "n": 4}).n == 4
    assert make_instance({"kind": "tree", "d0": 2, "d1": 5}).config()["d1"] == 5
    assert make_instance({"kind": "module", "n": 3, "q": 3, "B": 2}).config() == {"kind": "module", "n": 3, "q": 3, "B": 2}
    with pytest.raises(ValueError):
        make_instance({"kind": "graph"})
