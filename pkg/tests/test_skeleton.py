import random
from collections import deque

import pytest

from umlattice.building import lambda_points, neighbors, vertex_of
from umlattice.core import ChainError, Opposite, interval_rank, relative_position
from umlattice.instances import ModuleLattice, Tree, Zn
from umlattice.skeleton import (
    ConstructionError,
    Frame,
    FrameError,
    ZnSkeleton,
    chain_coordinates,
    coordinates_of,
    extend_ray,
    frame_eval,
    frame_lift,
    is_segment,
    random_short_chain,
    skeleton_from_chains,
    window_check,
)


def skeleton_instances():
    return [Zn(3), Tree(3, 3), ModuleLattice(2, 2, 6), ModuleLattice(3, 2, 6)]


def test_extend_ray_examples():
    Z = Zn(2)
    assert extend_ray(Z, [(0, 0), (1, 0)]) == [(0, 0), (1, 0), (2, 0)]
    assert extend_ray(Z, [(0, 0)]) == [(0, 0), Z.covers((0, 0))[0]]


@pytest.mark.parametrize("L", skeleton_instances(), ids=lambda L: str(L.config()))
def test_extend_ray_keeps_segment(L):
    rng = random.Random(1)
    seg = [L.random_element(rng)]
    for _ in range(4):
        seg = extend_ray(L, seg, rng)
        assert is_segment(L, seg)
        assert is_segment(Opposite(L), seg[::-1])


def test_frame_eval_examples():
    Z = Zn(3)
    F = Frame(Z, (0, 0, 0), [[(0, 0, 0), tuple(int(i == j) for j in range(3))] for i in range(3)])
    assert frame_eval(Z, F, [0, 0, 0]) == (0, 0, 0)
    assert frame_eval(Z, F, [0, 1, 0]) == (0, 1, 0)
    assert frame_eval(Z, F, [2, 0, 1]) == (2, 0, 1)
    with pytest.raises(FrameError):
        frame_eval(Z, F, [-1, 0, 0])
    assert F.is_valid()


def test_frame_lift():
    Z = Zn(2)
    F = Frame(Z, (0, 0), [[(0, 0), (1, 0), (2, 0)]])
    G = frame_lift(Z, F, (0, 1))
    assert G.rays == [[(0, 1), (1, 1), (2, 1)]]
    assert frame_lift(Z, F, (0, 0)).rays == F.rays
    with pytest.raises(FrameError):
        frame_lift(Z, F, (1, 0))


def test_frame_lift_rank_preservation():
    M = ModuleLattice(2, 2, 6)
    rng = random.Random(4)
    x = M.base
    ray = [x]
    for _ in range(3):
        ray = extend_ray(M, ray, rng)
    F = Frame(M, x, [ray])
    for p in M.covers(x):
        if M.meet(p, ray[1]) != x:
            continue
        G = frame_lift(M, F, p)
        for u, w in zip(F.rays[0], G.rays[0]):
            assert interval_rank(M, x, p) == interval_rank(M, u, w)


@pytest.mark.parametrize("L", skeleton_instances(), ids=lambda L: str(L.config()))
def test_skeleton_contains_chains(L):
    rng = random.Random(7)
    for _ in range(8):
        C = random_short_chain(L, rng)
        D = random_short_chain(L, rng)
        S = skeleton_from_chains(L, C, D, rng=rng.getrandbits(16))
        assert all(coordinates_of(S, c) is not None for c in C + D)
        assert coordinates_of(S, S.base) == [0] * L.n
        assert not window_check(S, 1, pairs=150)


def test_skeleton_degenerate_and_zn():
    Z = Zn(2)
    C = [(0, 0), (1, 0), (1, 1)]
    S = skeleton_from_chains(Z, C, C)
    assert all(coordinates_of(S, c) is not None for c in C)
    assert not window_check(S, 2, pairs=None)
    # in Z^n every skeleton is Z^n itself: coordinates differ from the elements by a translation
    S = skeleton_from_chains(Zn(3), [(0, 0, 0), (0, 1, 0)], [(4, -2, 1)], rng=3)
    z0 = S.element_at([0, 0, 0])
    for z in [(1, 0, 0), (0, -2, 3), (2, 2, 2)]:
        e = S.element_at(z)
        assert sorted(a - b for a, b in zip(e, z0)) == sorted(z)


def test_skeleton_rejects_long_chain():
    with pytest.raises(ChainError):
        skeleton_from_chains(Zn(2), [(0, 0), (2, 0)], [(0, 0)])


def test_coordinates_roundtrip_and_absence():
    M = ModuleLattice(2, 2, 6)
    rng = random.Random(5)
    C = random_short_chain(M, rng, x=M.base, maximal=True)
    S = skeleton_from_chains(M, C, C)
    for _ in range(20):
        z = [rng.randint(-2, 2) for _ in range(2)]
        assert coordinates_of(S, S.element_at(z)) == z
    first = [r[1] for r in S.frame.rays]
    off = [a for a in M.covers(S.base) if a not in first]
    assert off and all(coordinates_of(S, a) is None for a in off)


def test_skeleton_json_roundtrip():
    L = Tree(3, 3)
    rng = random.Random(2)
    S = skeleton_from_chains(L, random_short_chain(L, rng), random_short_chain(L, rng))
    T = ZnSkeleton.from_json(L, S.to_json())
    for z in [(0, 0), (2, -1), (-3, 1)]:
        assert T.element_at(z) == S.element_at(z)


def _distances(L, src, limit):
    dist = {src: 0}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if dist[v] == limit:
            continue
        for w in neighbors(L, v):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


@pytest.mark.parametrize("L", [ModuleLattice(2, 2, 8), Tree(3, 3)], ids=["module", "tree"])
def test_rank2_apartments_are_geodesics(L):
    """For n = 2 the building is a tree and an apartment window must be a geodesic line."""
    rng = random.Random(11)
    w = 1
    pts = sorted(lambda_points(2, w), key=lambda p: p[0] - p[1])
    for _ in range(6):
        C, D = random_short_chain(L, rng, maximal=True), random_short_chain(L, rng)
        S = skeleton_from_chains(L, C, D, rng=rng.getrandbits(16))
        verts = [vertex_of(L, S.element_at(p)) for p in pts]
        d0 = _distances(L, verts[0], len(verts))
        for i, v in enumerate(verts):
            assert d0.get(v) == i


def test_chain_coordinates_against_relative_position():
    L = ModuleLattice(3, 2, 6)
    rng = random.Random(8)
    for _ in range(5):
        C = random_short_chain(L, rng, maximal=True)
        D = random_short_chain(L, rng)
        S = skeleton_from_chains(L, C, D, rng=rng.getrandbits(16))
        for d in D:
            assert chain_coordinates(S, C, d) == relative_position(L, C, d)


def test_construction_error_dump():
    err = ConstructionError("boom", {"C_input": [[0, 0]]})
    assert '"C_input"' in err.dump()
