import random

import pytest

from umlattice.core import (
    CapExceeded,
    ChainError,
    Opposite,
    OrderError,
    atoms_join,
    boolean_skeleton,
    check_chain,
    enumerate_interval,
    find_complement,
    in_boolean,
    in_generated,
    independent,
    interval_rank,
    is_maximal_short,
    is_short,
    leq_shift,
    maximalize_short,
    relative_position,
    relative_valuation,
    shift,
    spherical_relative_position,
)
from umlattice.instances import ModuleLattice, Tree, Zn

from _suite import lattice_triples, uniform_rank, uniformity, valuation_pairs


def test_invariant_suite(lattice):
    assert not valuation_pairs(lattice, 150, 1)
    assert not lattice_triples(lattice, 100, 2)
    assert not uniformity(lattice, 80, 3)
    assert not uniform_rank(lattice, 30, 4)


def test_rc_replay(lattice, rng):
    # x <= y with equal valuation forces x = y
    for _ in range(100):
        x, y = lattice.random_element(rng), lattice.random_element(rng)
        m = lattice.meet(x, y)
        if relative_valuation(lattice, lattice.base, m) == relative_valuation(lattice, lattice.base, x):
            assert m == x


def test_ascend_examples():
    Z = Zn(3)
    assert Z.ascend((0, 0, 0)) == (1, 1, 1)
    assert Z.descend((1, 1, 1)) == (0, 0, 0)
    assert shift(Z, (0, 0, 0), 0) == (0, 0, 0)
    assert shift(Zn(2), (0, 0), -2) == (-2, -2)
    T = Tree(3, 3)
    assert T.ascend(((0, 1), 2)) == ((0, 1), 3)
    M = ModuleLattice(2, 2, 4)
    assert M.ascend(M.base) == M.diagonal([-1, -1])
    assert M.descend(M.base) == M.diagonal([1, 1])


def test_shift_group_law(lattice, rng):
    for _ in range(30):
        x = lattice.random_element(rng)
        a, b = rng.randint(-1, 1), rng.randint(-1, 1)
        assert shift(lattice, shift(lattice, x, a), b) == shift(lattice, x, a + b)


def test_ascend_generic_matches_override(lattice, rng):
    for _ in range(20):
        x = lattice.random_element(rng)
        up = lattice.covers(x)[0]
        for c in lattice.covers(x)[1:]:
            up = lattice.join(up, c)
        down = lattice.cocovers(x)[0]
        for c in lattice.cocovers(x)[1:]:
            down = lattice.meet(down, c)
        assert up == lattice.ascend(x)
        assert down == lattice.descend(x)


def test_interval_rank():
    Z = Zn(3)
    assert interval_rank(Z, (0, 0, 0), (2, 1, 0)) == 3
    assert interval_rank(Z, (0, 0, 0), (2, 1, 0), greedy=True) == 3
    assert interval_rank(Z, (1, 1, 1), (1, 1, 1)) == 0
    with pytest.raises(OrderError):
        interval_rank(Z, (1, 0, 0), (0, 0, 0))


def test_relative_valuation_examples():
    Z = Zn(3)
    assert relative_valuation(Z, Z.base, (2, -1, 4)) == 5
    assert relative_valuation(Z, Z.base, (2, -1, 4), greedy=True) == 5
    M = ModuleLattice(2, 2, 4)
    rng = random.Random(0)
    for _ in range(30):
        x = M.random_element(rng)
        assert relative_valuation(M, M.base, x) == -M.h_value(x)
        assert relative_valuation(M, M.base, x, greedy=True) == -M.h_value(x)


def test_enumerate_interval():
    Z = Zn(2)
    assert enumerate_interval(Z, (0, 0), (0, 0)) == [(0, 0)]
    assert len(enumerate_interval(Z, (0, 0), (1, 1))) == 4
    M = ModuleLattice(2, 2, 4)
    assert len(enumerate_interval(M, M.base, M.ascend(M.base))) == 5
    with pytest.raises(CapExceeded):
        enumerate_interval(Zn(3), (0, 0, 0), (5, 5, 5), cap=20)


def test_leq_shift():
    Z = Zn(2)
    assert leq_shift(Z, (0, 0), (1, 1)) == 0
    assert leq_shift(Z, (3, 0), (0, 0)) == 3
    M = ModuleLattice(2, 2, 4)
    assert leq_shift(M, M.diagonal([-2, 0]), M.base) == 2


def test_leq_shift_bound(lattice, rng):
    for _ in range(30):
        x, y = lattice.random_element(rng), lattice.random_element(rng)
        k = leq_shift(lattice, x, y)
        assert lattice.leq(x, shift(lattice, y, k))
        if k:
            assert not lattice.leq(x, shift(lattice, y, k - 1))
        assert k <= interval_rank(lattice, lattice.meet(x, y), x)


def test_chains():
    Z = Zn(2)
    with pytest.raises(ChainError):
        check_chain(Z, [(0, 0), (0, 0)])
    assert is_short(Z, [(0, 0), (1, 0), (1, 1)])
    assert not is_short(Z, [(0, 0), (2, 0)])
    assert is_maximal_short(Z, [(0, 0), (1, 0), (1, 1)])
    C = maximalize_short(Z, [(0, 0), (1, 1)])
    assert len(C) == 3 and is_maximal_short(Z, C)


def test_find_complement_examples():
    Z = Zn(2)
    assert find_complement(Z, (0, 0), (1, 1), (0, 0)) == (1, 1)
    assert find_complement(Z, (0, 0), (1, 1), (1, 0)) == (0, 1)


def test_find_complement_module():
    M = ModuleLattice(2, 2, 4)
    bottom, top = M.base, M.ascend(M.base)
    lines = [z for z in enumerate_interval(M, bottom, top) if z not in (bottom, top)]
    assert len(lines) == 3
    for p in lines:
        for a in lines:
            C = [bottom, a, top]
            q = find_complement(M, bottom, top, p, C)
            assert M.meet(p, q) == bottom and M.join(p, q) == top
            assert all(in_generated(M, c, p, q) for c in C)


def test_boolean_skeleton():
    Z = Zn(3)
    C = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1)]
    atoms = boolean_skeleton(Z, C[0], C[-1], C, C)
    assert sorted(atoms) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert boolean_skeleton(Z, (0, 0, 0), (0, 0, 0)) == []
    M = ModuleLattice(2, 2, 4)
    bottom, top = M.base, M.ascend(M.base)
    lines = [z for z in enumerate_interval(M, bottom, top) if z not in (bottom, top)]
    for a in lines:
        for b in lines:
            if a == b:
                continue
            C, D = [bottom, a, top], [bottom, b, top]
            atoms = boolean_skeleton(M, bottom, top, C, D)
            assert len(atoms) == 2 and independent(M, bottom, atoms)
            assert atoms_join(M, bottom, atoms) == top
            assert all(in_boolean(M, bottom, atoms, c) for c in C + D)


def test_boolean_skeleton_random(lattice, rng):
    for _ in range(10):
        x = lattice.random_element(rng)
        top = lattice.ascend(x)
        chains = []
        for _ in range(2):
            ch, cur = [x], x
            while cur != top:
                cur = rng.choice([c for c in lattice.covers(cur) if lattice.leq(c, top)])
                ch.append(cur)
            chains.append(ch)
        atoms = boolean_skeleton(lattice, x, top, chains[0], chains[1], rng)
        assert len(atoms) == lattice.n and independent(lattice, x, atoms)
        assert all(in_boolean(lattice, x, atoms, c) for c in chains[0] + chains[1])


def test_spherical_relative_position():
    Z = Zn(3)
    C = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1)]
    assert spherical_relative_position(Z, C[0], C[-1], C, (1, 1, 1)) == [1, 1, 1]
    assert spherical_relative_position(Z, C[0], C[-1], C, (0, 0, 0)) == [0, 0, 0]
    assert spherical_relative_position(Z, C[0], C[-1], C, (1, 0, 1)) == [1, 0, 1]


def test_relative_position_examples():
    Z = Zn(2)
    C = [(0, 0), (1, 0), (1, 1)]
    assert relative_position(Z, C, (0, 0)) == [0, 0]
    assert relative_position(Z, C, (2, 1)) == [2, 1]
    assert relative_position(Z, C, (-3, -3)) == [-3, -3]
    M = ModuleLattice(2, 2, 4)
    C = [M.base, M.diagonal([-1, 0]), M.diagonal([-1, -1])]
    assert relative_position(M, C, M.diagonal([-2, 0])) == [2, 0]


def test_relative_position_shift(lattice, rng):
    from umlattice.skeleton import random_short_chain
    for _ in range(10):
        C = random_short_chain(lattice, rng, maximal=True)
        k = rng.randint(-2, 2)
        assert relative_position(lattice, C, shift(lattice, C[0], k)) == [k] * lattice.n


def test_opposite_segment_reversal():
    from umlattice.skeleton import extend_ray, is_segment
    for L in (Zn(2), Tree(3, 3), ModuleLattice(2, 2, 4)):
        seg = [L.base]
        for _ in range(3):
            seg = extend_ray(L, seg)
        assert is_segment(L, seg)
        assert is_segment(Opposite(L), list(reversed(seg)))
