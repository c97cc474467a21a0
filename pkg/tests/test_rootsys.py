"""Exact checks of root data, alcove geometry, and minimal levels."""

import random
from fractions import Fraction

import pytest

from gerbecalc.rootsys import (
    Alcove,
    RootSystemError,
    alcove,
    build_root_system,
    face_centralizer,
    is_weight,
    minimal_level_k0,
    mu_ij,
    parse_type,
)

ALL_TYPES = (
    [("A", n) for n in range(1, 9)]
    + [("B", n) for n in range(2, 9)]
    + [("C", n) for n in range(2, 9)]
    + [("D", n) for n in range(3, 9)]
    + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]
)

ROOT_COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
    "F": lambda n: 48,
    "G": lambda n: 12,
}


@pytest.mark.parametrize("family,rank", ALL_TYPES)
def test_root_count_matches_closed_form(family, rank):
    rs = build_root_system(family, rank)
    assert len(rs.roots) == ROOT_COUNTS[family](rank)


@pytest.mark.parametrize("family,rank", ALL_TYPES)
def test_type_invariants(family, rank):
    rs = build_root_system(family, rank)
    r = rank
    for i in range(r):
        assert rs.cartan[i][i] == 2
        for j in range(r):
            if i != j:
                assert rs.cartan[i][j] <= 0
    # highest root is dominant and reconstructed from the marks
    for a in rs.simple_roots:
        assert rs.pairing(rs.highest_root, a) >= 0
    rebuilt = tuple(
        sum(m * a[d] for m, a in zip(rs.marks, rs.simple_roots))
        for d in range(rs.dim)
    )
    assert rebuilt == rs.highest_root
    assert max(rs.inner(x, x) for x in rs.roots) == 2


def test_invalid_types_rejected():
    for family, rank in [("A", 0), ("B", 1), ("C", 1), ("D", 2), ("E", 5), ("E", 9), ("F", 3), ("G", 3), ("H", 2)]:
        with pytest.raises(RootSystemError):
            build_root_system(family, rank)


def test_a1_data():
    rs = build_root_system("A", 1)
    assert rs.cartan == ((2,),)
    assert rs.marks == (1,)


def test_a2_highest_root_by_enumeration():
    rs = build_root_system("A", 2)
    assert rs.marks == (1, 1)
    s = rs.simple_roots
    expected = tuple(a + b for a, b in zip(s[0], s[1]))
    # oracle: the dominant maximal root among the enumerated roots
    dominant = [
        r
        for r in rs.roots
        if all(rs.pairing(r, a) >= 0 for a in rs.simple_roots)
    ]
    maximal = max(dominant, key=lambda r: rs.inner(r, r))
    assert rs.highest_root == expected
    assert rs.highest_root in dominant
    assert rs.inner(maximal, maximal) == rs.inner(rs.highest_root, rs.highest_root)


def test_g2_cartan_short_first():
    rs = build_root_system("G", 2)
    assert rs.cartan == ((2, -1), (-3, 2))


@pytest.mark.parametrize("family,rank", ALL_TYPES)
def test_alcove_hyperplane_conditions(family, rank):
    rs = build_root_system(family, rank)
    alc = alcove(rs)
    assert len(alc.vertices) == rank + 1
    assert all(x == 0 for x in alc.vertices[0])
    for i in range(1, rank + 1):
        mu = alc.vertices[i]
        assert rs.inner(rs.highest_root, mu) == 1
        for j, a in enumerate(rs.simple_roots, start=1):
            val = rs.inner(a, mu)
            if j != i:
                assert val == 0
            else:
                assert val > 0
    # vertices stay in the closed dominant chamber
    for mu in alc.vertices:
        for a in rs.simple_roots:
            assert rs.inner(a, mu) >= 0


def test_alcove_a1_a2_vertices_match_marks_oracle():
    for family, rank in [("A", 1), ("A", 2)]:
        rs = build_root_system(family, rank)
        alc = alcove(rs)
        # marks oracle: all marks are 1, so vertices are the coweights
        for i in range(1, rank + 1):
            mu = alc.vertices[i]
            for j, a in enumerate(rs.simple_roots, start=1):
                assert rs.inner(a, mu) == (1 if i == j else 0)


def test_is_weight_basics():
    rs = build_root_system("A", 1)
    alc = alcove(rs)
    zero = tuple(Fraction(0) for _ in range(rs.dim))
    assert is_weight(rs, zero)
    assert is_weight(rs, alc.vertices[1])  # k0(SU(2)) = 1

    rs3 = build_root_system("A", 2)
    alc3 = alcove(rs3)
    diff = tuple(a - b for a, b in zip(alc3.vertices[1], alc3.vertices[2]))
    assert is_weight(rs3, diff)

    with pytest.raises(RootSystemError):
        is_weight(rs3, (Fraction(1), Fraction(2)))


def test_mu_ij_cocycle_identity():
    rs = build_root_system("D", 4)
    alc = alcove(rs)
    r = rs.rank
    for i in range(r + 1):
        assert all(x == 0 for x in mu_ij(alc, i, i))
        for j in range(r + 1):
            for k in range(r + 1):
                lhs = mu_ij(alc, i, k)
                rhs = tuple(
                    a + b for a, b in zip(mu_ij(alc, i, j), mu_ij(alc, j, k))
                )
                assert lhs == rhs
    with pytest.raises(RootSystemError):
        mu_ij(alc, 0, r + 1)


def test_mu_01_is_coweight_for_a1():
    rs = build_root_system("A", 1)
    alc = alcove(rs)
    assert mu_ij(alc, 0, 1) == alc.vertices[1]


K0_TABLE = {
    ("A", 1): 1,
    ("A", 5): 1,
    ("B", 3): 2,
    ("B", 8): 2,
    ("C", 4): 1,
    ("D", 4): 2,
    ("E", 7): 12,
    ("E", 8): 60,
    ("F", 4): 6,
    ("G", 2): 2,
}


@pytest.mark.parametrize("key,expected", sorted(K0_TABLE.items()))
def test_minimal_level_values(key, expected):
    assert minimal_level_k0(build_root_system(*key)) == expected


def test_minimal_level_low_rank_coincidences():
    # B2 = C2 and D3 = A3, so the computed value is 1 there
    assert minimal_level_k0(build_root_system("B", 2)) == 1
    assert minimal_level_k0(build_root_system("C", 2)) == 1
    assert minimal_level_k0(build_root_system("D", 3)) == 1


def test_minimal_level_invariant_under_relabeling():
    # permuting simple-root indices permutes vertices; k0 is an lcm over all
    rng = random.Random(7)
    for family, rank in [("B", 4), ("F", 4), ("E", 6)]:
        rs = build_root_system(family, rank)
        k0 = minimal_level_k0(rs)
        alc = alcove(rs)
        perm = list(range(1, rank + 1))
        rng.shuffle(perm)
        from math import lcm

        denoms = [
            rs.pairing(alc.vertices[i], a).denominator
            for i in perm
            for a in rs.simple_roots
        ]
        assert lcm(*denoms) == k0


def test_face_centralizer_extremes():
    rs = build_root_system("B", 3)
    alc = alcove(rs)
    full_face = tuple(range(rs.rank + 1))
    assert face_centralizer(alc, full_face).roots == frozenset()
    assert face_centralizer(alc, (0,)).roots == frozenset(rs.roots)
    with pytest.raises(RootSystemError):
        face_centralizer(alc, ())


def test_face_centralizer_antitone():
    rs = build_root_system("C", 3)
    alc = alcove(rs)
    faces = [(0,), (0, 1), (0, 1, 2), (0, 1, 2, 3)]
    prev = None
    for face in faces:
        cur = face_centralizer(alc, face).roots
        if prev is not None:
            assert cur <= prev
        prev = cur


def test_parse_type():
    assert parse_type("E8") == ("E", 8)
    assert parse_type("a3") == ("A", 3)
    with pytest.raises(RootSystemError):
        parse_type("X2")
    with pytest.raises(RootSystemError):
        parse_type("Aq")
