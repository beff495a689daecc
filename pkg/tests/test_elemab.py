import itertools

import numpy as np
import pytest

from altcoh.elemab import (IndexVector, T_km, base_p_digits, build_T, canonical_conjugate_key,
                           closed_system_check, detecting_subgroup, elementary_abelian_subgroups,
                           index_vectors, legendre_exponent, maximal_elemab_classes, reduce_abelian,
                           regular_embedding, sylow_generators)
from altcoh.permgrp import Perm, PermGroup, _keys, alternating_group, symmetric_group


def brute_index_vectors(m, p):
    bounds = [p ** m // p ** j for j in range(1, m + 1)]
    return sorted(v for v in itertools.product(*(range(b + 1) for b in bounds))
                  if sum(a * p ** (j + 1) for j, a in enumerate(v)) == p ** m)


def test_index_vector_examples():
    assert [v.i for v in index_vectors(1, 5)] == [(1,)]
    assert [v.i for v in index_vectors(2, 3)] == [(0, 1), (3, 0)]
    assert [v.i for v in index_vectors(3, 3)] == brute_index_vectors(3, 3)
    assert len(index_vectors(3, 3)) == 5


@pytest.mark.parametrize("m,p", [(1, 3), (2, 3), (3, 3), (4, 3), (2, 5), (3, 5), (2, 7)])
def test_index_vectors_complete(m, p):
    got = [v.i for v in index_vectors(m, p)]
    assert got == brute_index_vectors(m, p)
    assert len(set(got)) == len(got)


def test_index_vector_validation():
    with pytest.raises(ValueError):
        IndexVector(3, 2, (1, 1))
    with pytest.raises(ValueError):
        index_vectors(2, 4)


def test_base_p_digits():
    assert base_p_digits(12, 3) == (0, 1, 1)
    assert base_p_digits(9, 3) == (0, 0, 1)
    assert base_p_digits(10, 5) == (0, 2)


def assert_regular_blocks(T):
    G = T.group()
    assert G.order() == T.p ** T.rank
    rows = G.element_rows()
    for start, size in T.blocks:
        block = rows[:, start:start + size] - start
        # transitive: images of the block's first point cover the block
        assert set(block[:, 0].tolist()) == set(range(size))
        # free on the block: the elements acting nontrivially there are
        # determined by the image of the first point
        restricted = {tuple(r) for r in block.tolist()}
        assert len(restricted) == size


def test_build_T_examples():
    T11 = build_T(IndexVector(3, 1, (1,)))
    assert T11.generators == (Perm.from_cycles(3, [(0, 1, 2)]),)
    T22 = build_T(IndexVector(3, 2, (0, 1)))
    assert T22.group().order() == 9 and T22.group().orbits() == [tuple(range(9))]
    assert T22.generators == (Perm.from_cycles(9, [(0, 3, 6), (1, 4, 7), (2, 5, 8)]),
                              Perm.from_cycles(9, [(0, 1, 2), (3, 4, 5), (6, 7, 8)]))
    T12 = build_T(IndexVector(3, 2, (3, 0)))
    assert [g.cycles() for g in T12.generators] == [[(0, 1, 2)], [(3, 4, 5)], [(6, 7, 8)]]


@pytest.mark.parametrize("m,p", [(1, 3), (2, 3), (3, 3), (1, 5), (2, 5)])
def test_build_T_properties(m, p):
    for iv in index_vectors(m, p):
        T = build_T(iv)
        assert T.rank == iv.rank
        assert sum(size for _, size in T.blocks) == p ** m
        assert_regular_blocks(T)


def test_T_km():
    assert T_km(2, 2, 3).generators == build_T(IndexVector(3, 2, (0, 1))).generators
    assert T_km(1, 2, 3).rank == 3


def test_regular_embedding_examples():
    assert regular_embedding([3]).generators == (Perm.from_cycles(3, [(0, 1, 2)]),)
    assert regular_embedding([9]).generators == (Perm.from_cycles(9, [tuple(range(9))]),)
    A = regular_embedding([3, 3])
    rows = A.element_rows()
    ident = np.arange(9)
    moved = rows[~np.all(rows == ident, axis=1)]
    assert len(moved) == 8 and not np.any(moved == ident)


@pytest.mark.parametrize("factors", [[2], [4], [3, 3], [9, 3], [2, 2, 2], [5, 5], [4, 2]])
def test_regular_embedding_is_free_and_transitive(factors):
    A = regular_embedding(factors)
    rows = A.element_rows()
    n = A.degree
    assert len(rows) == n
    # free and transitive: each point goes everywhere exactly once
    for x in range(n):
        assert sorted(rows[:, x].tolist()) == list(range(n))


def test_detecting_subgroup_examples():
    assert detecting_subgroup(3, 3).generators == (Perm.from_cycles(3, [(0, 1, 2)]),)
    assert detecting_subgroup(9, 3).rank == 3
    E = detecting_subgroup(12, 3)
    assert E.rank == 4 and E.group().order() == 3 ** 4
    assert detecting_subgroup(2, 3).rank == 0
    assert detecting_subgroup(11, 5).rank == 2


@pytest.mark.parametrize("n,p", [(n, 3) for n in range(3, 16)] + [(n, 5) for n in (5, 10, 11, 25)] + [(7, 7), (14, 7)])
def test_detecting_subgroup_and_sylow(n, p):
    E = detecting_subgroup(n, p)
    assert E.rank == (n - n % p) // p
    assert all(g.sign() == 1 for g in E.generators)
    P = sylow_generators(n, p)
    assert P.order() == p ** legendre_exponent(n, p)
    assert all(g in P for g in E.generators)
    assert P.is_subgroup_of(alternating_group(n))


def test_sylow_examples():
    assert sylow_generators(3, 3).order() == 3
    assert sylow_generators(9, 3).order() == 81
    assert sylow_generators(12, 3).order() == 3 ** 5
    assert legendre_exponent(9, 3) == 4 and legendre_exponent(12, 3) == 5


def test_reduce_abelian_regular():
    red = reduce_abelian(T_km(2, 2, 3))
    assert red.kind == "grid" and red.sizes == (3, 3)
    assert sorted(red.grid_points.values()) == list(range(9))


def test_reduce_abelian_orbits():
    A = [Perm.from_cycles(12, [(0, 1, 2)]), Perm.from_cycles(12, [tuple(range(3, 12))])]
    red = reduce_abelian(A)
    assert red.kind == "orbits" and red.sizes == (3, 9)
    assert red.factors[0].points == (0, 1, 2)
    assert all(t < 12 for t in red.sizes)


def test_reduce_abelian_noncyclic_regular_mixed_orders():
    red = reduce_abelian(regular_embedding([9, 3]))
    assert red.kind == "grid" and sorted(red.sizes) == [3, 9]


def test_reduce_abelian_errors():
    with pytest.raises(ValueError):
        reduce_abelian([Perm.from_cycles(9, [tuple(range(9))])])
    with pytest.raises(ValueError):
        reduce_abelian([Perm.from_cycles(4, [(0, 1)]), Perm.from_cycles(4, [(2, 3)])])
    with pytest.raises(ValueError):
        reduce_abelian([Perm.from_cycles(4, [(0, 1, 2)]), Perm.from_cycles(4, [(1, 2, 3)])])


def test_closed_system_trivial_cases():
    E = detecting_subgroup(3, 3)
    S = E.group()
    assert closed_system_check(E, S, S)
    assert closed_system_check(E, S, alternating_group(3))


def test_closed_system_needs_subgroups():
    with pytest.raises(ValueError):
        closed_system_check(detecting_subgroup(6, 3), PermGroup([Perm.from_cycles(6, [(0, 1, 2)])]),
                            alternating_group(6))


@pytest.mark.parametrize("n", [6, 7, 8])
def test_closed_system_methods_agree(n):
    G, S = alternating_group(n), sylow_generators(n, 3)
    E = detecting_subgroup(n, 3)
    a = closed_system_check(E, S, G, method="enumerate")
    b = closed_system_check(E, S, G, method="subgroups")
    assert a.passed and b.passed
    assert a.conjugates_in_S == b.conjugates_in_S


def test_closed_system_can_fail():
    # <(0 1 2)> and <(3 4 5)> are S_6-conjugate but not conjugate inside an abelian S
    E = detecting_subgroup(3, 3)
    E6 = type(E)(6, 3, (Perm.from_cycles(6, [(0, 1, 2)]),), ((0, 3),))
    S = PermGroup([Perm.from_cycles(6, [(0, 1, 2)]), Perm.from_cycles(6, [(3, 4, 5)])])
    res = closed_system_check(E6, S, symmetric_group(6))
    assert not res and res.conjugates_in_S == 2 and res.s_conjugates == 1


def test_closed_system_n9():
    G, S = alternating_group(9), sylow_generators(9, 3)
    assert closed_system_check(detecting_subgroup(9, 3), S, G).passed
    res = closed_system_check(T_km(2, 2, 3), S, G)
    assert res.passed and res.conjugators_scanned == 181440


def test_elementary_abelian_subgroups_of_small_group():
    P = sylow_generators(6, 3)  # C3 x C3
    subs = elementary_abelian_subgroups(P, 3)
    # four subgroups of order 3 and the whole group
    assert sorted(len(s) for s in subs) == [3, 3, 3, 3, 9]
    assert len(elementary_abelian_subgroups(P, 3, rank=2)) == 1


def test_maximal_classes_match_index_vectors():
    ivs = index_vectors(2, 3)
    G = alternating_group(9)
    classes = maximal_elemab_classes(9, 3)
    assert len(classes) == len(ivs)
    expected = {canonical_conjugate_key(build_T(iv).group().element_rows(), G) for iv in ivs}
    got = {canonical_conjugate_key(cls[0], G) for cls in classes}
    assert got == expected
    # same answer under S_9 conjugation
    assert len(maximal_elemab_classes(9, 3, ambient="symmetric")) == len(ivs)


def test_canonical_key_is_conjugation_invariant():
    G = alternating_group(6)
    H = PermGroup([Perm.from_cycles(6, [(0, 1, 2)])]).element_rows()
    K = PermGroup([Perm.from_cycles(6, [(3, 5, 4)])]).element_rows()
    assert canonical_conjugate_key(H, G) == canonical_conjugate_key(K, G)
    assert _keys(H).shape == (3,)


def test_to_json_one_based():
    d = detecting_subgroup(6, 3).to_json()
    assert d["generators"][0] == [2, 3, 1, 4, 5, 6]
    assert d["blocks"] == [{"start": 1, "size": 3}, {"start": 4, "size": 3}]
    assert d["rank"] == 2 and d["order"] == 9
