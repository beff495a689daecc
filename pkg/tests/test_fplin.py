import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from altcoh.fplin import (FpMatrix, FpSubspace, fixed_subspace, generate_matrix_group, gl,
                          gl_order, gl_plus, is_prime, kernel, rank, rref)
from altcoh.limits import ResourceLimitError, limits

from strategies import invertible_matrices, matrices


def M(rows, p=3):
    return FpMatrix.from_rows(rows, p)


def test_rref_examples():
    assert rref(FpMatrix.zeros(2, 3, 3)) == FpMatrix.zeros(2, 3, 3)
    assert rref(FpMatrix.identity(3, 5)) == FpMatrix.identity(3, 5)
    assert rref(M([[2, 1], [1, 2]])) == M([[1, 2], [0, 0]])


def test_kernel_examples():
    assert kernel(FpMatrix.identity(3, 3)).dim == 0
    assert kernel(FpMatrix.zeros(2, 2, 3)).dim == 2
    k = kernel(M([[1, 1]]))
    assert k.dim == 1 and k.basis == ((1, 2),)


def test_fixed_subspace_examples():
    assert fixed_subspace([FpMatrix.identity(3, 3)], 3).dim == 3
    swap = M([[0, 1], [1, 0]])
    fs = fixed_subspace([swap], 2)
    assert fs.basis == ((1, 1),)
    assert fixed_subspace([FpMatrix.diag([2, 2], 3)], 2).dim == 0
    assert fixed_subspace([], 2, p=3).dim == 2


def test_fixed_subspace_rejects_bad_input():
    with pytest.raises(ValueError):
        fixed_subspace([M([[1, 1], [1, 1]])], 2)
    with pytest.raises(ValueError):
        fixed_subspace([M([[1, 0, 0], [0, 1, 0]])], 2)
    with pytest.raises(ValueError):
        fixed_subspace([FpMatrix.identity(2, 5)], 2, p=3)


def test_gl_plus_examples():
    assert gl_plus(1, 5) == {FpMatrix.from_rows([[1]], 5), FpMatrix.from_rows([[4]], 5)}
    assert len(gl_plus(2, 3)) == 24
    assert gl_plus(1, 3) == {FpMatrix.from_rows([[1]], 3)}


@pytest.mark.parametrize("m,p", [(1, 3), (1, 5), (1, 7), (2, 3), (2, 5)])
def test_gl_plus_is_index_two_subgroup(m, p):
    full, half = gl(m, p), gl_plus(m, p)
    assert len(full) == gl_order(m, p) == 2 * len(half)
    assert all(a @ b in half for a in half for b in half)
    assert all(a.inverse() in half for a in half)


def test_gl_enumeration_respects_cap():
    with limits(enumeration_cap=100):
        with pytest.raises(ResourceLimitError):
            gl(2, 5)


def test_gl_plus_needs_odd_prime():
    with pytest.raises(ValueError):
        gl_plus(2, 2)
    with pytest.raises(ValueError):
        gl(2, 4)


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_det_matches_permutation_expansion():
    # Leibniz formula as an independent oracle
    def leibniz(m):
        k, total = m.nrows, 0
        for perm in itertools.permutations(range(k)):
            inv = sum(1 for i, j in itertools.combinations(range(k), 2) if perm[i] > perm[j])
            term = (-1) ** inv
            for i in range(k):
                term *= m[i, perm[i]]
            total += term
        return total % m.p

    for entries in itertools.product(range(3), repeat=4):
        m = FpMatrix(3, 2, 2, entries)
        assert m.det() == leibniz(m)


@given(st.integers(1, 4).flatmap(lambda k: matrices(k, 5)))
def test_rref_idempotent(m):
    assert rref(rref(m)) == rref(m)


@given(st.integers(1, 3), st.integers(1, 4), st.sampled_from([2, 3, 5, 7]), st.data())
def test_rank_nullity(r, c, p, data):
    entries = data.draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    m = FpMatrix(p, r, c, tuple(entries))
    K = kernel(m)
    assert rank(m) + K.dim == c
    for v in K.basis:
        assert all(sum(m[i, j] * v[j] for j in range(c)) % p == 0 for i in range(r))


@given(st.lists(invertible_matrices(3, 3), min_size=1, max_size=3))
def test_fixed_subspace_vectors_are_fixed(gens):
    fs = fixed_subspace(gens, 3)
    for g in gens:
        for v in fs.basis:
            assert g.apply_row(v) == v


@given(invertible_matrices(3, 5), invertible_matrices(3, 5))
def test_det_multiplicative_and_inverse(a, b):
    assert (a @ b).det() == a.det() * b.det() % 5
    assert a @ a.inverse() == FpMatrix.identity(3, 5)


def test_generate_matrix_group_closure():
    gens = [M([[0, 1], [2, 0]]), FpMatrix.diag([2, 2], 3)]
    grp = generate_matrix_group(gens, 2, 3)
    assert len(grp) == 4
    assert all(a @ b in grp for a in grp for b in grp)


def test_subspace_membership():
    S = FpSubspace.span([(1, 2, 0), (0, 0, 1)], 3, 3)
    assert (2, 1, 2) in S
    assert (1, 0, 0) not in S
