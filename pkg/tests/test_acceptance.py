"""Acceptance criteria 1-8.  Each test prints one ``criterion N: PASS/FAIL`` line."""

import itertools
import math
import random
import time
from contextlib import contextmanager

import numpy as np

from altcoh.elemab import (T_km, closed_system_check, detecting_subgroup, regular_embedding,
                           sylow_generators)
from altcoh.exterior import ExtElement, act
from altcoh.fplin import FpMatrix, gl, gl_plus, kernel, rank, rref
from altcoh.monomial import (MonomialElement, centralizer_order, centralizer_shape,
                             disjoint_monomial_cycles, elements, embed_table,
                             monomial_conjugate_test, zprime)
from altcoh.permgrp import (GroupTable, Perm, alternating_group, centralizer, conjugacy_classes,
                            symmetric_group, weyl_action)
from altcoh.stablecoh import stable_dim, verify_theorem


@contextmanager
def criterion(capsys, number, budget=None):
    """Print the verdict line for one criterion, including its runtime."""
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        if budget is not None and elapsed >= budget:
            ok = False
        with capsys.disabled():
            limit = f" (budget {budget:.0f}s)" if budget else ""
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} [{elapsed:.1f}s{limit}]")
    if budget is not None:
        assert elapsed < budget, f"criterion {number} took {elapsed:.1f}s"


def ore_check(H, m):
    G = embed_table(H, m)
    assert G.order() == H.size ** m * math.factorial(m)
    label = {g: i for i, cls in enumerate(conjugacy_classes(G)) for g in cls}
    ident = MonomialElement.identity(H, m)
    els = list(elements(H, m))
    for x in els:
        cycles = disjoint_monomial_cycles(x)
        parts = [c.to_element(H, m) for c in cycles]
        support = [i for c in cycles for i in c.support]
        assert len(support) == len(set(support))
        assert all(a * b == b * a for a, b in itertools.combinations(parts, 2))
        prod = ident
        for y in parts:
            prod = prod * y
        assert prod == x
        xl = label[x.to_perm()]
        for y in els:
            assert monomial_conjugate_test(x, y) == (xl == label[y.to_perm()])
        assert centralizer_order(centralizer_shape(x)) == centralizer(G, x.to_perm()).order()
    return len(els)


def test_criterion_1_ore_suite(capsys):
    with criterion(capsys, 1, budget=120):
        assert ore_check(GroupTable.cyclic(3), 3) == 162
        assert ore_check(GroupTable.symmetric(3), 2) == 72


def test_criterion_2_weyl_suite(capsys):
    with criterion(capsys, 2, budget=300):
        T22 = T_km(2, 2, 3)
        W = weyl_action(symmetric_group(9), T22, method="enumerate")
        assert len(W) == 48 and frozenset(W.matrices) == gl(2, 3)
        W = weyl_action(alternating_group(9), T22, method="enumerate")
        assert len(W) == 24 and frozenset(W.matrices) == gl_plus(2, 3)
        for k in (1, 2, 3):
            W = weyl_action(alternating_group(3 * k), detecting_subgroup(3 * k, 3), method="enumerate")
            assert len(W) == math.factorial(k) * 2 ** (k - 1)


def test_criterion_3_main_theorem(capsys):
    with criterion(capsys, 3):
        for n in (3, 4, 5, 6, 7, 9, 10):
            rep = verify_theorem(n, 3, closed_system=False)
            assert rep.weyl_source == "normalizer"
            assert rep.invariant_dims == rep.formula
            assert rep.formula == tuple(stable_dim(n, 3, d) for d in range(n // 3 + 1))
            if n == 9:
                assert rep.invariant_dims == (1, 0, 0, 1)


def test_criterion_4_vanishing(capsys):
    with criterion(capsys, 4):
        for n, p in ((5, 5), (10, 5), (7, 7)):
            rep = verify_theorem(n, p, closed_system=False)
            assert rep.weyl_source == "normalizer"
            assert all(v == 0 for v in rep.formula[1:])
            assert all(v == 0 for v in rep.invariant_dims[1:])


def test_criterion_5_closed_system(capsys):
    with criterion(capsys, 5, budget=600):
        G, S = alternating_group(9), sylow_generators(9, 3)
        for E in (detecting_subgroup(9, 3), T_km(2, 2, 3)):
            res = closed_system_check(E, S, G, method="enumerate")
            assert res.passed and res.conjugators_scanned == 181440


# transcribed from the basis list w_{2i}, u_1 w_{2i}
P2_GOLDEN = {m: [1, 0] + [1] * (2 * m) for m in range(1, 7)}


def test_criterion_6_p2_table(capsys):
    with criterion(capsys, 6):
        for m, row in P2_GOLDEN.items():
            top = len(row) + 4
            golden = row + [0] * (top - len(row))
            assert [stable_dim(2 * m, 2, d) for d in range(top)] == golden
            assert [stable_dim(2 * m + 1, 2, d) for d in range(top)] == golden
        assert stable_dim(8, 2, 1) == 0 and stable_dim(8, 2, 3) == 1


def is_power_of_two(v):
    return v >= 1 and v & (v - 1) == 0


def test_criterion_7_zprime(capsys):
    with criterion(capsys, 7, budget=180):
        C3 = GroupTable.cyclic(3)
        checked = 0
        for m in (3, 4):
            ambient = embed_table(C3, m, alternating=True)
            rows = ambient.element_rows()
            sample = [x for x in elements(C3, m, alternating=True) if 3 ** 10 % x.order() == 0]
            for x in sample[::7]:
                xp = np.array(x.to_perm().images)
                # brute force: y commutes with x iff y(x(i)) == x(y(i))
                commuting = np.all(rows[:, xp] == xp[rows], axis=1)
                cent = int(commuting.sum())
                Z = zprime(x, 3)
                for g in Z.generators:
                    assert g in ambient and g * x.to_perm() == x.to_perm() * g
                assert cent % Z.order() == 0 and is_power_of_two(cent // Z.order())
                checked += 1
        assert checked >= 20


def test_criterion_8_properties(capsys):
    rng = random.Random(20240601)

    def matrix(k, p, invertible=False):
        while True:
            M = FpMatrix.from_rows([[rng.randrange(p) for _ in range(k)] for _ in range(k)], p)
            if not invertible or M.det():
                return M

    def ext(k, p):
        return ExtElement.from_dict(p, k, {mono: rng.randrange(p)
                                           for d in range(k + 1)
                                           for mono in itertools.combinations(range(k), d)})

    with criterion(capsys, 8):
        for _ in range(60):
            p = rng.choice([2, 3, 5, 7])
            k = rng.randrange(1, 5)
            g, h = matrix(k, p, True), matrix(k, p, True)
            a, b = ext(k, p), ext(k, p)
            # action homomorphism law (right action) and algebra map
            assert act(g @ h, a) == act(h, act(g, a))
            assert act(g, a ^ b) == act(g, a) ^ act(g, b)
            # top-form determinant law
            assert act(g, ExtElement.top(p, k)) == ExtElement.top(p, k).scale(g.det())
            # rref idempotence and rank-nullity
            M = FpMatrix.from_rows([[rng.randrange(p) for _ in range(k + 1)] for _ in range(k)], p)
            assert rref(rref(M)) == rref(M)
            assert rank(M) + kernel(M).dim == M.ncols
            # permutation composition is an action on points
            n = rng.randrange(1, 10)
            s, t = Perm(rng.sample(range(n), n)), Perm(rng.sample(range(n), n))
            assert all((s * t)(i) == s(t(i)) for i in range(n))
        # regular-representation freeness
        for factors in ([3], [9], [3, 3], [9, 3], [2, 2, 2], [4, 2], [5, 5]):
            rows = regular_embedding(factors).element_rows()
            ident = np.arange(rows.shape[1])
            nontrivial = rows[np.any(rows != ident, axis=1)]
            assert len(rows) == math.prod(factors)
            assert not np.any(nontrivial == ident)
