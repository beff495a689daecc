from hypothesis import strategies as st

from altcoh.fplin import FpMatrix
from altcoh.permgrp import Perm


def perms(n):
    return st.permutations(range(n)).map(Perm)


@st.composite
def perm_pairs(draw, max_degree=12):
    n = draw(st.integers(1, max_degree))
    return draw(perms(n)), draw(perms(n))


def matrices(k, p):
    return st.lists(st.integers(0, p - 1), min_size=k * k, max_size=k * k).map(
        lambda e: FpMatrix(p, k, k, tuple(e)))


def invertible_matrices(k, p):
    return matrices(k, p).filter(lambda m: m.det() != 0)
