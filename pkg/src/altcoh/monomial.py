"""Complete monomial groups ``H wr S_m`` and Ore's structure theory.

An element is ``((h_0, ..., h_{m-1}); sigma)``; the group law is

    ((h); s) * ((h'); s') = ((h_i * h'_{s^-1(i)})_i; s s')

which makes ``x -> sigma`` a homomorphism under the composition convention of
:mod:`altcoh.permgrp`.  Through a permutation representation ``rep`` of
``H`` on ``d`` points, ``x`` acts on ``m*d`` points by
``i*d + a -> sigma(i)*d + rep(h_{sigma(i)})(a)``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .permgrp import GroupTable, Perm, PermGroup, centralizer, compose


@dataclass(frozen=True)
class MonomialElement:
    H: GroupTable = field(compare=False, repr=False)
    h: tuple[int, ...]
    sigma: Perm

    def __post_init__(self):
        if len(self.h) != self.sigma.degree:
            raise ValueError("component count must equal the permutation degree")
        if any(not 0 <= a < self.H.size for a in self.h):
            raise ValueError("component outside H")

    @property
    def m(self) -> int:
        return self.sigma.degree

    @classmethod
    def identity(cls, H: GroupTable, m: int) -> "MonomialElement":
        return cls(H, (H.identity,) * m, Perm.identity(m))

    def __mul__(self, other: "MonomialElement") -> "MonomialElement":
        return mono_mul(self, other)

    def inverse(self) -> "MonomialElement":
        return mono_inv(self)

    def is_identity(self) -> bool:
        return self.sigma.is_identity() and all(a == self.H.identity for a in self.h)

    def __pow__(self, e: int) -> "MonomialElement":
        base = self if e >= 0 else self.inverse()
        out = MonomialElement.identity(self.H, self.m)
        for _ in range(abs(e)):
            out = out * base
        return out

    def order(self) -> int:
        k, y = 1, self
        while not y.is_identity():
            y = y * self
            k += 1
        return k

    def to_perm(self, rep: Optional[Sequence[Perm]] = None) -> Perm:
        """Image under the block embedding; ``rep[h]`` defaults to left translation."""
        if rep is None:
            rep = [Perm._raw(row) for row in self.H.mul]
        d = rep[0].degree
        img = [0] * (self.m * d)
        for i in range(self.m):
            j = self.sigma.images[i]
            r = rep[self.h[j]].images
            for a in range(d):
                img[i * d + a] = j * d + r[a]
        return Perm._raw(tuple(img))


def _same_ambient(x: MonomialElement, y: MonomialElement) -> None:
    if x.m != y.m or not (x.H is y.H or x.H == y.H):
        raise ValueError("elements of different monomial groups")


def mono_mul(x: MonomialElement, y: MonomialElement) -> MonomialElement:
    _same_ambient(x, y)
    mul = x.H.mul
    sinv = x.sigma.inverse().images
    h = tuple(mul[x.h[i]][y.h[sinv[i]]] for i in range(x.m))
    return MonomialElement(x.H, h, compose(x.sigma, y.sigma))


def mono_inv(x: MonomialElement) -> MonomialElement:
    inv = x.H.inv
    s = x.sigma.images
    return MonomialElement(x.H, tuple(inv[x.h[s[j]]] for j in range(x.m)), x.sigma.inverse())


def elements(H: GroupTable, m: int, alternating: bool = False) -> Iterator[MonomialElement]:
    """All elements of ``H wr S_m`` (or ``H wr A_m``), permutation-major order."""
    for s in itertools.permutations(range(m)):
        sigma = Perm(s)
        if alternating and sigma.sign() < 0:
            continue
        for h in itertools.product(range(H.size), repeat=m):
            yield MonomialElement(H, h, sigma)


@dataclass(frozen=True)
class MonomialCycle:
    support: tuple[int, ...]  # support[t+1] = sigma(support[t])
    h_components: tuple[int, ...]  # component at support[t]
    det_class_rep: int

    @property
    def length(self) -> int:
        return len(self.support)

    def to_element(self, H: GroupTable, m: int) -> MonomialElement:
        img = list(range(m))
        h = [H.identity] * m
        L = self.length
        for t, i in enumerate(self.support):
            img[i] = self.support[(t + 1) % L]
            h[i] = self.h_components[t]
        return MonomialElement(H, tuple(h), Perm._raw(tuple(img)))


def _cycle_product(H: GroupTable, support: Sequence[int], comps: Sequence[int]) -> int:
    # component of x^L at support[0]: h_{i0} h_{i_{L-1}} ... h_{i_1}
    mul = H.mul
    out = comps[0]
    for t in range(len(support) - 1, 0, -1):
        out = mul[out][comps[t]]
    return out


def _all_cycles(x: MonomialElement) -> list[MonomialCycle]:
    out = []
    for cyc in x.sigma.cycles(include_fixed=True):
        comps = tuple(x.h[i] for i in cyc)
        det = x.H.class_rep[_cycle_product(x.H, cyc, comps)]
        out.append(MonomialCycle(cyc, comps, det))
    return out


def disjoint_monomial_cycles(x: MonomialElement) -> list[MonomialCycle]:
    """Commuting monomial cycles with disjoint supports whose product is ``x``.

    Fixed points with identity component are dropped; cycles are ordered by
    their least support point.
    """
    e = x.H.identity
    return [c for c in _all_cycles(x) if not (c.length == 1 and c.h_components[0] == e)]


def determinant_class(c: MonomialCycle, H: GroupTable) -> int:
    """Least element of the H-class of the product along the cycle."""
    return H.class_rep[_cycle_product(H, c.support, c.h_components)]


def cycle_type(x: MonomialElement) -> tuple[tuple[int, int], ...]:
    """Sorted multiset of ``(length, determinant class)`` over all cycles."""
    return tuple(sorted((c.length, c.det_class_rep) for c in _all_cycles(x)))


def monomial_conjugate_test(x: MonomialElement, y: MonomialElement) -> bool:
    _same_ambient(x, y)
    return cycle_type(x) == cycle_type(y)


@dataclass(frozen=True)
class ShapeBlock:
    k: int  # multiplicity
    n: int  # cycle length
    det_class_rep: int
    z_h_order: int


@dataclass(frozen=True)
class CentralizerShape:
    blocks: tuple[ShapeBlock, ...]

    def order(self) -> int:
        return centralizer_order(self)


def centralizer_shape(x: MonomialElement) -> CentralizerShape:
    """Blocks of cycles sharing length and determinant class.

    Trivial fixed points form a block like any other, since they contribute
    a factor ``H wr S_k`` to the centralizer.
    """
    counts = Counter(cycle_type(x))
    blocks = tuple(ShapeBlock(k, n, det, x.H.centralizer_order(det))
                   for (n, det), k in sorted(counts.items()))
    return CentralizerShape(blocks)


def centralizer_order(s: CentralizerShape) -> int:
    return math.prod((b.n * b.z_h_order) ** b.k * math.factorial(b.k) for b in s.blocks)


def _block_perm(tau: Sequence[int], d: int) -> Perm:
    m = len(tau)
    return Perm._raw(tuple(tau[i] * d + a for i in range(m) for a in range(d)))


def embed_in_perm(H_perms: PermGroup, m: int, alternating: bool = False) -> PermGroup:
    """``H wr S_m`` (or ``H wr A_m``) acting on ``m`` blocks of ``H``'s points."""
    d = H_perms.degree
    gens = []
    for g in H_perms.generators:
        gens.append(Perm._raw(tuple(g.images) + tuple(range(d, m * d))))
    if alternating:
        for i in range(m - 2):
            tau = list(range(m))
            tau[i], tau[i + 1], tau[i + 2] = i + 1, i + 2, i
            gens.append(_block_perm(tau, d))
    else:
        if m >= 2:
            gens.append(_block_perm([1, 0] + list(range(2, m)), d))
        if m >= 3:
            gens.append(_block_perm(list(range(1, m)) + [0], d))
    return PermGroup(gens, m * d, name=f"wr{'A' if alternating else 'S'}{m}")


def embed_table(H: GroupTable, m: int, alternating: bool = False) -> PermGroup:
    """Block embedding through the left regular representation of ``H``."""
    return embed_in_perm(H.regular_perms(), m, alternating)


# ---------------------------------------------------------------------------
# the subgroup Z' inside A wr A_m


def _is_prime_power_of(n: int, p: int) -> bool:
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


def zprime_elements(x: MonomialElement, p: int) -> list[MonomialElement]:
    """Generators of ``Z'``: per block of equal cycles, each cycle, the
    diagonal copies of ``A`` on its support, and 3-cycles permuting cycles."""
    A = x.H
    if not A.is_abelian():
        raise ValueError("Z' needs an abelian coefficient group")
    if not _is_prime_power_of(A.size, p):
        raise ValueError(f"coefficient group is not a {p}-group")
    if x.sigma.sign() < 0:
        raise ValueError("element is not in A wr A_m")
    if not _is_prime_power_of(x.order(), p):
        raise ValueError(f"element order is not a power of {p}")
    m, e, mul, inv = x.m, A.identity, A.mul, A.inv
    a_gens = _table_generators(A)
    blocks: dict[tuple[int, int], list[MonomialCycle]] = {}
    for c in _all_cycles(x):
        blocks.setdefault((c.length, c.det_class_rep), []).append(c)
    out: list[MonomialElement] = []
    for (L, _), cycles in sorted(blocks.items()):
        for c in cycles:
            y = c.to_element(A, m)
            if not y.is_identity():
                out.append(y)
            for a in a_gens:
                h = [e] * m
                for i in c.support:
                    h[i] = a
                out.append(MonomialElement(A, tuple(h), Perm.identity(m)))
        for j in range(len(cycles) - 2):
            trio = cycles[j:j + 3]
            img = list(range(m))
            h = [e] * m
            for r in range(3):
                src, dst = trio[r], trio[(r + 1) % 3]
                for t in range(L):
                    img[src.support[t]] = dst.support[t]
                # commuting with x forces c_{next} = h_next * c_cur * h_src_next^-1
                c = e
                h[dst.support[0]] = c
                for t in range(L - 1):
                    c = mul[mul[x.h[dst.support[t + 1]]][c]][inv[x.h[src.support[t + 1]]]]
                    h[dst.support[t + 1]] = c
            out.append(MonomialElement(A, tuple(h), Perm._raw(tuple(img))))
    for y in out:
        if y * x != x * y:
            raise AssertionError("Z' generator does not commute with x")
    return out


def _table_generators(A: GroupTable) -> list[int]:
    """Greedy generating set of a table group (elements in index order)."""
    gens: list[int] = []
    span = {A.identity}
    for a in range(A.size):
        if a in span:
            continue
        gens.append(a)
        frontier = list(span)
        while frontier:
            nxt = []
            for b in frontier:
                for g in gens:
                    c = A.mul[b][g]
                    if c not in span:
                        span.add(c)
                        nxt.append(c)
            frontier = nxt
    return gens


def zprime(x: MonomialElement, p: int) -> PermGroup:
    """``Z'`` as a permutation group in the regular block embedding."""
    gens = [y.to_perm() for y in zprime_elements(x, p)]
    return PermGroup(gens, x.m * x.H.size, name="Z'")


@dataclass(frozen=True)
class ZprimeReport:
    zprime_order: int
    centralizer_order: int
    contained: bool

    @property
    def index(self) -> int:
        return self.centralizer_order // self.zprime_order

    @property
    def index_is_power_of_two(self) -> bool:
        q, r = divmod(self.centralizer_order, self.zprime_order)
        return r == 0 and q & (q - 1) == 0

    @property
    def ok(self) -> bool:
        return self.contained and self.index_is_power_of_two


def zprime_report(x: MonomialElement, p: int, ambient: Optional[PermGroup] = None) -> ZprimeReport:
    """Compare ``Z'`` with the brute-force centralizer of ``x`` in ``A wr A_m``."""
    if ambient is None:
        ambient = embed_table(x.H, x.m, alternating=True)
    xp = x.to_perm()
    Z = centralizer(ambient, xp)
    Zp = zprime(x, p)
    contained = all(g in Z for g in Zp.generators)
    return ZprimeReport(Zp.order(), Z.order(), contained)

