"""Elementary abelian p-subgroups of symmetric and alternating groups.

Covers index vectors, the block subgroups ``T(i_1, ..., i_m)`` built from
regular representations, the detecting subgroup ``E``, Sylow subgroups, the
reduction of a non-cyclic abelian p-group into a product of smaller
alternating groups, and the closed-system check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .fplin import is_prime
from . import limits
from .limits import check_deadline
from .permgrp import (Perm, PermGroup, _backtrack, _chunks, _conj_many, _DT, _keys,
                      alternating_group, elementary_abelian_table, symmetric_group)


def _check_odd_prime(p: int) -> None:
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


@dataclass(frozen=True)
class IndexVector:
    p: int
    m: int
    i: tuple[int, ...]

    def __post_init__(self):
        if len(self.i) != self.m or sum(a * self.p ** (j + 1) for j, a in enumerate(self.i)) != self.p ** self.m:
            raise ValueError(f"{self.i} does not satisfy sum i_j p^j = p^m")

    @property
    def rank(self) -> int:
        return sum((j + 1) * a for j, a in enumerate(self.i))


def index_vectors(m: int, p: int) -> list[IndexVector]:
    """All ``(i_1..i_m)`` with ``sum i_j p^j = p^m``, lexicographically."""
    if m < 1:
        raise ValueError("m must be positive")
    _check_odd_prime(p)
    out: list[tuple[int, ...]] = []

    def rec(j: int, remaining: int, acc: list[int]) -> None:
        # choose i_j for j = 1..m in order; later digits absorb the rest
        if j > m:
            if remaining == 0:
                out.append(tuple(acc))
            return
        w = p ** j
        for a in range(remaining // w + 1):
            rec(j + 1, remaining - a * w, acc + [a])

    rec(1, p ** m, [])
    return [IndexVector(p, m, v) for v in sorted(out)]


def base_p_digits(n: int, p: int) -> tuple[int, ...]:
    """``(a_0, ..., a_m)`` with ``n = sum a_j p^j``, ``a_m != 0``."""
    if n < 1:
        raise ValueError("n must be positive")
    digits = []
    while n:
        n, r = divmod(n, p)
        digits.append(r)
    return tuple(digits)


@dataclass(frozen=True)
class ElemAbSubgroup:
    ambient_degree: int
    p: int
    generators: tuple[Perm, ...]
    blocks: tuple[tuple[int, int], ...]  # (first point, size)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def order(self) -> int:
        return self.p ** self.rank

    def group(self) -> PermGroup:
        G = PermGroup(self.generators, self.ambient_degree)
        if self.generators:
            rows, keys, _ = elementary_abelian_table(list(self.generators), self.p)
            G._rows, G._row_keys = rows, keys
        return G

    def to_json(self) -> dict:
        return {
            "ambient_degree": self.ambient_degree,
            "p": self.p,
            "rank": self.rank,
            "order": self.order(),
            "generators": [g.to_json() for g in self.generators],
            "blocks": [{"start": s + 1, "size": z} for s, z in self.blocks],
        }


def _translation_images(orders: Sequence[int], factor: int) -> list[int]:
    """Left translation by the ``factor``-th basis vector of ``prod Z/orders``.

    Points are exponent vectors in lexicographic order (first coordinate
    most significant).
    """
    strides = [math.prod(orders[t + 1:]) for t in range(len(orders))]
    img = []
    for x in range(math.prod(orders)):
        coord = (x // strides[factor]) % orders[factor]
        step = (1 if coord + 1 < orders[factor] else 1 - orders[factor]) * strides[factor]
        img.append(x + step)
    return img


def regular_embedding(cyclic_factors: Sequence[int]) -> PermGroup:
    """``prod Z/q_i`` acting on itself by left translation."""
    if not cyclic_factors or any(q < 1 for q in cyclic_factors):
        raise ValueError("need positive cyclic factor orders")
    gens = [Perm(_translation_images(cyclic_factors, t)) for t in range(len(cyclic_factors))]
    G = PermGroup(gens, math.prod(cyclic_factors), name="regular")
    G.element_rows()  # enforces the enumeration cap
    return G


def _shifted(images: Sequence[int], start: int, n: int) -> Perm:
    img = list(range(n))
    for a, b in enumerate(images):
        img[start + a] = start + b
    return Perm._raw(tuple(img))


def build_T(iv: IndexVector) -> ElemAbSubgroup:
    """``T(i_1..i_m)`` in ``S_{p^m}``: ``i_j`` regular blocks of ``(Z/p)^j``."""
    p, n = iv.p, iv.p ** iv.m
    gens: list[Perm] = []
    blocks: list[tuple[int, int]] = []
    offset = 0
    for j, count in enumerate(iv.i, start=1):
        size = p ** j
        local = [_translation_images([p] * j, t) for t in range(j)]
        for s in range(count):
            start = offset + s * size
            blocks.append((start, size))
            gens.extend(_shifted(img, start, n) for img in local)
        offset += count * size
    return ElemAbSubgroup(n, p, tuple(gens), tuple(blocks))


def T_km(k: int, m: int, p: int) -> ElemAbSubgroup:
    """``T_{k,m}``: ``p^(m-k)`` regular blocks of size ``p^k``."""
    i = [0] * m
    i[k - 1] = p ** (m - k)
    return build_T(IndexVector(p, m, tuple(i)))


def detecting_subgroup(n: int, p: int) -> ElemAbSubgroup:
    """Disjoint p-cycles ``(0 .. p-1), (p .. 2p-1), ...`` covering ``n - a_0`` points."""
    _check_odd_prime(p)
    if n < 1:
        raise ValueError("n must be positive")
    k = (n - n % p) // p
    gens = tuple(_shifted([(a + 1) % p for a in range(p)], s * p, n) for s in range(k))
    return ElemAbSubgroup(n, p, gens, tuple((s * p, p) for s in range(k)))


def sylow_generators(n: int, p: int) -> PermGroup:
    """Sylow p-subgroup of ``A_n``: iterated wreath products per base-p digit."""
    _check_odd_prime(p)
    digits = base_p_digits(n, p)
    gens = []
    offset = 0
    for j in range(1, len(digits)):
        size = p ** j
        for _ in range(digits[j]):
            for t in range(1, j + 1):
                q = p ** t
                local = [(x + p ** (t - 1)) % q if x < q else x for x in range(size)]
                gens.append(_shifted(local, offset, n))
            offset += size
    return PermGroup(gens, n, name=f"Syl{p}(A{n})")


def legendre_exponent(n: int, p: int) -> int:
    e, q = 0, p
    while q <= n:
        e += n // q
        q *= p
    return e


# ---------------------------------------------------------------------------
# reduction of abelian p-groups


@dataclass(frozen=True)
class ReductionFactor:
    size: int  # t_h
    points: Optional[tuple[int, ...]]  # orbit, or None for a grid coordinate
    actions: tuple[Perm, ...]  # action of each generator of A on this factor


@dataclass(frozen=True)
class AbelianReduction:
    """``A <= prod A_{t_h}``; ``kind`` is ``orbits`` (point partition) or
    ``grid`` (a regular orbit identified with ``A' x <c>``)."""

    ambient_degree: int
    kind: str
    factors: tuple[ReductionFactor, ...]
    # grid case: (coordinate pair) -> point
    grid_points: Optional[dict] = field(default=None, compare=False, repr=False)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(f.size for f in self.factors)


def _as_generators(A) -> tuple[list[Perm], int]:
    if isinstance(A, ElemAbSubgroup):
        return list(A.generators), A.ambient_degree
    if isinstance(A, PermGroup):
        return list(A.generators), A.degree
    gens = list(A)
    if not gens:
        raise ValueError("empty generator list")
    return gens, gens[0].degree


def reduce_abelian(A, N: Optional[int] = None) -> AbelianReduction:
    """Exhibit a non-cyclic abelian p-group (p odd) inside a product of
    alternating groups of degrees smaller than ``N``; every generator's action
    on every factor is checked to be even and to reproduce the original."""
    gens, degree = _as_generators(A)
    N = degree if N is None else N
    if N != degree:
        raise ValueError("ambient degree mismatch")
    G = PermGroup(gens, degree)
    if not G.is_abelian():
        raise ValueError("group is not abelian")
    order = G.order()
    ps = {q for q in range(2, order + 1) if order % q == 0 and is_prime(q)}
    if len(ps) != 1 or 2 in ps:
        raise ValueError("group is not an odd p-group")
    if max(g.order() for g in G.elements()) == order:
        raise ValueError("group is cyclic; no reduction exists")
    orbits = [o for o in G.orbits() if len(o) > 1]
    if len(orbits) > 1:
        factors = []
        for orb in orbits:
            index = {x: i for i, x in enumerate(orb)}
            acts = tuple(Perm([index[g.images[x]] for x in orb]) for g in gens)
            factors.append(ReductionFactor(len(orb), orb, acts))
        red = AbelianReduction(N, "orbits", tuple(factors))
    else:
        red = _grid_reduction(G, gens, orbits[0], N)
    _certify(red, gens, N)
    return red


def _grid_reduction(G: PermGroup, gens: list[Perm], orbit: tuple[int, ...], N: int) -> AbelianReduction:
    els = G.elements()
    base = orbit[0]
    c = max(els, key=lambda g: (g.order(), [-v for v in g.images]))
    cyc = [c ** i for i in range(c.order())]
    cset = set(cyc)
    ident = Perm.identity(G.degree)
    comp = {ident}

    def span(S: set[Perm], a: Perm) -> set[Perm]:
        out = set(S)
        frontier = list(S)
        while frontier:
            nxt = []
            for b in frontier:
                y = b * a
                if y not in out:
                    out.add(y)
                    nxt.append(y)
            frontier = nxt
        return out

    # greedy complement: some element always extends it while too small
    while len(comp) * len(cyc) < len(els):
        for a in els:
            if a in comp:
                continue
            cand = span(comp, a)
            if cand & cset == {ident}:
                comp = cand
                break
    comp_list = sorted(comp)
    where = {a: i for i, a in enumerate(comp_list)}
    decomp = {}
    for a_idx, a in enumerate(comp_list):
        for i, ci in enumerate(cyc):
            decomp[a * ci] = (a_idx, i)
    acts1, acts2 = [], []
    for g in gens:
        a_idx, e = decomp[g]
        g1 = comp_list[a_idx]
        acts1.append(Perm([where[g1 * a] for a in comp_list]))
        acts2.append(Perm([(i + e) % len(cyc) for i in range(len(cyc))]))
    point_of = {(ai, i): (a * cyc[i]).images[base] for (a, ai) in where.items() for i in range(len(cyc))}
    return AbelianReduction(N, "grid", (ReductionFactor(len(comp_list), None, tuple(acts1)),
                                        ReductionFactor(len(cyc), None, tuple(acts2))), point_of)


def _certify(red: AbelianReduction, gens: list[Perm], N: int) -> None:
    for f in red.factors:
        if not f.size < N:
            raise AssertionError("factor is not smaller than the ambient degree")
        if any(a.sign() != 1 for a in f.actions):
            raise AssertionError("factor action is not even")
    if red.kind == "orbits":
        covered = [x for f in red.factors for x in f.points]
        if len(covered) != len(set(covered)):
            raise AssertionError("orbits overlap")
        for gi, g in enumerate(gens):
            for f in red.factors:
                for i, x in enumerate(f.points):
                    if g.images[x] != f.points[f.actions[gi].images[i]]:
                        raise AssertionError("generator does not match its factor actions")
    else:
        pts = red.grid_points
        for gi, g in enumerate(gens):
            a1, a2 = red.factors[0].actions[gi], red.factors[1].actions[gi]
            for (i, j), x in pts.items():
                if g.images[x] != pts[(a1.images[i], a2.images[j])]:
                    raise AssertionError("generator does not act coordinatewise")


# ---------------------------------------------------------------------------
# conjugacy of subgroups


def _subgroup_key(keys: np.ndarray) -> bytes:
    return np.sort(keys).tobytes()


def _conjugate_keys(X: np.ndarray, H_rows: np.ndarray) -> np.ndarray:
    """Keys of ``x H x^-1`` for each row ``x``, each row sorted; shape (B, |H|)."""
    conj = _conj_many(X, H_rows)
    keys = _keys(conj)
    return np.sort(keys, axis=1)


@dataclass(frozen=True)
class ClosedSystemResult:
    passed: bool
    conjugators_scanned: int
    conjugates_in_S: int  # distinct G-conjugates of E contained in S
    s_conjugates: int  # distinct S-conjugates of E
    method: str

    def __bool__(self) -> bool:
        return self.passed


def closed_system_check(E: ElemAbSubgroup, S: PermGroup, G: PermGroup, method: str = "auto") -> ClosedSystemResult:
    """Every G-conjugate of ``E`` lying in ``S`` is already S-conjugate to ``E``."""
    EG = E.group()
    if not EG.is_subgroup_of(S) or not S.is_subgroup_of(G):
        raise ValueError("need E <= S <= G")
    if method == "auto":
        method = "enumerate" if G.order() <= limits.current().enumeration_cap else "subgroups"
    e_rows = EG.element_rows()
    s_keys = S.element_keys()
    s_orbit = {_subgroup_key(r) for X in _chunks(S.element_rows()) for r in _conjugate_keys(X, e_rows)}
    if method == "enumerate":
        found: set[bytes] = set()
        scanned = 0
        for X in _chunks(G.element_rows()):
            ck = _conjugate_keys(X, e_rows)
            inside = np.isin(ck, s_keys).all(axis=1)
            found.update(_subgroup_key(r) for r in np.unique(ck[inside], axis=0))
            scanned += len(X)
        return ClosedSystemResult(found <= s_orbit, scanned, len(found), len(s_orbit), method)
    if method != "subgroups":
        raise ValueError(f"unknown method {method!r}")
    # candidates: subgroups of S isomorphic to E, tested for G-conjugacy by backtracking
    cands = elementary_abelian_subgroups(S, E.p, rank=E.rank)
    e_gens = [g.images for g in E.generators]
    hits = 0
    passed = True
    for F in cands:
        key = _subgroup_key(_keys(F))
        targets = [tuple(int(v) for v in r) for r in F]
        if _backtrack(G, e_gens, [targets] * len(e_gens), first_only=True):
            hits += 1
            if key not in s_orbit:
                passed = False
    return ClosedSystemResult(passed, 0, hits, len(s_orbit), method)


def elementary_abelian_subgroups(S: PermGroup, p: int, rank: Optional[int] = None) -> list[np.ndarray]:
    """Every elementary abelian p-subgroup of ``S`` (nontrivial), as sorted rows.

    With ``rank`` given, only subgroups of that rank are returned.
    """
    rows = S.element_rows()
    n = S.degree
    ident = np.arange(n, dtype=_DT)
    # order-p elements: x^p == id
    pw = rows.copy()
    for _ in range(p - 1):
        pw = np.take_along_axis(rows, pw, axis=1)
    is_p = np.all(pw == ident, axis=1) & ~np.all(rows == ident, axis=1)
    ords = rows[is_p]
    okeys = _keys(ords)
    level: dict[bytes, np.ndarray] = {}
    for x in ords:
        grp = _cyclic_rows(x, p)
        level.setdefault(_subgroup_key(_keys(grp)), grp)
    out: list[np.ndarray] = []
    r = 1
    while level:
        check_deadline()
        if rank is None or r == rank:
            out.extend(level[k] for k in sorted(level))
        if rank is not None and r >= rank:
            break
        nxt: dict[bytes, np.ndarray] = {}
        for F in level.values():
            fkeys = _keys(F)
            # order-p elements centralizing F and outside it
            comm = np.ones(len(ords), dtype=bool)
            for g in F:
                comm &= np.all(ords[:, g] == g[ords], axis=1)
            comm &= ~np.isin(okeys, fkeys)
            for x in ords[comm]:
                grp = _product_rows(F, _cyclic_rows(x, p))
                k = _subgroup_key(_keys(grp))
                if k not in nxt:
                    nxt[k] = grp
        level = nxt
        r += 1
    return out


def _cyclic_rows(x: np.ndarray, p: int) -> np.ndarray:
    out = [np.arange(len(x), dtype=_DT)]
    for _ in range(p - 1):
        out.append(x[out[-1]])
    return np.array(out)


def _product_rows(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    prod = np.concatenate([a[B] for a in A])
    keys = _keys(prod)
    _, idx = np.unique(keys, return_index=True)
    return prod[idx]


def _row_bytes(ck: np.ndarray) -> np.ndarray:
    ck = np.ascontiguousarray(ck)
    return ck.view(np.dtype((np.void, ck.shape[1] * ck.itemsize))).ravel()


def canonical_conjugate_key(rows: np.ndarray, G: PermGroup) -> bytes:
    """Least sorted key tuple (bytewise) over ``G``-conjugates of the subgroup ``rows``."""
    best = None
    for X in _chunks(G.element_rows()):
        cand = np.sort(_row_bytes(_conjugate_keys(X, rows)))[0].tobytes()
        if best is None or cand < best:
            best = cand
    return best


def maximal_elemab_classes(n: int, p: int, ambient: str = "alternating") -> list[list[np.ndarray]]:
    """Maximal elementary abelian p-subgroups of the Sylow subgroup, grouped
    into conjugacy classes of ``A_n`` (or ``S_n``).

    Each class is a list of members (sorted rows); classes are ordered by
    their canonical key.
    """
    G = alternating_group(n) if ambient == "alternating" else symmetric_group(n)
    subs = elementary_abelian_subgroups(sylow_generators(n, p), p)
    keysets = [set(_keys(F).tolist()) for F in subs]
    maximal = [F for F, ks in zip(subs, keysets)
               if not any(len(o) > len(ks) and ks <= o for o in keysets)]
    canon: dict[bytes, list[np.ndarray]] = {}
    for F in maximal:
        canon.setdefault(canonical_conjugate_key(F, G), []).append(F)
    return [canon[k] for k in sorted(canon)]
