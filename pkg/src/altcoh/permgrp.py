"""Finite permutation groups on the points ``0..n-1``.

Composition follows ``(p * q)(x) == p(q(x))``: the right factor acts first.

Groups carry a Schreier-Sims stabilizer chain (order, membership, lazy
element generation).  Below the enumeration cap, centralizers, normalizers
and conjugacy tests scan the full element array with numpy; above it they
fall back to a backtracking conjugator search.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from . import limits
from .fplin import FpMatrix
from .limits import ResourceLimitError, check_deadline, check_enumeration

_DT = np.int16
_CHUNK = 1 << 15


class Perm:
    """An immutable permutation given by its image list."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_hash", hash(images))

    @classmethod
    def _raw(cls, images: tuple[int, ...]) -> "Perm":
        obj = object.__new__(cls)
        object.__setattr__(obj, "images", images)
        object.__setattr__(obj, "_hash", hash(images))
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        img = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            if seen.intersection(cyc) or len(set(cyc)) != len(cyc):
                raise ValueError("cycles must be disjoint")
            seen.update(cyc)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(img)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Perm":
        """Parse a 1-based image list."""
        return cls(i - 1 for i in data)

    def to_json(self) -> list[int]:
        return [i + 1 for i in self.images]

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Perm") -> "Perm":
        return compose(self, other)

    def __pow__(self, e: int) -> "Perm":
        base = self if e >= 0 else self.inverse()
        out = Perm.identity(self.degree)
        for _ in range(abs(e)):
            out = out * base
        return out

    def inverse(self) -> "Perm":
        return Perm._raw(_inv(self.images))

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def sign(self) -> int:
        return sign(self)

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles(include_fixed=True))) if self.degree else 1

    def __repr__(self) -> str:
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())
        return f"Perm({cyc or '()'}, n={self.degree})"


def _mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple([a[x] for x in b])


def _inv(a: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def compose(p: Perm, q: Perm) -> Perm:
    """``compose(p, q)(x) == p(q(x))``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Perm._raw(_mul(p.images, q.images))


def inverse(p: Perm) -> Perm:
    return p.inverse()


def sign(p: Perm) -> int:
    even_cycles = sum(1 for c in p.cycles() if len(c) % 2 == 0)
    return -1 if even_cycles % 2 else 1


# ---------------------------------------------------------------------------
# vectorised helpers on arrays of permutations (one permutation per row)


def _keys(arr: np.ndarray) -> np.ndarray:
    """Exact sort keys that order rows lexicographically."""
    arr = np.asarray(arr)
    n = arr.shape[-1]
    if n <= 15:
        weights = np.array([n ** (n - 1 - i) for i in range(n)], dtype=np.int64)
        return arr.astype(np.int64) @ weights
    rows = np.ascontiguousarray(arr.astype(">u2"))
    return rows.view(np.dtype((np.void, 2 * n))).reshape(arr.shape[:-1])


def _conj_rows(x: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Row-wise ``x h x^-1`` for a fixed permutation ``h``."""
    out = np.empty_like(x)
    np.put_along_axis(out, x, x[:, h], axis=1)
    return out


def _inv_rows(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    np.put_along_axis(out, x, np.broadcast_to(np.arange(x.shape[1], dtype=x.dtype), x.shape), axis=1)
    return out


def _conj_many(x: np.ndarray, hs: np.ndarray) -> np.ndarray:
    """``out[b, j] = x_b hs_j x_b^-1``; shape (B, m, n)."""
    xinv = _inv_rows(x)
    idx = hs[:, xinv]  # (m, B, n): hs_j(x_b^-1(y))
    idx = np.transpose(idx, (1, 0, 2))
    return np.take_along_axis(x[:, None, :], idx, axis=2)


def _sorted_unique_rows(arr: np.ndarray) -> np.ndarray:
    keys = _keys(arr)
    _, idx = np.unique(keys, return_index=True)
    return arr[idx]


def _closure_rows(gens: np.ndarray, n: int) -> np.ndarray:
    """Breadth-first closure of a set of generators; sorted unique rows."""
    ident = np.arange(n, dtype=_DT)[None, :]
    seen = ident
    seen_keys = _keys(seen)
    frontier = ident
    while len(frontier):
        check_deadline()
        cand = np.concatenate([g[frontier] for g in gens]) if len(gens) else frontier[:0]
        ck = _keys(cand)
        ck, first = np.unique(ck, return_index=True)
        cand = cand[first]
        fresh = ~np.isin(ck, seen_keys)
        frontier = cand[fresh]
        seen = np.concatenate([seen, frontier])
        seen_keys = np.concatenate([seen_keys, ck[fresh]])
        check_enumeration(len(seen), "closure enumeration")
    order = np.argsort(seen_keys, kind="stable")
    return seen[order]


# ---------------------------------------------------------------------------
# stabilizer chains


class _Level:
    __slots__ = ("point", "gens", "reps", "inv_reps", "checked")

    def __init__(self, point: int, ident: tuple[int, ...]):
        self.point = point
        self.gens: list[tuple[int, ...]] = []
        self.reps: dict[int, tuple[int, ...]] = {point: ident}  # reps[b](point) == b
        self.inv_reps: dict[int, tuple[int, ...]] = {point: ident}
        self.checked: set[tuple[int, int]] = set()


class StabChain:
    """Deterministic Schreier-Sims base and strong generating set."""

    def __init__(self, degree: int, gens: Iterable[tuple[int, ...]]):
        self.degree = degree
        self.ident = tuple(range(degree))
        self.levels: list[_Level] = []
        for g in gens:
            if g != self.ident:
                self._extend(0, tuple(g))

    def strip(self, g: tuple[int, ...], start: int = 0) -> tuple[tuple[int, ...], int]:
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            b = g[lv.point]
            if b not in lv.inv_reps:
                return g, i
            g = _mul(lv.inv_reps[b], g)
        return g, len(self.levels)

    def _extend(self, i: int, g: tuple[int, ...]) -> None:
        if i < len(self.levels):
            res, _ = self.strip(g, i)
            if res == self.ident:
                return
        else:
            pt = next(x for x in range(self.degree) if g[x] != x)
            self.levels.append(_Level(pt, self.ident))
        lv = self.levels[i]
        lv.gens.append(g)
        queue = list(lv.reps)
        while queue:
            b = queue.pop()
            u = lv.reps[b]
            for s in lv.gens:
                c = s[b]
                if c not in lv.reps:
                    rep = _mul(s, u)
                    lv.reps[c] = rep
                    lv.inv_reps[c] = _inv(rep)
                    queue.append(c)
        for b in sorted(lv.reps):
            for si, s in enumerate(lv.gens):
                if (b, si) in lv.checked:
                    continue
                lv.checked.add((b, si))
                c = s[b]
                h = _mul(lv.inv_reps[c], _mul(s, lv.reps[b]))
                if h == self.ident:
                    continue
                res, _ = self.strip(h, i + 1)
                if res != self.ident:
                    self._extend(i + 1, h)

    def order(self) -> int:
        return math.prod(len(lv.reps) for lv in self.levels)

    def contains(self, g: tuple[int, ...]) -> bool:
        if len(g) != self.degree:
            return False
        return self.strip(tuple(g))[0] == self.ident

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    def element_rows(self) -> np.ndarray:
        """All elements as products of transversal representatives."""
        arr = np.arange(self.degree, dtype=_DT)[None, :]
        for lv in reversed(self.levels):
            reps = np.array([lv.reps[b] for b in sorted(lv.reps)], dtype=_DT)
            arr = np.concatenate([u[arr] for u in reps])
            check_deadline()
        return arr


# ---------------------------------------------------------------------------
# groups


class PermGroup:
    """Finitely generated permutation group of a fixed degree."""

    def __init__(self, generators: Iterable[Perm | Sequence[int]], degree: Optional[int] = None,
                 name: Optional[str] = None):
        gens = tuple(g if isinstance(g, Perm) else Perm(g) for g in generators)
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise ValueError("all generators must have the group's degree")
        self.degree = degree
        self.generators = gens
        self.name = name
        self._chain: Optional[StabChain] = None
        self._rows: Optional[np.ndarray] = None
        self._row_keys: Optional[np.ndarray] = None

    @classmethod
    def from_rows(cls, rows: np.ndarray, degree: int, name: Optional[str] = None) -> "PermGroup":
        """Wrap a complete, closed element array; a small generating set is extracted."""
        rows = _sorted_unique_rows(np.asarray(rows, dtype=_DT).reshape(-1, degree))
        keys = _keys(rows)
        gens: list[np.ndarray] = []
        sub_keys = _keys(np.arange(degree, dtype=_DT)[None, :])
        while len(sub_keys) < len(rows):
            missing = np.flatnonzero(~np.isin(keys, sub_keys))
            gens.append(rows[missing[0]])
            sub_keys = _keys(_closure_rows(np.array(gens), degree))
        if len(sub_keys) != len(rows):
            raise ValueError("element array is not closed under multiplication")
        G = cls([Perm._raw(tuple(int(v) for v in g)) for g in gens], degree, name=name)
        G._rows, G._row_keys = rows, keys
        return G

    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            self._chain = StabChain(self.degree, (g.images for g in self.generators))
        return self._chain

    def order(self) -> int:
        if self._rows is not None:
            return len(self._rows)
        return self.chain.order()

    def __contains__(self, g: Perm) -> bool:
        return isinstance(g, Perm) and g.degree == self.degree and self.chain.contains(g.images)

    def element_rows(self) -> np.ndarray:
        """Every element as a row, in lexicographic order of image sequences."""
        if self._rows is None:
            check_enumeration(self.order(), "element enumeration")
            rows = self.chain.element_rows()
            keys = _keys(rows)
            order = np.argsort(keys, kind="stable")
            self._rows, self._row_keys = rows[order], keys[order]
        return self._rows

    def element_keys(self) -> np.ndarray:
        self.element_rows()
        return self._row_keys

    def elements(self) -> list[Perm]:
        return [Perm._raw(tuple(int(v) for v in r)) for r in self.element_rows()]

    def closure_rows(self) -> np.ndarray:
        """Elements by plain breadth-first closure; independent of the chain."""
        gens = np.array([g.images for g in self.generators], dtype=_DT).reshape(-1, self.degree)
        return _closure_rows(gens, self.degree)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(g in other for g in self.generators)

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(a * b == b * a for a, b in itertools.combinations(gs, 2))

    def orbits(self) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for s in range(self.degree):
            if seen[s]:
                continue
            orb, queue = [s], [s]
            seen[s] = True
            while queue:
                x = queue.pop()
                for g in self.generators:
                    y = g.images[x]
                    if not seen[y]:
                        seen[y] = True
                        orb.append(y)
                        queue.append(y)
            out.append(tuple(sorted(orb)))
        return out

    def __repr__(self) -> str:
        label = self.name or f"<{len(self.generators)} generators>"
        return f"PermGroup({label}, degree={self.degree})"


@functools.lru_cache(maxsize=None)
def symmetric_group(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("degree must be positive")
    gens = []
    if n >= 2:
        gens.append(Perm.from_cycles(n, [(0, 1)]))
    if n >= 3:
        gens.append(Perm.from_cycles(n, [tuple(range(n))]))
    return PermGroup(gens, n, name=f"S{n}")


@functools.lru_cache(maxsize=None)
def alternating_group(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("degree must be positive")
    gens = [Perm.from_cycles(n, [(i, i + 1, i + 2)]) for i in range(n - 2)]
    return PermGroup(gens, n, name=f"A{n}")


def order(G: PermGroup) -> int:
    return G.order()


def _use_enumeration(G: PermGroup, method: str) -> bool:
    if method == "enumerate":
        return True
    if method == "backtrack":
        return False
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    return G._rows is not None or G.order() <= limits.current().enumeration_cap


def _chunks(rows: np.ndarray) -> Iterator[np.ndarray]:
    for start in range(0, len(rows), _CHUNK):
        check_deadline()
        yield rows[start:start + _CHUNK]


def _backtrack(G: PermGroup, hs: Sequence[tuple[int, ...]],
               targets: Sequence[Sequence[tuple[int, ...]]], first_only: bool = False) -> list[tuple[int, ...]]:
    """All ``x`` in ``G`` with ``x hs[r] x^-1`` in ``targets[r]`` for every ``r``.

    Points are assigned orbit by orbit (under ``<hs>``); every completed
    pair ``i -> hs[r](i)`` filters the surviving targets.
    """
    n = G.degree
    hinv = [_inv(h) for h in hs]
    point_order: list[int] = []
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        queue = [s]
        seen[s] = True
        while queue:
            x = queue.pop(0)
            point_order.append(x)
            for h, hi in zip(hs, hinv):
                for y in (h[x], hi[x]):
                    if not seen[y]:
                        seen[y] = True
                        queue.append(y)
    x = [-1] * n
    used = [False] * n
    found: list[tuple[int, ...]] = []
    budget = limits.current().backtrack_nodes
    nodes = 0

    def rec(depth: int, cands: list[list[tuple[int, ...]]]) -> bool:
        nonlocal nodes
        if depth == n:
            perm = tuple(x)
            if G.chain.contains(perm):
                found.append(perm)
                return first_only
            return False
        i = point_order[depth]
        for a in range(n):
            if used[a]:
                continue
            nodes += 1
            if nodes > budget:
                raise ResourceLimitError("backtrack search exceeded its node budget")
            if nodes % 4096 == 0:
                check_deadline()
            nxt = []
            for r, h in enumerate(hs):
                c = cands[r]
                j, k = h[i], hinv[r][i]
                if j == i:
                    c = [t for t in c if t[a] == a]
                else:
                    if x[j] >= 0:
                        xj = x[j]
                        c = [t for t in c if t[a] == xj]
                    if x[k] >= 0:
                        xk = x[k]
                        c = [t for t in c if t[xk] == a]
                if not c:
                    break
                nxt.append(c)
            else:
                x[i], used[a] = a, True
                stop = rec(depth + 1, nxt)
                x[i], used[a] = -1, False
                if stop:
                    return True
        return False

    rec(0, [list(t) for t in targets])
    return sorted(found)


def _require_member(G: PermGroup, g: Perm, what: str = "element") -> None:
    if g not in G:
        raise ValueError(f"{what} {g} is not in {G}")


def centralizer(G: PermGroup, g: Perm, method: str = "auto") -> PermGroup:
    """``{x in G : x g = g x}``."""
    _require_member(G, g)
    if g.is_identity():
        return G
    if _use_enumeration(G, method):
        ga = np.array(g.images, dtype=_DT)
        hits = [X[np.all(X[:, ga] == ga[X], axis=1)] for X in _chunks(G.element_rows())]
        return PermGroup.from_rows(np.concatenate(hits), G.degree)
    rows = _backtrack(G, [g.images], [[g.images]])
    return PermGroup.from_rows(np.array(rows, dtype=_DT), G.degree)


def _subgroup_rows(H: PermGroup) -> np.ndarray:
    return H.element_rows()


def normalizer(G: PermGroup, H: PermGroup, method: str = "auto") -> PermGroup:
    """``{x in G : x H x^-1 = H}`` for a subgroup ``H`` of ``G``."""
    if not H.is_subgroup_of(G):
        raise ValueError("normalizer needs a subgroup of G")
    h_rows = _subgroup_rows(H)
    h_keys = H.element_keys()
    gens = [g for g in H.generators if not g.is_identity()]
    if not gens:
        return G
    if _use_enumeration(G, method):
        hits = []
        for X in _chunks(G.element_rows()):
            mask = np.ones(len(X), dtype=bool)
            for h in gens:
                mask &= np.isin(_keys(_conj_rows(X, np.array(h.images, dtype=_DT))), h_keys)
            hits.append(X[mask])
        return PermGroup.from_rows(np.concatenate(hits), G.degree)
    targets = [tuple(int(v) for v in r) for r in h_rows]
    rows = _backtrack(G, [h.images for h in gens], [targets] * len(gens))
    return PermGroup.from_rows(np.array(rows, dtype=_DT), G.degree)


def are_conjugate(G: PermGroup, x: Perm, y: Perm, method: str = "auto") -> bool:
    """True iff ``g x g^-1 == y`` for some ``g`` in ``G``."""
    _require_member(G, x)
    _require_member(G, y)
    if x == y:
        return True
    if sorted(map(len, x.cycles(True))) != sorted(map(len, y.cycles(True))):
        return False
    if _use_enumeration(G, method):
        xa = np.array(x.images, dtype=_DT)
        ya = np.array(y.images, dtype=_DT)
        return any(np.any(np.all(_conj_rows(X, xa) == ya, axis=1)) for X in _chunks(G.element_rows()))
    return bool(_backtrack(G, [x.images], [[y.images]], first_only=True))


def conjugacy_classes(G: PermGroup) -> list[list[Perm]]:
    """Conjugacy classes by exhaustive conjugation; classes and members sorted."""
    rows, keys = G.element_rows(), G.element_keys()
    label = np.full(len(rows), -1)
    classes = []
    for idx in range(len(rows)):
        if label[idx] >= 0:
            continue
        conj = np.concatenate([_conj_rows(X, rows[idx]) for X in _chunks(rows)])
        pos = np.unique(np.searchsorted(keys, _keys(conj)))
        label[pos] = len(classes)
        classes.append([Perm._raw(tuple(int(v) for v in rows[i])) for i in pos])
    return classes


# ---------------------------------------------------------------------------
# Weyl action on an elementary abelian subgroup


@dataclass(frozen=True)
class WeylAction:
    """Image of ``N_G(E)`` in ``Aut(E) = GL_k(F_p)``.

    Row ``i`` of each matrix holds the coordinates of ``x e_i x^-1`` in the
    ordered basis of ``E``.
    """

    p: int
    rank: int
    matrices: tuple[FpMatrix, ...]
    normalizer_order: int
    kernel_order: int  # |C_G(E)|, the elements acting trivially

    def __len__(self) -> int:
        return len(self.matrices)

    def __iter__(self) -> Iterator[FpMatrix]:
        return iter(self.matrices)

    def __contains__(self, m: FpMatrix) -> bool:
        return m in set(self.matrices)


def elementary_abelian_table(generators: Sequence[Perm], p: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Enumerate ``<generators>`` as ``(rows, keys, coords)`` sorted by key.

    Raises ``ValueError`` unless the generators form a basis of an
    elementary abelian p-group.
    """
    if not generators:
        raise ValueError("empty basis")
    n = generators[0].degree
    gens = [g.images for g in generators]
    for g in generators:
        if g.is_identity() or g.order() != p:
            raise ValueError("basis elements must have order p")
    for a, b in itertools.combinations(gens, 2):
        if _mul(a, b) != _mul(b, a):
            raise ValueError("basis elements do not commute")
    powers = []
    for g in gens:
        pw = [tuple(range(n))]
        for _ in range(p - 1):
            pw.append(_mul(g, pw[-1]))
        powers.append(pw)
    rows, coords = [], []
    for vec in itertools.product(range(p), repeat=len(gens)):
        e = tuple(range(n))
        for i, a in enumerate(vec):
            e = _mul(powers[i][a], e)
        rows.append(e)
        coords.append(vec)
    rows = np.array(rows, dtype=_DT)
    keys = _keys(rows)
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    if len(np.unique(keys)) != len(keys):
        raise ValueError("basis elements are not independent")
    return rows[order], keys, np.array(coords, dtype=np.int64)[order]


def weyl_action(G: PermGroup, E, method: str = "auto") -> WeylAction:
    """Matrices by which ``N_G(E)`` acts on ``E``.

    ``E`` needs ``generators`` (an ordered basis) and ``p``.
    """
    p = E.p
    basis = list(E.generators)
    rows, keys, coords = elementary_abelian_table(basis, p)
    EG = PermGroup(basis, G.degree)
    EG._rows, EG._row_keys = rows, keys
    N = normalizer(G, EG, method=method)
    k = len(basis)
    mats = []
    for X in _chunks(N.element_rows()):
        block = np.empty((len(X), k, k), dtype=np.int64)
        for i, e in enumerate(basis):
            pos = np.searchsorted(keys, _keys(_conj_rows(X, np.array(e.images, dtype=_DT))))
            block[:, i, :] = coords[pos]
        mats.append(block.reshape(len(X), k * k))
    flat = np.concatenate(mats)
    ident = np.eye(k, dtype=np.int64).reshape(-1)
    kernel_order = int(np.all(flat == ident, axis=1).sum())
    uniq = np.unique(flat, axis=0)
    matrices = tuple(FpMatrix(p, k, k, tuple(int(v) for v in r)) for r in uniq)
    return WeylAction(p, k, matrices, N.order(), kernel_order)


# ---------------------------------------------------------------------------
# abstract groups by multiplication table


@dataclass(frozen=True)
class GroupTable:
    """Finite group on ``0..size-1`` with ``mul[a][b] = a*b``."""

    size: int
    mul: tuple[tuple[int, ...], ...]
    identity: int
    inv: tuple[int, ...]

    @classmethod
    def from_table(cls, mul: Sequence[Sequence[int]], identity: Optional[int] = None) -> "GroupTable":
        size = len(mul)
        mul = tuple(tuple(int(v) for v in row) for row in mul)
        if any(len(row) != size for row in mul) or any(not 0 <= v < size for row in mul for v in row):
            raise ValueError("malformed multiplication table")
        if identity is None:
            identity = next((e for e in range(size) if mul[e] == tuple(range(size))), None)
            if identity is None:
                raise ValueError("table has no identity")
        inv = []
        for a in range(size):
            b = next((b for b in range(size) if mul[a][b] == identity), None)
            if b is None or mul[b][a] != identity:
                raise ValueError("element without inverse")
            inv.append(b)
        T = cls(size, mul, identity, tuple(inv))
        if any(mul[identity][a] != a or mul[a][identity] != a for a in range(size)):
            raise ValueError("identity is not neutral")
        return T

    @classmethod
    def from_json(cls, data: dict) -> "GroupTable":
        T = cls.from_table(data["mul"], data.get("identity"))
        if "size" in data and data["size"] != T.size:
            raise ValueError("size does not match table")
        return T

    def to_json(self) -> dict:
        return {"size": self.size, "mul": [list(r) for r in self.mul], "identity": self.identity}

    @classmethod
    def from_perms(cls, perms: Sequence[Perm]) -> "GroupTable":
        """Table of a closed list of permutations, identity placed first."""
        els = sorted(set(perms))
        index = {g: i for i, g in enumerate(els)}
        try:
            mul = [[index[a * b] for b in els] for a in els]
        except KeyError:
            raise ValueError("permutation list is not closed") from None
        return cls.from_table(mul)

    @classmethod
    def cyclic(cls, k: int) -> "GroupTable":
        return cls.from_table([[(a + b) % k for b in range(k)] for a in range(k)], 0)

    @classmethod
    def symmetric(cls, k: int) -> "GroupTable":
        return cls.from_perms([Perm(q) for q in itertools.permutations(range(k))])

    @classmethod
    def elementary_abelian(cls, p: int, r: int) -> "GroupTable":
        vecs = list(itertools.product(range(p), repeat=r))
        index = {v: i for i, v in enumerate(vecs)}
        mul = [[index[tuple((x + y) % p for x, y in zip(a, b))] for b in vecs] for a in vecs]
        return cls.from_table(mul, 0)

    def m(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def is_associative(self) -> bool:
        r = range(self.size)
        return all(self.mul[self.mul[a][b]][c] == self.mul[a][self.mul[b][c]] for a in r for b in r for c in r)

    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a] for a in range(self.size) for b in range(self.size))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul[x][a]
            k += 1
        return k

    @functools.cached_property
    def class_rep(self) -> tuple[int, ...]:
        """Least element index in the conjugacy class of each element."""
        reps = [-1] * self.size
        for a in range(self.size):
            if reps[a] >= 0:
                continue
            cls_ = {self.mul[self.mul[g][a]][self.inv[g]] for g in range(self.size)}
            rep = min(cls_)
            for b in cls_:
                reps[b] = rep
        return tuple(reps)

    def centralizer_order(self, a: int) -> int:
        return sum(1 for g in range(self.size) if self.mul[g][a] == self.mul[a][g])

    def regular_perms(self) -> PermGroup:
        """Left regular representation ``h -> (a -> h*a)``."""
        perms = [Perm._raw(tuple(self.mul[h])) for h in range(self.size)]
        return PermGroup(perms, self.size)
