"""Exterior algebra over F_p with matrix actions and graded invariants.

Monomials are sorted tuples of 0-based generator indices.  A matrix ``g``
acts by ``e_i -> sum_j g[i, j] e_j`` extended multiplicatively; on degree
``d`` this is ``v -> v @ C_d(g)`` where ``C_d`` is the compound matrix of
``d x d`` minors in ``itertools.combinations`` order.  Because matrices act
on rows from the right, ``act(g @ h, a) == act(h, act(g, a))``.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .fplin import FpMatrix, FpSubspace, _bareiss_det, fixed_subspace

Monomial = tuple[int, ...]


def _wedge_monomials(a: Monomial, b: Monomial) -> tuple[int, Optional[Monomial]]:
    """Sign and sorted union; ``(0, None)`` when the supports meet."""
    if set(a) & set(b):
        return 0, None
    inversions = sum(1 for x in a for y in b if x > y)
    return (-1) ** inversions, tuple(sorted(a + b))


@dataclass(frozen=True)
class ExtElement:
    p: int
    k: int
    terms: tuple[tuple[Monomial, int], ...]  # sorted, nonzero coefficients only

    @classmethod
    def from_dict(cls, p: int, k: int, coeffs: Mapping[Sequence[int], int]) -> "ExtElement":
        acc: dict[Monomial, int] = {}
        for mono, c in coeffs.items():
            mono = tuple(mono)
            if any(not 0 <= i < k for i in mono):
                raise ValueError(f"monomial {mono} out of range for k={k}")
            if len(set(mono)) != len(mono):
                continue  # repeated generator
            # reorder an unsorted monomial with the sign of its sorting permutation
            inv = sum(1 for x, y in itertools.combinations(mono, 2) if x > y)
            srt = tuple(sorted(mono))
            acc[srt] = (acc.get(srt, 0) + (-1) ** inv * c) % p
        return cls(p, k, tuple(sorted((m, c) for m, c in acc.items() if c)))

    @classmethod
    def one(cls, p: int, k: int) -> "ExtElement":
        return cls.from_dict(p, k, {(): 1})

    @classmethod
    def gen(cls, p: int, k: int, i: int) -> "ExtElement":
        return cls.from_dict(p, k, {(i,): 1})

    @classmethod
    def top(cls, p: int, k: int) -> "ExtElement":
        return cls.from_dict(p, k, {tuple(range(k)): 1})

    @classmethod
    def zero(cls, p: int, k: int) -> "ExtElement":
        return cls(p, k, ())

    @property
    def coeffs(self) -> dict[Monomial, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "ExtElement") -> None:
        if (self.p, self.k) != (other.p, other.k):
            raise ValueError("elements of different exterior algebras")

    def __add__(self, other: "ExtElement") -> "ExtElement":
        self._check(other)
        acc = self.coeffs
        for m, c in other.terms:
            acc[m] = acc.get(m, 0) + c
        return ExtElement.from_dict(self.p, self.k, acc)

    def __neg__(self) -> "ExtElement":
        return self.scale(-1)

    def __sub__(self, other: "ExtElement") -> "ExtElement":
        return self + (-other)

    def scale(self, c: int) -> "ExtElement":
        return ExtElement.from_dict(self.p, self.k, {m: c * v for m, v in self.terms})

    def __xor__(self, other: "ExtElement") -> "ExtElement":
        return wedge(self, other)

    def degree_part(self, d: int) -> "ExtElement":
        return ExtElement(self.p, self.k, tuple(t for t in self.terms if len(t[0]) == d))

    def vector(self, d: int) -> tuple[int, ...]:
        """Coordinates of the degree-``d`` part in the combinations basis."""
        c = self.coeffs
        return tuple(c.get(m, 0) for m in itertools.combinations(range(self.k), d))

    @classmethod
    def from_vector(cls, p: int, k: int, d: int, v: Sequence[int]) -> "ExtElement":
        return cls.from_dict(p, k, dict(zip(itertools.combinations(range(k), d), v)))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms:
            mono = "^".join(f"e{i + 1}" for i in m) or "1"
            parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)


def wedge(a: ExtElement, b: ExtElement) -> ExtElement:
    a._check(b)
    acc: dict[Monomial, int] = {}
    for ma, ca in a.terms:
        for mb, cb in b.terms:
            sign, m = _wedge_monomials(ma, mb)
            if m is not None:
                acc[m] = acc.get(m, 0) + sign * ca * cb
    return ExtElement.from_dict(a.p, a.k, acc)


@functools.lru_cache(maxsize=4096)
def compound_matrix(g: FpMatrix, d: int) -> FpMatrix:
    """Matrix of ``d x d`` minors, rows and columns in combinations order."""
    if not g.is_square:
        raise ValueError("compound matrix of a non-square matrix")
    k = g.nrows
    subsets = list(itertools.combinations(range(k), d))
    rows = g.rows
    entries = []
    for S in subsets:
        for T in subsets:
            entries.append(_bareiss_det([[rows[i][j] for j in T] for i in S]) % g.p)
    return FpMatrix(g.p, len(subsets), len(subsets), tuple(entries))


def act(g: FpMatrix, a: ExtElement) -> ExtElement:
    """Algebra automorphism extending ``e_i -> sum_j g[i, j] e_j``."""
    if g.p != a.p or g.nrows != a.k or not g.is_square:
        raise ValueError("matrix does not match the exterior algebra")
    if not g.is_invertible():
        raise ValueError("act needs an invertible matrix")
    out = ExtElement.zero(a.p, a.k)
    for d in sorted({len(m) for m, _ in a.terms}):
        v = compound_matrix(g, d).apply_row(a.vector(d))
        out = out + ExtElement.from_vector(a.p, a.k, d, v)
    return out


@dataclass(frozen=True)
class GradedInvariantTable:
    p: int
    k: int
    dims: tuple[int, ...]
    bases: tuple[FpSubspace, ...]

    def to_json(self, with_bases: bool = False) -> dict:
        out = {"p": self.p, "k": self.k, "dims": list(self.dims)}
        if with_bases:
            out["bases"] = [[list(v) for v in b.basis] for b in self.bases]
        return out


def invariants(gens: Iterable[FpMatrix], k: int, p: int) -> GradedInvariantTable:
    """Per-degree fixed subspaces of ``Lambda(e_1..e_k)`` under ``<gens>``."""
    gens = list(gens)
    for g in gens:
        if g.p != p or g.nrows != k or g.ncols != k:
            raise ValueError("generator does not match (k, p)")
        if not g.is_invertible():
            raise ValueError("invariants need invertible generators")
    bases = []
    for d in range(k + 1):
        size = math.comb(k, d)
        bases.append(fixed_subspace([compound_matrix(g, d) for g in gens], size, p))
    return GradedInvariantTable(p, k, tuple(b.dim for b in bases), tuple(bases))


def signed_transposition(k: int, i: int, p: int) -> FpMatrix:
    """``e_i -> e_{i+1}``, ``e_{i+1} -> -e_i``, other generators fixed."""
    rows = [[int(r == c) for c in range(k)] for r in range(k)]
    rows[i][i] = rows[i + 1][i + 1] = 0
    rows[i][i + 1] = 1
    rows[i + 1][i] = -1
    return FpMatrix.from_rows(rows, p)


def weyl_alternating_action(k: int) -> list[FpMatrix]:
    """Generators over F_3: adjacent signed transpositions and sign changes
    on adjacent pairs (determinant-one signed permutations)."""
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return [FpMatrix.identity(1, 3)]
    gens = [signed_transposition(k, i, 3) for i in range(k - 1)]
    for i in range(k - 1):
        gens.append(FpMatrix.diag([2 if j in (i, i + 1) else 1 for j in range(k)], 3))
    return gens


def permutation_matrix(images: Sequence[int], p: int) -> FpMatrix:
    """Row ``i`` is the unit vector ``e_{images[i]}``."""
    k = len(images)
    return FpMatrix.from_rows([[int(images[i] == j) for j in range(k)] for i in range(k)], p)
