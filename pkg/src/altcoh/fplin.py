"""Exact linear algebra over a prime field F_p.

Conventions: residues are stored as least nonnegative representatives, and
matrices act on row vectors from the right (``v -> v @ M``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .limits import check_enumeration


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


@dataclass(frozen=True)
class FpMatrix:
    p: int
    nrows: int
    ncols: int
    entries: tuple[int, ...]  # row-major

    def __post_init__(self):
        if len(self.entries) != self.nrows * self.ncols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> "FpMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(p, len(rows), ncols, tuple(int(x) % p for r in rows for x in r))

    @classmethod
    def identity(cls, n: int, p: int) -> "FpMatrix":
        return cls(p, n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int, p: int) -> "FpMatrix":
        return cls(p, nrows, ncols, (0,) * (nrows * ncols))

    @classmethod
    def diag(cls, values: Sequence[int], p: int) -> "FpMatrix":
        n = len(values)
        return cls(p, n, n, tuple(int(values[i]) % p if i == j else 0 for i in range(n) for j in range(n)))

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        c = self.ncols
        return tuple(self.entries[i * c:(i + 1) * c] for i in range(self.nrows))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.ncols + j]

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if self.p != other.p:
            raise ValueError("matrices over different fields")
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        p = self.p
        a, b = self.rows, other.rows
        cols = list(zip(*b)) if b else [()] * other.ncols
        out = []
        for r in a:
            for c in cols:
                out.append(sum(x * y for x, y in zip(r, c)) % p)
        return FpMatrix(p, self.nrows, other.ncols, tuple(out))

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        if (self.p, self.nrows, self.ncols) != (other.p, other.nrows, other.ncols):
            raise ValueError("shape or field mismatch")
        return FpMatrix(self.p, self.nrows, self.ncols,
                        tuple((x - y) % self.p for x, y in zip(self.entries, other.entries)))

    def transpose(self) -> "FpMatrix":
        return FpMatrix.from_rows(list(zip(*self.rows)), self.p, self.nrows) if self.nrows else \
            FpMatrix(self.p, self.ncols, 0, ())

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def det(self) -> int:
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        return _bareiss_det([list(r) for r in self.rows]) % self.p

    def is_invertible(self) -> bool:
        return self.is_square and self.det() != 0

    def inverse(self) -> "FpMatrix":
        if not self.is_invertible():
            raise ValueError("matrix is singular")
        n, p = self.nrows, self.p
        aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.rows)]
        red, _ = _rref_rows(aug, p, n)
        return FpMatrix.from_rows([r[n:] for r in red], p, n)

    def apply_row(self, v: Sequence[int]) -> tuple[int, ...]:
        """Return ``v @ self``."""
        if len(v) != self.nrows:
            raise ValueError("vector length mismatch")
        p = self.p
        return tuple(sum(v[i] * self.entries[i * self.ncols + j] for i in range(self.nrows)) % p
                     for j in range(self.ncols))

    def to_numpy(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.nrows, self.ncols)

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, {[list(r) for r in self.rows]})"


def _bareiss_det(a: list[list[int]]) -> int:
    # fraction-free elimination over Z; every division below is exact
    n = len(a)
    if n == 0:
        return 1
    a = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _rref_rows(rows: list[list[int]], p: int, ncols: int) -> tuple[list[list[int]], list[int]]:
    rows = [[x % p for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rref(m: FpMatrix) -> FpMatrix:
    red, _ = _rref_rows([list(r) for r in m.rows], m.p, m.ncols)
    return FpMatrix.from_rows(red, m.p, m.ncols)


def rank(m: FpMatrix) -> int:
    return len(_rref_rows([list(r) for r in m.rows], m.p, m.ncols)[1])


@dataclass(frozen=True)
class FpSubspace:
    """Subspace of F_p^n stored by its reduced row echelon basis."""

    p: int
    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], p: int, ambient_dim: int) -> "FpSubspace":
        red, piv = _rref_rows([list(v) for v in vectors], p, ambient_dim)
        return cls(p, ambient_dim, tuple(tuple(r) for r in red[:len(piv)]))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v: Sequence[int]) -> bool:
        return FpSubspace.span(list(self.basis) + [list(v)], self.p, self.ambient_dim).dim == self.dim


def kernel(m: FpMatrix) -> FpSubspace:
    """Right null space ``{x : M x = 0}``."""
    p, n = m.p, m.ncols
    red, piv = _rref_rows([list(r) for r in m.rows], p, n)
    free = [c for c in range(n) if c not in piv]
    vecs = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for r, c in enumerate(piv):
            x[c] = (-red[r][f]) % p
        vecs.append(x)
    return FpSubspace.span(vecs, p, n)


def fixed_subspace(mats: Iterable[FpMatrix], dim: int, p: int | None = None) -> FpSubspace:
    """Vectors ``v`` with ``v @ g == v`` for every ``g`` in ``mats``.

    Fixing a generating set is the same as fixing the generated group.
    """
    mats = list(mats)
    if p is None:
        if not mats:
            raise ValueError("field characteristic needed for an empty generating set")
        p = mats[0].p
    stacked: list[tuple[int, ...]] = []
    ident = FpMatrix.identity(dim, p)
    for g in mats:
        if g.nrows != dim or g.ncols != dim:
            raise ValueError("fixed_subspace needs square matrices of the given size")
        if g.p != p:
            raise ValueError("matrices over different fields")
        if not g.is_invertible():
            raise ValueError("fixed_subspace needs invertible matrices")
        stacked.extend((g - ident).transpose().rows)
    if not stacked:
        return FpSubspace(p, dim, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))
    return kernel(FpMatrix.from_rows(stacked, p, dim))


def _all_matrices(m: int, p: int) -> Iterable[FpMatrix]:
    check_enumeration(p ** (m * m), "matrix enumeration")
    for entries in itertools.product(range(p), repeat=m * m):
        yield FpMatrix(p, m, m, entries)


def gl(m: int, p: int) -> frozenset[FpMatrix]:
    _check_prime(p)
    return frozenset(a for a in _all_matrices(m, p) if a.det() != 0)


def gl_plus(m: int, p: int) -> frozenset[FpMatrix]:
    """Kernel of ``det^((p-1)/2)`` on GL_m(F_p), p odd."""
    _check_prime(p)
    if p == 2:
        raise ValueError("gl_plus needs an odd prime")
    e = (p - 1) // 2
    return frozenset(a for a in _all_matrices(m, p) if pow(a.det(), e, p) == 1)


def gl_order(m: int, p: int) -> int:
    out = 1
    for i in range(m):
        out *= p**m - p**i
    return out


def generate_matrix_group(gens: Iterable[FpMatrix], dim: int, p: int) -> frozenset[FpMatrix]:
    """Closure of ``gens`` under multiplication (finite groups only)."""
    gens = list(gens)
    ident = FpMatrix.identity(dim, p)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a @ g
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
        check_enumeration(len(seen), "matrix group closure")
    return frozenset(seen)
