"""Dense linear algebra over prime fields F_p.

Matrices are immutable tuples of row tuples with entries in ``range(p)``.
Vectors are plain tuples.  Everything is exact and deterministic.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .config import check_cap, current_caps

Vector = tuple[int, ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"modulus must be a prime, got {p!r}")


def inverse(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


@dataclass(frozen=True)
class MatrixFp:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]
    p: int

    def __post_init__(self):
        check_prime(self.p)
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entries do not match shape {self.rows}x{self.cols}")
        for r in self.entries:
            for x in r:
                if not (isinstance(x, int) and 0 <= x < self.p):
                    raise ValueError(f"entry {x!r} is not a residue mod {self.p}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int, cols: int | None = None) -> MatrixFp:
        rows = tuple(tuple(int(x) % p for x in r) for r in rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows, p)

    @classmethod
    def zero(cls, rows: int, cols: int, p: int) -> MatrixFp:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)), p)

    @classmethod
    def identity(cls, n: int, p: int) -> MatrixFp:
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), p)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __matmul__(self, other: MatrixFp) -> MatrixFp:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        p = self.p
        cols_b = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) % p for col in cols_b)
            for row in self.entries
        )
        return MatrixFp(self.rows, other.cols, out, p)

    def __add__(self, other: MatrixFp) -> MatrixFp:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        p = self.p
        out = tuple(
            tuple((a + b) % p for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)
        )
        return MatrixFp(self.rows, self.cols, out, p)

    def scale(self, c: int) -> MatrixFp:
        p = self.p
        return MatrixFp(
            self.rows, self.cols, tuple(tuple(c * x % p for x in r) for r in self.entries), p
        )

    def apply(self, v: Sequence[int]) -> Vector:
        p = self.p
        return tuple(sum(a * b for a, b in zip(row, v)) % p for row in self.entries)

    def transpose(self) -> MatrixFp:
        if self.rows:
            entries = tuple(zip(*self.entries))
        else:
            entries = tuple(() for _ in range(self.cols))
        return MatrixFp(self.cols, self.rows, entries, self.p)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def block_diag(a: MatrixFp, b: MatrixFp) -> MatrixFp:
    p = a.p
    rows = [tuple(r) + (0,) * b.cols for r in a.entries]
    rows += [(0,) * a.cols + tuple(r) for r in b.entries]
    return MatrixFp(a.rows + b.rows, a.cols + b.cols, tuple(rows), p)


def _rref_rows(rows: list[list[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    """In-place Gauss-Jordan; returns (rows, pivot columns)."""
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = inverse(rows[r][c], p)
        rows[r] = [x * inv % p for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rref(m: MatrixFp) -> tuple[MatrixFp, int]:
    """Reduced row echelon form (zero rows kept at the bottom) and rank."""
    rows, pivots = _rref_rows([list(r) for r in m.entries], m.cols, m.p)
    return MatrixFp.from_rows(rows, m.p, m.cols), len(pivots)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^dim stored by its reduced echelon basis (canonical)."""

    dim: int
    basis: tuple[Vector, ...]
    p: int

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], dim: int, p: int) -> Subspace:
        rows = [[x % p for x in v] for v in vectors]
        for v in rows:
            if len(v) != dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {dim}")
        rows, pivots = _rref_rows(rows, dim, p)
        return cls(dim, tuple(tuple(r) for r in rows[: len(pivots)]), p)

    @classmethod
    def zero(cls, dim: int, p: int) -> Subspace:
        return cls(dim, (), p)

    @classmethod
    def full(cls, dim: int, p: int) -> Subspace:
        return cls(dim, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)), p)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @functools.cached_property
    def _pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.basis)

    def pivots(self) -> list[int]:
        return list(self._pivots)

    def reduce(self, v: Sequence[int]) -> Vector:
        """Remainder of ``v`` modulo the subspace (zero iff ``v`` lies in it)."""
        p = self.p
        v = list(v)
        for row, c in zip(self.basis, self._pivots):
            f = v[c]
            if f:
                v = [(x - f * y) % p for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v: Sequence[int]) -> Vector:
        """Coordinates of ``v`` in the echelon basis; ``v`` must lie in the subspace."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[c] for c in self._pivots)

    def issubspace(self, other: Subspace) -> bool:
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: Subspace) -> Subspace:
        if other.rank == 0 or self.rank == self.dim:
            return self
        if self.rank == 0 or other.rank == other.dim:
            return other
        return self.extended(other.basis)

    def extended(self, vectors: Iterable[Sequence[int]]) -> Subspace:
        """Span of this subspace and ``vectors``, keeping the echelon form incrementally."""
        p = self.p
        rows = [list(r) for r in self.basis]
        pivots = self.pivots()
        changed = False
        for v in vectors:
            v = list(v)
            for row, c in zip(rows, pivots):
                f = v[c]
                if f:
                    v = [(x - f * y) % p for x, y in zip(v, row)]
            lead = next((j for j, x in enumerate(v) if x), None)
            if lead is None:
                continue
            changed = True
            inv = inverse(v[lead], p)
            v = [x * inv % p for x in v]
            for i, row in enumerate(rows):
                f = row[lead]
                if f:
                    rows[i] = [(x - f * y) % p for x, y in zip(row, v)]
            k = next((i for i, c in enumerate(pivots) if c > lead), len(pivots))
            rows.insert(k, v)
            pivots.insert(k, lead)
        if not changed:
            return self
        return Subspace(self.dim, tuple(tuple(r) for r in rows), p)

    def intersect(self, other: Subspace) -> Subspace:
        if self.rank == 0 or other.rank == 0:
            return Subspace.zero(self.dim, self.p)
        if self.issubspace(other):
            return self
        if other.issubspace(self):
            return other
        # x.A = y.B  <=>  (x | -y) in the left kernel of the stacked basis matrix
        p = self.p
        stacked = [list(r) for r in self.basis] + [[(-x) % p for x in r] for r in other.basis]
        cols = MatrixFp.from_rows(stacked, p, self.dim).transpose()
        ker = kernel_basis(cols)
        vecs = []
        for coeffs in ker.basis:
            x = coeffs[: self.rank]
            vecs.append(
                tuple(sum(c * b[j] for c, b in zip(x, self.basis)) % p for j in range(self.dim))
            )
        return Subspace.span(vecs, self.dim, p)

    def image(self, m: MatrixFp) -> Subspace:
        return Subspace.span((m.apply(b) for b in self.basis), m.rows, self.p)

    def as_matrix(self) -> MatrixFp:
        return MatrixFp(self.rank, self.dim, self.basis, self.p)


def kernel_basis(m: MatrixFp) -> Subspace:
    """Canonical basis of ``{v : m v = 0}``."""
    p, n = m.p, m.cols
    rows, pivots = _rref_rows([list(r) for r in m.entries], n, p)
    free = [c for c in range(n) if c not in pivots]
    vecs = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, c in zip(rows, pivots):
            v[c] = (-row[f]) % p
        vecs.append(v)
    return Subspace.span(vecs, n, p)


def solve_all(constraints: Sequence[Sequence[int]], dim: int, p: int) -> Subspace:
    """Solution space of the homogeneous system given by constraint rows."""
    if not constraints:
        return Subspace.full(dim, p)
    return kernel_basis(MatrixFp.from_rows(constraints, p, dim))


def enumerate_vectors(dim: int, p: int, cap: int | None = None) -> Iterator[Vector]:
    """Every vector of F_p^dim once, in lexicographic order."""
    cap = current_caps().enum_cap if cap is None else cap
    check_cap(f"F_{p}^{dim}", p**dim, cap)
    return itertools.product(range(p), repeat=dim)


def span_combinations(basis: Sequence[Sequence[int]], p: int, cap: int | None = None) -> Iterator[Vector]:
    """Every linear combination of ``basis``, each coefficient vector once."""
    cap = current_caps().hom_cap if cap is None else cap
    check_cap("span", p ** len(basis), cap)
    n = len(basis[0]) if basis else 0
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        yield tuple(sum(c * b[j] for c, b in zip(coeffs, basis)) % p for j in range(n))


def all_subspaces(dim: int, p: int) -> Iterator[Subspace]:
    """Every subspace of F_p^dim, by enumerating reduced echelon forms."""
    for k in range(dim + 1):
        for pivots in itertools.combinations(range(dim), k):
            # free slots: (row i, column j) with j > pivot_i and j not a pivot
            slots = [
                (i, j)
                for i, c in enumerate(pivots)
                for j in range(c + 1, dim)
                if j not in pivots
            ]
            for values in itertools.product(range(p), repeat=len(slots)):
                rows = [[0] * dim for _ in range(k)]
                for i, c in enumerate(pivots):
                    rows[i][c] = 1
                for (i, j), x in zip(slots, values):
                    rows[i][j] = x
                yield Subspace(dim, tuple(tuple(r) for r in rows), p)
