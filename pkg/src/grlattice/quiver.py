"""Quivers with admissible relations over F_p and their finite-dimensional representations.

Paths are written in traversal order: the relation term ``["a", "b"]``
means "first a, then b" and evaluates to ``X(b) @ X(a)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .config import check_cap, current_caps
from .linalg import MatrixFp, block_diag, check_prime, rref, solve_all

Morphism = tuple[MatrixFp, ...]  # one matrix per vertex, in vertex order


class AdmissibilityError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    tgt: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError(f"duplicate vertex in {self.vertices}")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate arrow name in {names}")
        for a in self.arrows:
            if a.src not in self.vertices or a.tgt not in self.vertices:
                raise ValueError(f"arrow {a.name} has an undeclared endpoint")

    def vertex_index(self, v: str) -> int:
        return self.vertices.index(v)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)


@dataclass(frozen=True)
class Relation:
    terms: tuple[tuple[int, tuple[str, ...]], ...]  # (coefficient, path)


@dataclass(frozen=True)
class Algebra:
    quiver: Quiver
    relations: tuple[Relation, ...] = ()
    p: int = 2

    def __post_init__(self):
        check_prime(self.p)
        for k, rel in enumerate(self.relations):
            _check_admissible(self.quiver, rel, k)

    @classmethod
    def create(cls, vertices, arrows, relations=(), p: int = 2) -> Algebra:
        quiver = Quiver(tuple(vertices), tuple(Arrow(*a) for a in arrows))
        rels = tuple(
            Relation(tuple((int(c) % p, tuple(path)) for c, path in rel)) for rel in relations
        )
        return cls(quiver, rels, p)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows


def _path_endpoints(quiver: Quiver, path: Sequence[str]) -> tuple[str, str]:
    arrows = [quiver.arrow(name) for name in path]
    for a, b in zip(arrows, arrows[1:]):
        if a.tgt != b.src:
            raise AdmissibilityError(f"path {list(path)} is not composable at {a.name}->{b.name}")
    return arrows[0].src, arrows[-1].tgt


def _check_admissible(quiver: Quiver, rel: Relation, index: int) -> None:
    if not rel.terms:
        raise AdmissibilityError(f"relation {index} has no terms")
    ends = set()
    for _, path in rel.terms:
        for name in path:
            try:
                quiver.arrow(name)
            except KeyError:
                raise AdmissibilityError(f"relation {index}: unknown arrow {name!r}") from None
        if len(path) < 2:
            raise AdmissibilityError(f"relation {index}: path {list(path)} has length < 2")
        ends.add(_path_endpoints(quiver, path))
    if len(ends) > 1:
        raise AdmissibilityError(f"relation {index}: paths are not parallel {sorted(ends)}")


@dataclass(frozen=True)
class Representation:
    alg: Algebra = field(repr=False)
    dims: tuple[int, ...]
    maps: tuple[MatrixFp, ...]  # one per arrow, shape dims[tgt] x dims[src]

    @classmethod
    def create(
        cls,
        alg: Algebra,
        dims: Mapping[str, int],
        maps: Mapping[str, Sequence[Sequence[int]] | MatrixFp] | None = None,
        check: bool = True,
    ) -> Representation:
        maps = maps or {}
        dvec = tuple(int(dims.get(v, 0)) for v in alg.vertices)
        mats = []
        for a in alg.arrows:
            rows, cols = dvec[alg.quiver.vertex_index(a.tgt)], dvec[alg.quiver.vertex_index(a.src)]
            m = maps.get(a.name)
            if m is None:
                m = MatrixFp.zero(rows, cols, alg.p)
            elif not isinstance(m, MatrixFp):
                m = MatrixFp.from_rows(m, alg.p, cols if not m else None)
            mats.append(m)
        rep = cls(alg, dvec, tuple(mats))
        if check:
            problem = validate(alg, rep)
            if problem is not None:
                raise ValueError(problem)
        return rep

    @classmethod
    def zero(cls, alg: Algebra) -> Representation:
        return cls.create(alg, {})

    def dim(self, v: str) -> int:
        return self.dims[self.alg.quiver.vertex_index(v)]

    def map(self, name: str) -> MatrixFp:
        return self.maps[[a.name for a in self.alg.arrows].index(name)]

    @property
    def length(self) -> int:
        return sum(self.dims)

    def dims_dict(self) -> dict[str, int]:
        return dict(zip(self.alg.vertices, self.dims))

    def key(self) -> tuple:
        """Hashable data used for ordering and deduplication."""
        return (self.length, self.dims, tuple(m.entries for m in self.maps))

    def path_matrix(self, path: Sequence[str]) -> MatrixFp:
        result = None
        for name in path:
            m = self.map(name)
            result = m if result is None else m @ result
        return result

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return self.alg == other.alg and self.dims == other.dims and self.maps == other.maps

    def __hash__(self):
        return hash((self.dims, self.maps))


def validate(alg: Algebra, rep: Representation) -> str | None:
    """Return a description of the first violated constraint, or None if valid."""
    if len(rep.dims) != len(alg.vertices):
        return f"dimension vector has {len(rep.dims)} entries for {len(alg.vertices)} vertices"
    if any(d < 0 for d in rep.dims):
        return f"negative dimension in {rep.dims}"
    if len(rep.maps) != len(alg.arrows):
        return f"{len(rep.maps)} maps for {len(alg.arrows)} arrows"
    q = alg.quiver
    for a, m in zip(alg.arrows, rep.maps):
        want = (rep.dims[q.vertex_index(a.tgt)], rep.dims[q.vertex_index(a.src)])
        if m.shape != want:
            return f"shape violation: arrow {a.name} has shape {m.shape}, expected {want}"
        if m.p != alg.p:
            return f"arrow {a.name} is over F_{m.p}, algebra is over F_{alg.p}"
    for k, rel in enumerate(alg.relations):
        total = None
        for coeff, path in rel.terms:
            term = rep.path_matrix(path).scale(coeff)
            total = term if total is None else total + term
        if not total.is_zero():
            return f"relation violation: relation {k} does not vanish"
    return None


def length(rep: Representation) -> int:
    return rep.length


def direct_sum(x: Representation, y: Representation) -> Representation:
    if x.alg != y.alg:
        raise ValueError("direct sum of representations over different algebras")
    dims = tuple(a + b for a, b in zip(x.dims, y.dims))
    return Representation(x.alg, dims, tuple(block_diag(a, b) for a, b in zip(x.maps, y.maps)))


def hom_basis(x: Representation, y: Representation) -> list[Morphism]:
    """Basis of Hom(x, y): tuples (f_v) with f_tgt X(a) = Y(a) f_src for every arrow a."""
    if x.alg != y.alg:
        raise ValueError("hom space between representations over different algebras")
    alg, p = x.alg, x.alg.p
    q = alg.quiver
    offsets, n = [], 0
    for dx, dy in zip(x.dims, y.dims):
        offsets.append(n)
        n += dx * dy

    def var(v: int, i: int, j: int) -> int:
        return offsets[v] + i * x.dims[v] + j

    rows = []
    for a, xa, ya in zip(alg.arrows, x.maps, y.maps):
        s, t = q.vertex_index(a.src), q.vertex_index(a.tgt)
        # (f_t @ X(a) - Y(a) @ f_s)[i][j] == 0 for i < dim_y(t), j < dim_x(s)
        for i in range(y.dims[t]):
            for j in range(x.dims[s]):
                row = [0] * n
                for k in range(x.dims[t]):
                    c = xa.entries[k][j]
                    if c:
                        row[var(t, i, k)] = (row[var(t, i, k)] + c) % p
                for k in range(y.dims[s]):
                    c = ya.entries[i][k]
                    if c:
                        row[var(s, k, j)] = (row[var(s, k, j)] - c) % p
                if any(row):
                    rows.append(row)
    space = solve_all(rows, n, p)
    return [_unflatten(vec, x.dims, y.dims, offsets, p) for vec in space.basis]


def _unflatten(vec, xdims, ydims, offsets, p) -> Morphism:
    mats = []
    for v, (dx, dy) in enumerate(zip(xdims, ydims)):
        o = offsets[v]
        mats.append(
            MatrixFp(dy, dx, tuple(tuple(vec[o + i * dx: o + (i + 1) * dx]) for i in range(dy)), p)
        )
    return tuple(mats)


def combine(basis: Sequence[Morphism], coeffs: Sequence[int]) -> Morphism:
    out = None
    for c, f in zip(coeffs, basis):
        if not c:
            continue
        term = tuple(m.scale(c) for m in f)
        out = term if out is None else tuple(a + b for a, b in zip(out, term))
    if out is None:
        out = tuple(MatrixFp.zero(m.rows, m.cols, m.p) for m in basis[0])
    return out


def enumerate_hom(basis: Sequence[Morphism], p: int):
    """Every element of the span of ``basis`` (cap-checked)."""
    check_cap("hom space", p ** len(basis), current_caps().hom_cap)
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        yield combine(basis, coeffs)


def compose(g: Morphism, f: Morphism) -> Morphism:
    """g after f."""
    return tuple(a @ b for a, b in zip(g, f))


def is_invertible(f: Morphism) -> bool:
    return all(m.rows == m.cols and rref(m)[1] == m.rows for m in f)


def is_zero(f: Morphism) -> bool:
    return all(m.is_zero() for m in f)


def identity(x: Representation) -> Morphism:
    return tuple(MatrixFp.identity(d, x.alg.p) for d in x.dims)


def power(f: Morphism, n: int) -> Morphism:
    result = f
    for _ in range(n - 1):
        result = compose(f, result)
    return result


def is_isomorphic(x: Representation, y: Representation) -> bool:
    if x.alg != y.alg:
        raise ValueError("comparing representations over different algebras")
    if x.dims != y.dims:
        return False
    if x == y or x.length == 0:
        return True
    basis = hom_basis(x, y)
    if not basis:
        return False
    return any(is_invertible(f) for f in enumerate_hom(basis, x.alg.p))


def fitting_witness(x: Representation, basis: Sequence[Morphism] | None = None) -> Morphism | None:
    """An endomorphism e whose stable power e^N is neither nilpotent nor invertible.

    Such e^N splits x as image(e^N) + kernel(e^N) with both summands nonzero.
    Only the given basis endomorphisms are tried.
    """
    if basis is None:
        basis = hom_basis(x, x)
    for e in basis:
        stable = power(e, max(x.length, 1))
        if not is_zero(stable) and not is_invertible(stable):
            return stable
    return None


def nontrivial_idempotent(x: Representation, basis: Sequence[Morphism] | None = None) -> Morphism | None:
    """Exhaustive search for an idempotent endomorphism other than 0 and 1."""
    if basis is None:
        basis = hom_basis(x, x)
    one = identity(x)
    for e in enumerate_hom(basis, x.alg.p):
        if compose(e, e) == e and not is_zero(e) and e != one:
            return e
    return None


def is_indecomposable(x: Representation) -> bool:
    if x.length == 0:
        raise ValueError("the zero representation is neither decomposable nor indecomposable")
    basis = hom_basis(x, x)
    if len(basis) == 1:
        return True  # End(x) is the field
    if fitting_witness(x, basis) is not None:
        return False
    return nontrivial_idempotent(x, basis) is None
