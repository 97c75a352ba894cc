"""Submodule lattices and the embeds-in-a-power preorder."""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from .config import check_cap, current_caps
from .linalg import MatrixFp, Subspace, all_subspaces, kernel_basis
from .quiver import (
    Morphism,
    Representation,
    fitting_witness,
    hom_basis,
    is_indecomposable,
    nontrivial_idempotent,
)


@dataclass(frozen=True)
class Submodule:
    parent: Representation = field(compare=False, repr=False)
    spaces: tuple[Subspace, ...]

    def key(self) -> tuple:
        """Per-vertex echelon bases in vertex order; canonical."""
        return tuple(s.basis for s in self.spaces)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.rank for s in self.spaces)

    @property
    def length(self) -> int:
        return sum(s.rank for s in self.spaces)

    def issubmodule(self, other: Submodule) -> bool:
        if any(a.rank > b.rank for a, b in zip(self.spaces, other.spaces)):
            return False
        return all(a.issubspace(b) for a, b in zip(self.spaces, other.spaces))

    def __add__(self, other: Submodule) -> Submodule:
        return Submodule(self.parent, tuple(a + b for a, b in zip(self.spaces, other.spaces)))

    def intersect(self, other: Submodule) -> Submodule:
        return Submodule(
            self.parent, tuple(a.intersect(b) for a, b in zip(self.spaces, other.spaces))
        )

    @functools.cached_property
    def carrier(self) -> Representation:
        """The submodule as a representation in its own echelon bases."""
        x = self.parent
        q = x.alg.quiver
        maps = []
        for a, m in zip(x.alg.arrows, x.maps):
            src = self.spaces[q.vertex_index(a.src)]
            tgt = self.spaces[q.vertex_index(a.tgt)]
            cols = [tgt.coordinates(m.apply(b)) for b in src.basis]
            rows = tuple(tuple(c[i] for c in cols) for i in range(tgt.rank))
            maps.append(MatrixFp(tgt.rank, src.rank, rows, x.alg.p))
        return Representation(x.alg, self.dims, tuple(maps))

    def to_json(self) -> list[list[list[int]]]:
        return [[list(v) for v in s.basis] for s in self.spaces]


def zero_submodule(x: Representation) -> Submodule:
    return Submodule(x, tuple(Subspace.zero(d, x.alg.p) for d in x.dims))


def whole(x: Representation) -> Submodule:
    return Submodule(x, tuple(Subspace.full(d, x.alg.p) for d in x.dims))


def is_invariant(x: Representation, spaces: Sequence[Subspace]) -> bool:
    q = x.alg.quiver
    for a, m in zip(x.alg.arrows, x.maps):
        tgt = spaces[q.vertex_index(a.tgt)]
        if not all(tgt.contains(m.apply(b)) for b in spaces[q.vertex_index(a.src)].basis):
            return False
    return True


def _outgoing(x: Representation) -> list[list[tuple[int, MatrixFp]]]:
    q = x.alg.quiver
    out = [[] for _ in x.dims]
    for a, m in zip(x.alg.arrows, x.maps):
        out[q.vertex_index(a.src)].append((q.vertex_index(a.tgt), m))
    return out


def _close(x: Representation, spaces: Sequence[Subspace], seeds, outgoing=None) -> tuple[Subspace, ...]:
    """Smallest arrow-invariant tuple containing ``spaces`` (assumed invariant) and the seeds."""
    if outgoing is None:
        outgoing = _outgoing(x)
    spaces = list(spaces)
    queue = list(seeds)
    while queue:
        u, w = queue.pop()
        if spaces[u].contains(w):
            continue
        spaces[u] = spaces[u].extended([w])
        for t, m in outgoing[u]:
            queue.append((t, m.apply(w)))
    return tuple(spaces)


def cyclic_closure(x: Representation, vertex: str | int, v: Sequence[int]) -> Submodule:
    """Smallest submodule containing the vector ``v`` placed at ``vertex``."""
    u = vertex if isinstance(vertex, int) else x.alg.quiver.vertex_index(vertex)
    p = x.alg.p
    zero = [Subspace.zero(d, p) for d in x.dims]
    return Submodule(x, _close(x, zero, [(u, tuple(c % p for c in v))]))


def _quotient_generators(x: Representation, s: Submodule):
    """One normalized representative per projective point of x/s, vertex by vertex.

    Representatives vanish on the pivot columns of s, so distinct ones give
    distinct cosets.
    """
    p = x.alg.p
    for u, (d, space) in enumerate(zip(x.dims, s.spaces)):
        free = [j for j in range(d) if j not in space._pivots]
        for coeffs in itertools.product(range(p), repeat=len(free)):
            lead = next((c for c in coeffs if c), 0)
            if lead != 1:
                continue
            v = [0] * d
            for j, c in zip(free, coeffs):
                v[j] = c
            yield u, tuple(v)


def cyclic_submodules(x: Representation) -> list[Submodule]:
    check_cap("vectors of the module", x.alg.p ** x.length, current_caps().enum_cap)
    seen: dict[tuple, Submodule] = {}
    for u, vec in _quotient_generators(x, zero_submodule(x)):
        c = cyclic_closure(x, u, vec)
        seen.setdefault(c.key(), c)
    return list(seen.values())


class SubmoduleLattice:
    """All submodules of a representation, in generation order (zero first)."""

    def __init__(self, parent: Representation, elements: list[Submodule]):
        self.parent = parent
        self.elements = elements
        self._index = {s.key(): i for i, s in enumerate(elements)}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> Submodule:
        return self.elements[i]

    def index(self, s: Submodule) -> int:
        return self._index[s.key()]

    def __contains__(self, s: Submodule) -> bool:
        return s.key() in self._index

    def leq(self, i: int, j: int) -> bool:
        return self.elements[i].issubmodule(self.elements[j])

    def inclusions(self) -> list[list[int]]:
        """For each element, the indices of elements strictly containing it."""
        n = len(self.elements)
        return [
            [j for j in range(n) if j != i and self.leq(i, j)] for i in range(n)
        ]


def all_submodules(x: Representation) -> SubmoduleLattice:
    """Every submodule, by join-closure with cyclic submodules (BFS, zero first).

    From each submodule S only the cyclic submodules of vectors reduced
    modulo S are joined, one per projective point of X/S.
    """
    check_cap("vectors of the module", x.alg.p ** x.length, current_caps().enum_cap)
    outgoing = _outgoing(x)
    elements = [zero_submodule(x)]
    seen = {elements[0].key()}
    i = 0
    while i < len(elements):
        s = elements[i]
        for u, vec in _quotient_generators(x, s):
            t = Submodule(x, _close(x, s.spaces, [(u, vec)], outgoing))
            k = t.key()
            if k not in seen:
                seen.add(k)
                elements.append(t)
        i += 1
    return SubmoduleLattice(x, elements)


def all_submodules_bruteforce(x: Representation) -> list[Submodule]:
    """Every submodule, by scanning all tuples of subspaces (reference oracle)."""
    p = x.alg.p
    per_vertex = [list(all_subspaces(d, p)) for d in x.dims]
    check_cap("subspace tuples", math.prod(len(s) for s in per_vertex), current_caps().enum_cap)
    out = []
    for spaces in itertools.product(*per_vertex):
        if is_invariant(x, spaces):
            out.append(Submodule(x, tuple(spaces)))
    return out


@functools.lru_cache(maxsize=65536)
def _indecomposable_cached(rep: Representation) -> bool:
    return is_indecomposable(rep)


def is_indecomposable_cached(rep: Representation) -> bool:
    return _indecomposable_cached(rep)


def indecomposable_submodules(x: Representation, lattice: SubmoduleLattice | None = None) -> list[Submodule]:
    if lattice is None:
        lattice = all_submodules(x)
    return [s for s in lattice if s.length > 0 and _indecomposable_cached(s.carrier)]


# -- embeds-in-a-power -------------------------------------------------------


def morphism_kernel(f: Morphism) -> tuple[Subspace, ...]:
    return tuple(kernel_basis(m) for m in f)


def reject(x: Representation, y: Representation) -> Submodule:
    """Intersection of the kernels of all maps x -> y (a submodule of x).

    x embeds in some y^n exactly when this is zero.
    """
    k = whole(x)
    for f in hom_basis(x, y):
        k = k.intersect(Submodule(x, morphism_kernel(f)))
        if k.length == 0:
            break
    return k


def embedding(x: Representation, y: Representation, n_max: int | None = None) -> list[Morphism] | None:
    """Maps f_1..f_n : x -> y (n <= n_max) with jointly trivial kernel, or None.

    Greedy over a basis of Hom(x, y) first: each chosen map strictly shrinks
    the common kernel, so at most length(x) maps are needed.  Greedy need not
    use the fewest maps, so when it needs more than n_max the elements of
    Hom(x, y) are searched exactly (bounded by the hom cap).
    """
    if n_max is None:
        n_max = x.length
    basis = hom_basis(x, y)
    k = whole(x)
    chosen: list[Morphism] = []
    for f in basis:
        if k.length == 0:
            break
        smaller = k.intersect(Submodule(x, morphism_kernel(f)))
        if smaller.length < k.length:
            chosen.append(f)
            k = smaller
    if k.length > 0:
        return None
    if len(chosen) <= n_max:
        return chosen
    return _fewest_maps(x, basis, n_max)


def _fewest_maps(x: Representation, basis: list[Morphism], n_max: int) -> list[Morphism] | None:
    from .quiver import enumerate_hom

    maps = [(f, Submodule(x, morphism_kernel(f))) for f in enumerate_hom(basis, x.alg.p)]
    failed: dict[tuple, int] = {}  # kernel key -> largest depth known to fail

    def search(k: Submodule, depth: int) -> list[Morphism] | None:
        if k.length == 0:
            return []
        if depth == 0 or failed.get(k.key(), -1) >= depth:
            return None
        for f, ker in maps:
            smaller = k.intersect(ker)
            if smaller.length < k.length:
                rest = search(smaller, depth - 1)
                if rest is not None:
                    return [f] + rest
        failed[k.key()] = depth
        return None

    return search(whole(x), n_max)


def embeds_in_power(x: Representation, y: Representation, n_max: int | None = None) -> bool:
    return embedding(x, y, n_max) is not None


def embeds_in_power_bruteforce(x: Representation, y: Representation, n: int) -> bool:
    """Search Hom(x, y^n) element by element for a map injective at every vertex."""
    from .quiver import direct_sum, enumerate_hom, is_zero

    target = y
    for _ in range(n - 1):
        target = direct_sum(target, y)
    basis = hom_basis(x, target)
    if x.length == 0:
        return True
    if not basis:
        return False
    for f in enumerate_hom(basis, x.alg.p):
        if all(k.rank == 0 for k in morphism_kernel(f)):
            return True
    return False


# -- Krull-Schmidt splitting ------------------------------------------------


def split(x: Representation, reverse: bool = False) -> tuple[Representation, Representation] | None:
    """Split x = image(e) + kernel(e) for a stable Fitting power or idempotent e."""
    basis = hom_basis(x, x)
    if reverse:
        basis = basis[::-1]
    if len(basis) <= 1:
        return None
    e = fitting_witness(x, basis) or nontrivial_idempotent(x, basis)
    if e is None:
        return None
    p = x.alg.p
    image = Submodule(
        x, tuple(Subspace.span(m.transpose().entries, m.rows, p) for m in e)
    )
    kernel = Submodule(x, morphism_kernel(e))
    return image.carrier, kernel.carrier


def decompose(x: Representation, reverse: bool = False) -> list[Representation]:
    """Indecomposable summands of x by repeated splitting."""
    if x.length == 0:
        return []
    parts = split(x, reverse)
    if parts is None:
        return [x]
    return decompose(parts[0], reverse) + decompose(parts[1], reverse)
