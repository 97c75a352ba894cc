"""Standard small algebras and random representations for tests and examples."""

from __future__ import annotations

import random
from typing import Sequence

from .quiver import Algebra, Representation, validate


def kronecker(p: int = 2) -> Algebra:
    """Two arrows a, b from vertex 1 to vertex 2."""
    return Algebra.create(["1", "2"], [("a", "1", "2"), ("b", "1", "2")], p=p)


def a2(p: int = 2) -> Algebra:
    return Algebra.create(["1", "2"], [("a", "1", "2")], p=p)


def a3(p: int = 2, zero_relation: bool = False) -> Algebra:
    """Linear 1 -a-> 2 -b-> 3, optionally with the relation ba = 0."""
    rels = [[(1, ("a", "b"))]] if zero_relation else []
    return Algebra.create(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")], rels, p=p)


def simple(alg: Algebra, vertex: str) -> Representation:
    return Representation.create(alg, {vertex: 1})


def random_representation(
    alg: Algebra, dims: Sequence[int], rng: random.Random, tries: int = 200
) -> Representation | None:
    """Uniformly random matrices for ``dims``; rejection-sampled against the relations."""
    q = alg.quiver
    for _ in range(tries):
        maps = {}
        for a in alg.arrows:
            rows, cols = dims[q.vertex_index(a.tgt)], dims[q.vertex_index(a.src)]
            maps[a.name] = [[rng.randrange(alg.p) for _ in range(cols)] for _ in range(rows)]
        rep = Representation.create(alg, dict(zip(alg.vertices, dims)), maps, check=False)
        if validate(alg, rep) is None:
            return rep
    return None


def random_corpus(n: int, seed: int = 1, max_length: int = 6, p: int = 2) -> list[Representation]:
    """``n`` distinct random representations of length 1..max_length.

    Algebras: Kronecker, A_2, A_3 and A_3 with ba = 0.  Deterministic in ``seed``.
    """
    rng = random.Random(seed)
    algs = [kronecker(p), a2(p), a3(p), a3(p, True)]
    seen, out = set(), []
    while len(out) < n:
        alg = rng.choice(algs)
        total = rng.randint(1, max_length)
        while True:
            dims = [rng.randint(0, total) for _ in alg.vertices]
            if sum(dims) == total:
                break
        x = random_representation(alg, dims, rng)
        if x is None or (x.alg, x.key()) in seen:
            continue
        seen.add((x.alg, x.key()))
        out.append(x)
    return out
