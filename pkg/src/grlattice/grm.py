"""Gabriel-Roiter measure of a finite-dimensional representation.

mu(X) is the lexicographic maximum, over chains X_1 < ... < X_r of
indecomposable submodules of X, of the length sets {l(X_1), ..., l(X_r)}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .measures import EMPTY, Measure, finite, sup_finite
from .quiver import Representation
from .submod import (
    Submodule,
    all_submodules_bruteforce,
    indecomposable_submodules,
    is_indecomposable_cached,
)


@dataclass(frozen=True)
class GrResult:
    measure: Measure
    witness: tuple[Submodule, ...]

    def to_json(self) -> dict:
        return {
            "measure": self.measure.to_json(),
            "witness": [
                {"length": s.length, "dims": list(s.dims), "basis": s.to_json()}
                for s in self.witness
            ],
        }


def gr_measure(x: Representation) -> GrResult:
    """Dynamic program over the inclusion order of indecomposable submodules.

    best(S) is the lex-max length set of a chain ending at S.  Appending
    l(S) to the sets of chains ending strictly below S does not change their
    relative order, so best(S) = max_{T < S} best(T) + {l(S)}.
    """
    if x.length == 0:
        return GrResult(EMPTY, ())
    subs = sorted(indecomposable_submodules(x), key=lambda s: (s.length, s.key()))
    best: list[Measure] = []
    back: list[int | None] = []
    for i, s in enumerate(subs):
        top, arg = EMPTY, None
        for j in range(i):
            t = subs[j]
            if t.length < s.length and t.issubmodule(s) and top < best[j]:
                top, arg = best[j], j
        best.append(top.with_element(s.length))
        back.append(arg)
    # ties resolved towards the smallest (length, key): strict '<' keeps the first
    top, arg = best[0], 0
    for i in range(1, len(subs)):
        if top < best[i]:
            top, arg = best[i], i
    chain = []
    while arg is not None:
        chain.append(subs[arg])
        arg = back[arg]
    return GrResult(top, tuple(reversed(chain)))


def gr_measure_oracle(x: Representation) -> Measure:
    """Brute force: scan all subspace tuples, then enumerate every chain explicitly."""
    if x.length == 0:
        return EMPTY
    subs = [
        s for s in all_submodules_bruteforce(x)
        if s.length > 0 and is_indecomposable_cached(s.carrier)
    ]
    above = {
        i: [j for j, t in enumerate(subs) if t.length > s.length and s.issubmodule(t)]
        for i, s in enumerate(subs)
    }
    best = EMPTY

    def walk(i: int, lengths: list[int]):
        nonlocal best
        m = finite(lengths)
        if best < m:
            best = m
        for j in above[i]:
            walk(j, lengths + [subs[j].length])

    for i, s in enumerate(subs):
        walk(i, [s.length])
    return best


def mu(x: Representation) -> Measure:
    return gr_measure(x).measure


def mu_sup(modules: Iterable[Representation]) -> Measure:
    return sup_finite(mu(x) for x in modules)


def chain_lengths(chain: Iterable[Submodule]) -> Measure:
    return finite(s.length for s in chain)
