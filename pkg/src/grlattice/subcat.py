"""Finite models of submodule-closed subcategories.

A universe is the set of indecomposables of length <= a bound, up to
isomorphism.  A submodule-closed additive subcategory C is recorded by the
members it contains, a :class:`DownSet`.  The closure of a set V of members
is every member Z that embeds in a finite direct sum of members of V; Z does
so iff the kernels of all maps from Z into members of V meet in zero.

Closed sets are downward closed under the embeds-in-a-power preorder, but
not conversely: over the Kronecker algebra P_2 embeds in R_1(0) + R_1(1)
and in no power of either summand.

Truncation caveat: a finite universe cannot witness "finite type"; the
compactness statements are exercised here only as statements about finite
lattices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .config import check_cap, current_caps
from .grm import mu
from .measures import EMPTY, Measure, canonicalize, finite, inf_finite, sup_finite
from .quiver import Algebra, Representation, direct_sum, is_isomorphic, validate
from .submod import Submodule, embeds_in_power, is_indecomposable_cached, reject

TRUNCATION_NOTE = (
    "finite truncated universe: 'finite type' cannot be witnessed; "
    "compactness is checked as witness extraction on finite lattices"
)


@dataclass(frozen=True)
class DownSet:
    members: frozenset[int]
    universe: "IndUniverse" = field(compare=False, repr=False, default=None)

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def __le__(self, other: DownSet) -> bool:
        return self.members <= other.members

    def __len__(self):
        return len(self.members)

    def to_json(self) -> list[int]:
        return sorted(self.members)


class NotClosed(ValueError):
    pass


class IndUniverse:
    def __init__(
        self,
        alg: Algebra,
        max_length: int,
        members: Sequence[Representation],
        preorder: Sequence[Sequence[bool]],
        n_max: int | None = None,
        measures: Sequence[Measure] | None = None,
    ):
        self.alg = alg
        self.max_length = max_length
        self.members = list(members)
        self.preorder = [list(map(bool, row)) for row in preorder]
        self.n_max = n_max
        self._measures = list(measures) if measures is not None else None
        self._rejects: dict[tuple[int, int], Submodule] = {}

    def __len__(self):
        return len(self.members)

    @property
    def indices(self) -> range:
        return range(len(self.members))

    @property
    def measures(self) -> list[Measure]:
        if self._measures is None:
            self._measures = [mu(x) for x in self.members]
        return self._measures

    def label(self, i: int) -> str:
        x = self.members[i]
        return f"#{i}:" + ",".join(map(str, x.dims))

    def find(self, x: Representation) -> int:
        for i, m in enumerate(self.members):
            if m.dims == x.dims and is_isomorphic(m, x):
                return i
        raise KeyError("representation is not isomorphic to any member")

    # closure

    def reject(self, z: int, y: int) -> Submodule:
        key = (z, y)
        if key not in self._rejects:
            self._rejects[key] = reject(self.members[z], self.members[y])
        return self._rejects[key]

    def _in_closure(self, z: int, seeds: Sequence[int]) -> bool:
        if any(self.preorder[z][y] for y in seeds):
            return True
        if len(seeds) < 2:
            return False
        k = None
        for y in seeds:
            r = self.reject(z, y)
            k = r if k is None else k.intersect(r)
            if k.length == 0:
                return True
        return False

    def closure(self, seeds: Iterable[int]) -> frozenset[int]:
        seeds = sorted(set(seeds))
        return frozenset(z for z in self.indices if self._in_closure(z, seeds))

    def is_closed(self, members: Iterable[int]) -> bool:
        members = frozenset(members)
        return self.closure(members) == members

    def is_preorder_downward_closed(self, members: Iterable[int]) -> bool:
        members = frozenset(members)
        return all(z in members for y in members for z in self.indices if self.preorder[z][y])

    def downset(self, members: Iterable[int]) -> DownSet:
        members = frozenset(members)
        if not self.is_closed(members):
            raise NotClosed(f"{sorted(members)} is not closed under sums and submodules")
        return DownSet(members, self)

    def full(self) -> DownSet:
        return DownSet(frozenset(self.indices), self)

    def sub_of(self, x: Representation) -> DownSet:
        """Members that embed in some power of an arbitrary representation x."""
        return DownSet(
            frozenset(z for z in self.indices if reject(self.members[z], x).length == 0), self
        )

    def closed_sets(self) -> list[DownSet]:
        """Every closed set, grown by adding one member at a time."""
        start = self.closure(())
        seen = {start}
        queue = [start]
        while queue:
            c = queue.pop(0)
            for i in self.indices:
                if i not in c:
                    d = self.closure(c | {i})
                    if d not in seen:
                        seen.add(d)
                        queue.append(d)
        return [DownSet(c, self) for c in sorted(seen, key=lambda s: (len(s), sorted(s)))]

    # serialization

    def to_json(self) -> dict:
        from .io import algebra_to_json, module_to_json

        return {
            "algebra": algebra_to_json(self.alg),
            "max_length": self.max_length,
            "measures": [m.to_json() for m in self.measures],
            "members": [module_to_json(x) for x in self.members],
            "n_max": self.n_max,
            "preorder": [[int(b) for b in row] for row in self.preorder],
        }

    @classmethod
    def from_json(cls, data: dict) -> IndUniverse:
        from .io import algebra_from_json, module_from_json

        alg = algebra_from_json(data["algebra"])
        members = [module_from_json(alg, m) for m in data["members"]]
        measures = [Measure.from_json(m) for m in data["measures"]] if "measures" in data else None
        return cls(alg, data["max_length"], members, data["preorder"], data.get("n_max"), measures)


def _dimension_vectors(nvert: int, max_len: int):
    for total in range(1, max_len + 1):
        for dims in itertools.product(range(total + 1), repeat=nvert):
            if sum(dims) == total:
                yield dims


def _matrix_tuples(alg: Algebra, dims: Sequence[int]):
    q = alg.quiver
    shapes = [(dims[q.vertex_index(a.tgt)], dims[q.vertex_index(a.src)]) for a in alg.arrows]
    n = sum(r * c for r, c in shapes)
    check_cap(f"matrix tuples for dims {tuple(dims)}", alg.p**n, current_caps().enum_cap)
    for flat in itertools.product(range(alg.p), repeat=n):
        maps, k = {}, 0
        for a, (r, c) in zip(alg.arrows, shapes):
            maps[a.name] = [list(flat[k + i * c: k + (i + 1) * c]) for i in range(r)]
            k += r * c
        yield Representation.create(alg, dict(zip(alg.vertices, dims)), maps, check=False)


def enumerate_ind(alg: Algebra, max_len: int, n_max: int | None = None) -> IndUniverse:
    """All indecomposables of length <= max_len up to isomorphism.

    Each class is represented by the first member met in the scan (graded
    lexicographic dimension vectors, then lexicographic matrix data).
    """
    members: list[Representation] = []
    for dims in _dimension_vectors(len(alg.vertices), max_len):
        found: list[Representation] = []
        for rep in _matrix_tuples(alg, dims):
            if validate(alg, rep) is not None or not is_indecomposable_cached(rep):
                continue
            if any(is_isomorphic(rep, other) for other in found):
                continue
            found.append(rep)
        members += found
    members.sort(key=lambda x: x.key())
    preorder = [[embeds_in_power(x, y, n_max) for y in members] for x in members]
    return IndUniverse(alg, max_len, members, preorder, n_max)


# -- operations on closed sets ----------------------------------------------


def sub_closure(universe: IndUniverse, seeds: Iterable[int]) -> DownSet:
    return DownSet(universe.closure(seeds), universe)


def zg_set(universe: IndUniverse, c: DownSet | Iterable[int]) -> frozenset[int]:
    members = c.members if isinstance(c, DownSet) else frozenset(c)
    return frozenset(x for x in universe.indices if universe.closure([x]) <= members)


def join(a: DownSet, b: DownSet) -> DownSet:
    return sub_closure(a.universe, a.members | b.members)


def intersect_with_witness(
    family: Sequence[DownSet], universe: IndUniverse | None = None
) -> tuple[DownSet, tuple[int, ...]]:
    """Intersection of the family and a small subfamily with the same intersection.

    Greedy: repeatedly take the member that shrinks the running intersection
    most (lowest index on ties) until it equals the full intersection.
    """
    if universe is None:
        if not family:
            raise ValueError("an empty family needs an explicit universe")
        universe = family[0].universe
    target = frozenset(universe.indices)
    for c in family:
        target &= c.members
    current = frozenset(universe.indices)
    chosen: list[int] = []
    while family and (not chosen or current != target):
        i = min(
            (i for i in range(len(family)) if i not in chosen),
            key=lambda i: (len(current & family[i].members), i),
        )
        chosen.append(i)
        current &= family[i].members
    return DownSet(target, universe), tuple(sorted(chosen))


def gr_filtration(universe: IndUniverse, bound: Measure) -> tuple[frozenset[int], DownSet]:
    """Members with measure <= bound, as a point set and as a closed set."""
    members = frozenset(i for i in universe.indices if not bound < universe.measures[i])
    return members, universe.downset(members)


def mu_of(universe: IndUniverse, members: Iterable[int]) -> Measure:
    return sup_finite(universe.measures[i] for i in members)


def minimal_elements(family: Iterable[DownSet], predicate: Callable[[DownSet], bool]) -> list[DownSet]:
    chosen = [c for c in family if predicate(c)]
    return [c for c in chosen if not any(d.members < c.members for d in chosen)]


# -- law checks ----------------------------------------------------------------


@dataclass
class Report:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def to_json(self) -> dict:
        return {"checked": self.checked, "failures": self.failures, "name": self.name, "ok": self.ok}


def check_galois(f_table: dict, g_table: dict, leq_s: Callable, leq_t: Callable, name: str = "galois") -> Report:
    """Check f(x) <= y  <=>  x <= g(y) for every x in f_table and y in g_table.

    Stops at the first failing pair.
    """
    report = Report(name)
    for x, fx in f_table.items():
        for y, gy in g_table.items():
            report.checked += 1
            if leq_t(fx, y) != leq_s(x, gy):
                report.fail(f"pair ({_show(x)}, {_show(y)}): f(x)<=y is {leq_t(fx, y)}, x<=g(y) is {leq_s(x, gy)}")
                return report
    return report


def _show(v) -> str:
    if isinstance(v, (frozenset, set)):
        return "{" + ",".join(map(str, sorted(v))) + "}"
    return str(v)


def achieved_measures(universe: IndUniverse) -> set[Measure]:
    """Measures of members, plus the empty measure of the zero module."""
    return set(universe.measures) | {EMPTY}


def measure_pool(universe: IndUniverse) -> list[Measure]:
    """Achieved measures plus probes that are not (necessarily) achieved."""
    probes = [
        EMPTY,
        finite([2]),
        finite([1, 2, 4]),
        finite([1, 2, 3, 4]),
        finite([1, 3, 4]),
        canonicalize([], (1, 2)),
        canonicalize([1], (2, 2)),
        canonicalize([], (1, 1)),
    ]
    return sorted(set(universe.measures) | set(probes))


def galois_sub_zg(universe: IndUniverse) -> Report:
    n = len(universe)
    check_cap("subsets of the universe", 2**n, current_caps().enum_cap)
    subsets = [frozenset(s) for k in range(n + 1) for s in itertools.combinations(range(n), k)]
    closed = [c.members for c in universe.closed_sets()]
    f = {v: universe.closure(v) for v in subsets}
    g = {c: zg_set(universe, c) for c in closed}
    subset = lambda a, b: a <= b  # noqa: E731
    return check_galois(f, g, subset, subset, "galois(sub, Zg)")


def galois_mu_sub(universe: IndUniverse) -> Report:
    closed = [c.members for c in universe.closed_sets()]
    pool = measure_pool(universe)
    f = {c: mu_of(universe, c) for c in closed}
    g = {i: gr_filtration(universe, i)[1].members for i in pool}
    return check_galois(f, g, lambda a, b: a <= b, lambda a, b: not b < a, "galois(mu, sub)")


def check_quotient_maps(universe: IndUniverse) -> Report:
    """sub(Zg C) = C for every closed C and mu(sub I) = I for every achieved I.

    Also cross-checks the stored preorder against the closure of singletons
    computed from hom spaces, so a corrupted table is reported.
    """
    report = Report("quotient maps")
    for c in universe.closed_sets():
        report.checked += 1
        back = universe.closure(zg_set(universe, c))
        if back != c.members:
            report.fail(f"sub(Zg {_show(c.members)}) = {_show(back)}")
    for i in sorted(achieved_measures(universe)):
        report.checked += 1
        members = frozenset(j for j in universe.indices if not i < universe.measures[j])
        if mu_of(universe, members) != i:
            report.fail(f"mu(sub {i}) = {mu_of(universe, members)}")
    for z in universe.indices:
        for y in universe.indices:
            report.checked += 1
            actual = universe.reject(z, y).length == 0
            if universe.preorder[z][y] != actual:
                report.fail(f"preorder entry ({z},{y}) is {universe.preorder[z][y]}, hom spaces say {actual}")
    return report


@dataclass
class ClosureEquivalence:
    members: frozenset[int]
    downward_closed: bool  # under the embeds-in-a-power preorder
    closed: bool  # under finite sums followed by submodules
    fixed_point: bool  # C == Zg(sub C)

    @property
    def equivalent(self) -> bool:
        return self.closed == self.fixed_point

    @property
    def preorder_equivalent(self) -> bool:
        return self.downward_closed == self.fixed_point

    def to_json(self) -> dict:
        return {
            "closed": self.closed,
            "downward_closed": self.downward_closed,
            "equivalent": self.equivalent,
            "fixed_point": self.fixed_point,
            "members": sorted(self.members),
            "preorder_equivalent": self.preorder_equivalent,
        }


def closure_equivalences(universe: IndUniverse, members: Iterable[int]) -> ClosureEquivalence:
    members = frozenset(members)
    return ClosureEquivalence(
        members,
        universe.is_preorder_downward_closed(members),
        universe.is_closed(members),
        zg_set(universe, universe.closure(members)) == members,
    )


def check_laws(universe: IndUniverse) -> dict:
    """Every finite-model law, exhaustively; returns a JSON-ready report."""
    reports = [
        galois_sub_zg(universe),
        galois_mu_sub(universe),
        check_quotient_maps(universe),
    ]
    closed = universe.closed_sets()
    pool = measure_pool(universe)
    v = {i: gr_filtration(universe, i)[0] for i in pool}
    achieved = achieved_measures(universe)

    r = Report("filtration")
    for a in pool:
        for b in pool:
            if not b < a:
                r.checked += 1
                if not v[a] <= v[b]:
                    r.fail(f"V_{a} not contained in V_{b}")
    for k in (1, 2, 3):
        for family in itertools.combinations(pool, k):
            r.checked += 1
            meet = frozenset(universe.indices)
            for i in family:
                meet &= v[i]
            if v[inf_finite(family)] != meet:
                r.fail(f"V_inf{[str(i) for i in family]} != intersection")
    for i in pool:
        r.checked += 1
        m = mu_of(universe, v[i])
        if i < m or ((m == i) != (i in achieved)):
            r.fail(f"mu(V_{i}) = {m}")
    reports.append(r)

    r = Report("intersection law")
    for a, b in itertools.combinations_with_replacement(closed, 2):
        r.checked += 1
        lhs = zg_set(universe, a.members & b.members)
        if lhs != zg_set(universe, a) & zg_set(universe, b):
            r.fail(f"Zg({_show(a.members)} & {_show(b.members)})")
    reports.append(r)

    r = Report("reconstruction")
    for x in universe.indices:
        r.checked += 1
        rebuilt = mu_of(universe, zg_set(universe, sub_closure(universe, [x])))
        if rebuilt != universe.measures[x]:
            r.fail(f"member {x}: mu = {universe.measures[x]}, rebuilt {rebuilt}")
    reports.append(r)

    r = Report("universal map laws")
    for x in universe.indices:
        sx = universe.sub_of(universe.members[x])
        r.checked += 1
        if sx.members != universe.closure([x]):
            r.fail(f"sub of member {x} disagrees with its closure")
        for y in universe.indices:
            if y < x:
                continue
            r.checked += 1
            s = universe.sub_of(direct_sum(universe.members[x], universe.members[y]))
            if s != join(sub_closure(universe, [x]), sub_closure(universe, [y])):
                r.fail(f"sub({x} + {y}) != sub {x} v sub {y}")
            if universe.preorder[x][y]:
                r.checked += 1
                if not universe.closure([x]) <= universe.closure([y]):
                    r.fail(f"{x} embeds in a power of {y} but sub {x} not in sub {y}")
    reports.append(r)

    r = Report("intersection closed / minimal elements")
    sets = {c.members for c in closed}
    for a, b in itertools.combinations(closed, 2):
        r.checked += 1
        if a.members & b.members not in sets:
            r.fail(f"{_show(a.members)} & {_show(b.members)} is not closed")
    predicates = [(f"size>={k}", lambda c, k=k: len(c) >= k) for k in range(len(universe) + 2)]
    predicates += [(f"contains {i}", lambda c, i=i: i in c.members) for i in universe.indices]
    for label, pred in predicates:
        r.checked += 1
        if any(pred(c) for c in closed) and not minimal_elements(closed, pred):
            r.fail(f"no minimal element for predicate {label}")
    reports.append(r)

    r = Report("closure equivalences")
    counterexamples = []
    n = len(universe)
    for k in range(n + 1):
        for s in itertools.combinations(range(n), k):
            r.checked += 1
            eq = closure_equivalences(universe, s)
            if not eq.equivalent:
                r.fail(f"{_show(eq.members)}: closed={eq.closed}, fixed={eq.fixed_point}")
            if not eq.preorder_equivalent:
                counterexamples.append(sorted(eq.members))
    reports.append(r)

    return {
        "checks": [rep.to_json() for rep in reports],
        "closed_sets": len(closed),
        "members": [universe.label(i) for i in universe.indices],
        "note": TRUNCATION_NOTE,
        "ok": all(rep.ok for rep in reports),
        "preorder_downsets_not_closed": counterexamples,
    }
