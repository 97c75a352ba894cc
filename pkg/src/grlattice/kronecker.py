"""The Kronecker algebra: preprojectives P_n, regulars R_n(lambda), preinjectives Q_n.

Orientation: arrows a, b go from vertex 1 to vertex 2, so P_1 is the simple
at the sink (vertex 2) and Q_1 the simple at the source (vertex 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import algebras
from .grm import mu
from .measures import Measure, chain_limit, finite, canonicalize, lex_cmp, Ordering
from .quiver import Representation

INFINITY = "inf"


@dataclass(frozen=True)
class KroneckerFamily:
    kind: str  # "P", "R" or "Q"
    n: int
    lam: int | str | None = None  # point of P^1(F_p): residue or INFINITY

    def __post_init__(self):
        if self.kind not in ("P", "R", "Q"):
            raise ValueError(f"kind must be P, R or Q, got {self.kind!r}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if (self.kind == "R") != (self.lam is not None):
            raise ValueError("lambda is required for R and forbidden for P, Q")

    def label(self) -> str:
        if self.kind == "R":
            return f"R_{self.n}({self.lam})"
        return f"{self.kind}_{self.n}"


def projective_line(p: int) -> list[int | str]:
    return list(range(p)) + [INFINITY]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _jordan(n, lam):
    return [[lam if i == j else int(j == i + 1) for j in range(n)] for i in range(n)]


def build(fam: KroneckerFamily, p: int = 2) -> Representation:
    alg = algebras.kronecker(p)
    n = fam.n
    if fam.kind == "P":
        # e_i -> e_i and e_i -> e_{i+1}: two embeddings k^{n-1} -> k^n
        a = [[int(i == j) for j in range(n - 1)] for i in range(n)]
        b = [[int(i == j + 1) for j in range(n - 1)] for i in range(n)]
        return Representation.create(alg, {"1": n - 1, "2": n}, {"a": a, "b": b})
    if fam.kind == "Q":
        # the two coordinate projections k^n -> k^{n-1}
        a = [[int(i == j) for j in range(n)] for i in range(n - 1)]
        b = [[int(j == i + 1) for j in range(n)] for i in range(n - 1)]
        return Representation.create(alg, {"1": n, "2": n - 1}, {"a": a, "b": b})
    if fam.lam == INFINITY:
        a, b = _jordan(n, 0), _identity(n)
    else:
        a, b = _identity(n), _jordan(n, int(fam.lam) % p)
    return Representation.create(alg, {"1": n, "2": n}, {"a": a, "b": b})


def closed_form_measure(kind: str, n: int) -> Measure:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if kind == "P":
        return finite(range(1, 2 * n, 2))
    if kind == "R":
        return finite([1] + list(range(2, 2 * n + 1, 2)))
    if kind == "Q":
        return finite([1] + list(range(2, 2 * n - 1, 2)) + [2 * n - 1])
    raise ValueError(f"kind must be P, R or Q, got {kind!r}")


ADIC = canonicalize([], (1, 2))
PRUFER = canonicalize([1, 2], (4, 2))


class LimitMismatch(AssertionError):
    pass


def limit_measures() -> dict[str, Measure]:
    """Measures of the Pruefer, adic and generic modules, computed two ways.

    The decreasing Q-chain starts at Q_2: Q_1 is the bottom-most measure {1}.
    """
    limits = {
        "adic": chain_limit(lambda n: closed_form_measure("P", n), "sup"),
        "generic": chain_limit(lambda n: closed_form_measure("P", n), "sup"),
        "prufer": chain_limit(lambda n: closed_form_measure("R", n), "sup"),
    }
    from_q = chain_limit(lambda n: closed_form_measure("Q", n + 1), "inf")
    expected = {"adic": ADIC, "generic": ADIC, "prufer": PRUFER}
    for name, value in limits.items():
        if value != expected[name]:
            raise LimitMismatch(f"{name}: chain limit {value} != closed form {expected[name]}")
    if from_q != PRUFER:
        raise LimitMismatch(f"prufer: infimum of Q_n {from_q} != closed form {PRUFER}")
    return limits


def families(max_n: int, p: int) -> list[KroneckerFamily]:
    out = []
    for n in range(1, max_n + 1):
        out.append(KroneckerFamily("P", n))
        out += [KroneckerFamily("R", n, lam) for lam in projective_line(p)]
        out.append(KroneckerFamily("Q", n))
    return out


def expected_chain(max_n: int) -> list[list[str]]:
    """Kronecker measures in increasing order, grouped where equal.

    P_1 = Q_1 < P_2 < ... < P_N < R_1 < ... < R_N < Q_N < ... < Q_2.
    """
    chain = [["P_1", "Q_1"]]
    chain += [[f"P_{n}"] for n in range(2, max_n + 1)]
    chain += [[f"R_{n}"] for n in range(1, max_n + 1)]
    chain += [[f"Q_{n}"] for n in range(max_n, 1, -1)]
    return chain


@dataclass
class KroneckerReport:
    max_n: int
    p: int
    measures: dict[str, Measure] = field(default_factory=dict)
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "field": self.p,
            "max_n": self.max_n,
            "measures": {k: v.to_json() for k, v in sorted(self.measures.items())},
            "mismatches": list(self.mismatches),
            "ok": self.ok,
        }


def verify(
    max_n: int, p: int = 2, builder: Callable[[KroneckerFamily, int], Representation] = build
) -> KroneckerReport:
    report = KroneckerReport(max_n, p)
    by_kind: dict[str, Measure] = {}
    for fam in families(max_n, p):
        m = mu(builder(fam, p))
        report.measures[fam.label()] = m
        expected = closed_form_measure(fam.kind, fam.n)
        if m != expected:
            report.mismatches.append(f"{fam.label()}: computed {m}, closed form {expected}")
        if fam.kind == "R":
            key = f"R_{fam.n}"
            if key in by_kind and by_kind[key] != m:
                report.mismatches.append(f"{fam.label()}: {m} differs from another lambda ({by_kind[key]})")
            by_kind.setdefault(key, m)
        else:
            by_kind[fam.label()] = m
    order = expected_chain(max_n)
    for group in order:
        values = {by_kind[name] for name in group}
        if len(values) != 1:
            report.mismatches.append(f"chain: {group} should be equal, got {sorted(map(str, values))}")
    for lower, upper in zip(order, order[1:]):
        a, b = by_kind[lower[0]], by_kind[upper[0]]
        if lex_cmp(a, b) is not Ordering.LT:
            report.mismatches.append(f"chain: expected {lower[0]} < {upper[0]}, got {a} vs {b}")
    return report
