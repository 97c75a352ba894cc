import itertools
import random

import pytest

from grlattice import algebras
from grlattice.kronecker import KroneckerFamily, build
from grlattice.measures import EMPTY, canonicalize, finite
from grlattice.quiver import direct_sum
from grlattice.submod import embeds_in_power_bruteforce
from grlattice.subcat import (
    DownSet,
    IndUniverse,
    NotClosed,
    check_galois,
    check_laws,
    check_quotient_maps,
    closure_equivalences,
    enumerate_ind,
    gr_filtration,
    intersect_with_witness,
    minimal_elements,
    mu_of,
    sub_closure,
    zg_set,
)

# Kronecker over F_2, length <= 3, in enumeration order:
# 0 S_2, 1 S_1, 2-4 the three R_1(lambda), 5 P_2, 6 Q_2
S2, S1, RA, RB, RC, P2, Q2 = range(7)
R_INF, R_0, R_1 = RA, RB, RC


@pytest.fixture(scope="module")
def kr3():
    return enumerate_ind(algebras.kronecker(2), 3)


@pytest.fixture(scope="module")
def kr2():
    return enumerate_ind(algebras.kronecker(2), 2)


def test_enumeration_counts():
    assert len(enumerate_ind(algebras.a2(2), 2)) == 3
    assert len(enumerate_ind(algebras.kronecker(2), 1)) == 2
    assert len(enumerate_ind(algebras.kronecker(2), 2)) == 5
    assert len(enumerate_ind(algebras.kronecker(3), 2)) == 6  # four points of P^1(F_3)
    assert len(enumerate_ind(algebras.a3(2), 3)) == 6


def test_kronecker_universe_shape(kr3):
    assert [x.dims for x in kr3.members] == [(0, 1), (1, 0), (1, 1), (1, 1), (1, 1), (1, 2), (2, 1)]
    assert [str(m) for m in kr3.measures] == ["{1}", "{1}", "{1,2}", "{1,2}", "{1,2}", "{1,3}", "{1,2,3}"]


def test_sub_closure_examples(kr3):
    assert sub_closure(kr3, [P2]).members == {S2, P2}
    assert sub_closure(kr3, [S1]).members == {S1}
    assert sub_closure(kr3, []).members == frozenset()
    # P_2 is in the sum of two distinct regular simples but below neither
    assert sub_closure(kr3, [RA, RB]).members == {S2, RA, RB, P2}
    assert not kr3.preorder[P2][RA] and not kr3.preorder[P2][RB]
    # every R_1 and P_2 sit in Q_2; S_1 does not
    assert sub_closure(kr3, [Q2]).members == {S2, RA, RB, RC, P2, Q2}


def test_regular_simples_by_lambda(kr3):
    for i, lam in ((R_INF, "inf"), (R_0, 0), (R_1, 1)):
        assert kr3.find(build(KroneckerFamily("R", 1, lam))) == i
    assert sub_closure(kr3, [R_0]).members == {S2, R_0}


def test_zg_examples(kr3):
    assert zg_set(kr3, sub_closure(kr3, [P2])) == {S2, P2}
    assert zg_set(kr3, kr3.full()) == set(kr3.indices)

    assert zg_set(kr3, sub_closure(kr3, [RA, RB])) == {S2, RA, RB, P2}
    assert zg_set(kr3, {S2, RA, RB}) == {S2, RA, RB}
    assert zg_set(kr3, set()) == frozenset()


def test_filtration_examples(kr3):
    assert gr_filtration(kr3, finite([1]))[0] == {S1, S2}
    assert gr_filtration(kr3, finite([1, 2]))[0] == set(range(7)) - {Q2}
    assert gr_filtration(kr3, finite([1, 3]))[0] == {S1, S2, P2}
    assert gr_filtration(kr3, EMPTY)[0] == frozenset()
    assert gr_filtration(kr3, canonicalize([], (1, 1)))[0] == set(range(7))


def test_downset_validation(kr3):
    assert kr3.downset([S2, P2]).members == {S2, P2}
    with pytest.raises(NotClosed):
        kr3.downset([P2])
    with pytest.raises(NotClosed):
        kr3.downset([S2, RA, RB])


def _oracle_closure(u: IndUniverse, seeds):
    """Z is in the closure iff Z embeds in a sum of at most l(Z) seed members."""
    out = set()
    for z in u.indices:
        x = u.members[z]
        for k in range(1, x.length + 1):
            if any(
                embeds_in_power_bruteforce(x, _sum(u, combo), 1)
                for combo in itertools.combinations_with_replacement(sorted(seeds), k)
            ):
                out.add(z)
                break
    return frozenset(out)


def _sum(u, combo):
    s = u.members[combo[0]]
    for i in combo[1:]:
        s = direct_sum(s, u.members[i])
    return s


@pytest.mark.parametrize("alg, n", [(algebras.a2(2), 2), (algebras.kronecker(2), 2), (algebras.a3(2, True), 2)])
def test_closure_matches_bruteforce(alg, n):
    u = enumerate_ind(alg, n)
    for k in range(len(u) + 1):
        for seeds in itertools.combinations(u.indices, k):
            assert u.closure(seeds) == _oracle_closure(u, seeds)


def test_closure_matches_bruteforce_on_pairs(kr3):
    for seeds in itertools.combinations(kr3.indices, 2):
        assert kr3.closure(seeds) == _oracle_closure(kr3, seeds)


def test_closed_sets_are_intersection_closed(kr3):
    closed = {c.members for c in kr3.closed_sets()}
    assert len(closed) == 28
    for a, b in itertools.combinations(closed, 2):
        assert a & b in closed


def test_intersect_with_witness(kr3):
    family = [sub_closure(kr3, s) for s in ([P2, RA], [P2, RB], [P2, S1])]
    result, witness = intersect_with_witness(family)
    assert result.members == {S2, P2}
    assert witness == (0, 1)
    family = [sub_closure(kr3, [P2, R_0]), sub_closure(kr3, [P2, R_1]), sub_closure(kr3, [P2, S1])]
    result, witness = intersect_with_witness(family)
    assert result.members == {S2, P2} and len(witness) == 2
    c = sub_closure(kr3, [Q2])
    assert intersect_with_witness([c]) == (c, (0,))
    assert intersect_with_witness([c, kr3.full(), c]) == (c, (0,))
    with pytest.raises(ValueError):
        intersect_with_witness([])
    full, w = intersect_with_witness([], kr3)
    assert full.members == set(kr3.indices) and w == ()


def test_intersect_random_families(kr3):
    rng = random.Random(5)
    closed = kr3.closed_sets()
    for _ in range(50):
        family = rng.sample(closed, rng.randint(1, 6))
        result, witness = intersect_with_witness(family)
        expected = frozenset(kr3.indices).intersection(*(c.members for c in family))
        assert result.members == expected
        assert frozenset(kr3.indices).intersection(*(family[i].members for i in witness)) == expected


def test_check_galois_positive_and_negative():
    leq = lambda a, b: a <= b  # noqa: E731
    ident = {i: i for i in range(5)}
    assert check_galois(ident, ident, leq, leq).ok
    # f = g = x -> x + 1 is not adjoint to itself
    shifted = {i: i + 1 for i in range(5)}
    report = check_galois(shifted, shifted, leq, leq)
    assert not report.ok and len(report.failures) == 1


def test_quotient_check_catches_corrupted_preorder(kr3):
    bad = IndUniverse(kr3.alg, 3, kr3.members, [row[:] for row in kr3.preorder])
    bad.preorder[P2][RA] = True
    assert not check_quotient_maps(bad).ok
    assert check_quotient_maps(kr3).ok


def test_closure_equivalences(kr3):
    eq = closure_equivalences(kr3, [S2, P2])
    assert eq.closed and eq.fixed_point and eq.downward_closed
    eq = closure_equivalences(kr3, [P2])
    assert not eq.closed and not eq.fixed_point and not eq.downward_closed
    eq = closure_equivalences(kr3, [])
    assert eq.closed and eq.fixed_point and eq.downward_closed
    # downward closed under the preorder, yet P_2 is forced in by R_1 + R_1
    eq = closure_equivalences(kr3, [S2, RA, RB])
    assert eq.downward_closed and not eq.closed and not eq.fixed_point
    assert eq.equivalent and not eq.preorder_equivalent


def test_minimal_elements(kr3):
    closed = kr3.closed_sets()
    mins = minimal_elements(closed, lambda c: P2 in c.members)
    assert [m.members for m in mins] == [frozenset({S2, P2})]
    assert minimal_elements(closed, lambda c: False) == []


def test_a2_quotient_maps():
    u = enumerate_ind(algebras.a2(2), 2)
    assert len(u.closed_sets()) == 6
    assert sorted(set(u.measures) | {EMPTY}) == [EMPTY, finite([1]), finite([1, 2])]
    assert check_quotient_maps(u).ok


def test_mu_of(kr3):
    assert mu_of(kr3, []) == EMPTY
    assert mu_of(kr3, [S2, P2, RA]) == finite([1, 2])


@pytest.mark.parametrize(
    "alg, n, closed",
    [(algebras.a2(2), 2, 6), (algebras.kronecker(2), 3, 28), (algebras.a3(2, True), 3, 18)],
)
def test_laws(alg, n, closed):
    report = check_laws(enumerate_ind(alg, n))
    assert report["ok"], [c for c in report["checks"] if not c["ok"]]
    assert report["closed_sets"] == closed


def test_laws_report_preorder_counterexamples(kr3):
    report = check_laws(kr3)
    assert [S2, RA, RB] in report["preorder_downsets_not_closed"]


def test_universe_json_round_trip(kr2):
    data = kr2.to_json()
    back = IndUniverse.from_json(data)
    assert back.to_json() == data
    assert back.closure([3]) == kr2.closure([3])


def test_sub_of_arbitrary_module(kr3):
    x = direct_sum(kr3.members[RA], kr3.members[RB])
    assert kr3.sub_of(x).members == {S2, RA, RB, P2}
    assert isinstance(kr3.full(), DownSet) and len(kr3.full()) == 7
