from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from srank import finite as fin
from srank.kernel import (
    BudgetExceeded,
    Hom,
    HomViolation,
    NotClosedWithin,
    UnknownUpTo,
    Witness,
    check_confluence,
    check_hom,
    complete,
    critical_pairs,
    detect_finite,
    extreme_rays,
    find_grading,
    leq_witness,
    normal_form,
    nullspace,
    order_key,
    unitarity_report,
)
from srank.presentation import MonoidPresentation, parse_presentation

from conftest import ONE_REL, TRIPLE, TWO_GEN_3, system
from oracle import closure, vectors_upto


def test_single_relation_rules(one_rel):
    assert one_rel.rules == (((1, 1), (1, 0)),)
    # normal forms: m a with m >= 1, or n b
    for v in one_rel.window(6):
        assert v[0] == 0 or v[1] == 0


def test_free_monoid_has_no_rules():
    assert system("gens a b;").rules == ()


def test_two_gen_equalities(two_gen):
    assert two_gen.eq((3, 0), (1, 1))
    assert normal_form(two_gen, (5, 0)) == normal_form(two_gen, (1, 2))
    assert not two_gen.eq((0, 1), (2, 0))
    assert two_gen.nf((0, 0)) == (0, 0)


def test_rules_decrease(two_gen):
    for l, r in two_gen.rules:
        assert order_key(r) < order_key(l)
    check_confluence(two_gen)


def test_window_examples(one_rel):
    assert set(one_rel.window(2)) == {(0, 0), (1, 0), (2, 0), (0, 1), (0, 2)}
    assert system("gens a;").window(3) == ((0,), (1,), (2,), (3,))
    assert one_rel.window(0) == ((0, 0),)


def test_window_matches_oracle(one_rel):
    # the classes met by vectors of degree <= 2 are exactly the 5 normal forms
    c = closure(2, [((1, 1), (1, 0))], 10)
    roots = {c.find(v) for v in vectors_upto(2, 2)}
    assert len(roots) == len(one_rel.window(2)) == 5


def test_budget_exceeded():
    p = parse_presentation("gens a b c; rel 2a + b = c; rel a + 2c = b; rel 3b = a + c;")
    with pytest.raises(BudgetExceeded) as exc:
        complete(p, budget=1)
    assert exc.value.budget == 1
    assert not exc.value.partial.confluent


def test_critical_pairs_skip_disjoint():
    rules = [((1, 0), (0, 0)), ((0, 1), (0, 0))]
    assert list(critical_pairs(rules)) == []


def test_finite_detection():
    F = detect_finite(system(TRIPLE))
    assert F.labels == ("0", "a", "2 a")
    assert F.add(1, 2) == 1
    assert detect_finite(system("gens a; rel a = 0;")).labels == ("0",)


def test_infinite_detection(two_gen):
    nc = detect_finite(two_gen, cap=40)
    assert isinstance(nc, NotClosedWithin)
    assert nc.infinite and nc.grading.weights == (1, 2)


def test_gradings():
    assert find_grading(parse_presentation(TWO_GEN_3)).weights == (1, 2)
    assert find_grading(parse_presentation(ONE_REL)).weights == (1, 0)
    assert find_grading(parse_presentation("gens a b c;")).weights == (1, 1, 1)
    assert find_grading(parse_presentation(TRIPLE)) is None


def test_nullspace_small():
    basis = nullspace([[1, -1, 0]], 3)
    assert len(basis) == 2
    for v in basis:
        assert v[0] - v[1] == 0


def test_extreme_rays_of_single_relation():
    assert extreme_rays(parse_presentation(ONE_REL)) == [(1, 0)]


def test_leq_witness(two_gen):
    r6 = system(TRIPLE)
    w = leq_witness(r6, (3,), (2,), 4)
    assert isinstance(w, Witness) and r6.add((3,), w.z) == r6.nf((2,))
    w0 = leq_witness(two_gen, (0, 0), (2, 1), 3)
    assert isinstance(w0, Witness) and two_gen.eq(w0.z, (2, 1))
    assert isinstance(leq_witness(two_gen, (0, 1), (1, 0), 12), UnknownUpTo)


def test_homs_from_examples(two_gen, one_rel):
    T = fin.cyclic(2, 1)  # {0, x, inf} with 2x = inf
    h = check_hom(two_gen, T, {"a": "inf", "b": "x"})
    assert isinstance(h, Hom)
    assert isinstance(check_hom(one_rel, T, {"a": "inf", "b": "x"}), Hom)
    assert isinstance(check_hom(two_gen, T, {"a": "x", "b": "0"}), HomViolation)
    with pytest.raises(ValueError):
        check_hom(two_gen, T, {"a": "x"})


def test_identity_hom_on_finite():
    rs = system(TRIPLE)
    F = detect_finite(rs)
    h = check_hom(rs, F, {"a": "a"})
    assert isinstance(h, Hom)
    assert [h(v) for v in [(0,), (1,), (2,)]] == [0, 1, 2]


def test_unitarity_of_hom_onto_finite():
    rs = system(TRIPLE)
    F = detect_finite(rs)
    rep = unitarity_report(check_hom(rs, F, {"a": "a"}), 4)
    assert rep.injective.holds and rep.injective.exhaustive
    assert rep.cofinal.holds and rep.weakly_unitary.holds


def test_non_injective_hom_detected(two_gen):
    h = check_hom(two_gen, fin.cyclic(2, 1), {"a": "inf", "b": "x"})
    rep = unitarity_report(h, 4)
    assert rep.injective.fails
    assert rep.cofinal.holds


vec = st.tuples(st.integers(0, 3), st.integers(0, 3))
small_rel = st.tuples(vec, vec).filter(lambda r: r[0] != r[1])


@settings(max_examples=60, deadline=None)
@given(st.lists(small_rel, min_size=1, max_size=3), vec, vec)
def test_normal_form_is_congruence(rels, u, v):
    rs = complete(MonoidPresentation(("a", "b"), tuple(rels)))
    assert rs.nf(rs.nf(u)) == rs.nf(u)
    assert rs.irreducible(rs.nf(u))
    assert rs.add(u, v) == rs.nf(tuple(x + y for x, y in zip(rs.nf(u), rs.nf(v))))
    for l, r in rels:
        assert rs.eq(l, r)


@settings(max_examples=60, deadline=None)
@given(st.lists(small_rel, min_size=1, max_size=3))
def test_grading_respects_relations(rels):
    p = MonoidPresentation(("a", "b"), tuple(rels))
    g = find_grading(p)
    if g is not None:
        for l, r in rels:
            assert g(l) == g(r)
        assert all(w >= 0 for w in g.weights) and any(g.weights)


@settings(max_examples=40, deadline=None)
@given(st.lists(small_rel, min_size=1, max_size=2), st.integers(0, 4))
def test_window_is_down_closed(rels, R):
    rs = complete(MonoidPresentation(("a", "b"), tuple(rels)))
    W = set(rs.window(R))
    assert all(rs.irreducible(v) and sum(v) <= R for v in W)
    for v in W:
        for i, c in enumerate(v):
            if c:
                assert tuple(x - (j == i) for j, x in enumerate(v)) in W
