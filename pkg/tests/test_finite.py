from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from srank import finite as fin
from srank.finite import INF, MonoidAxiomError, QuotientError
from srank.harness import random_finite_monoid


def partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in partitions(rest):
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]
        yield [[first]] + p


def all_congruences(M):
    """Every congruence of a small monoid, by brute force over set partitions."""
    out = []
    for p in partitions(list(range(M.n))):
        cls = {x: i for i, block in enumerate(p) for x in block}
        if all(cls[M.add(x, z)] == cls[M.add(y, z)]
               for x in range(M.n) for y in range(M.n) if cls[x] == cls[y] for z in range(M.n)):
            out.append(cls)
    return out


monoids = st.integers(0, 10_000).map(lambda s: random_finite_monoid(random.Random(s), 6))


def test_triple_is_valid(triple):
    assert triple.n == 3 and triple.add(1, 2) == 1


def test_trivial_monoid_valid():
    M = fin.validate({"elements": ["0"], "zero": "0", "table": [["0"]]})
    rep = fin.property_report(M)
    assert all(bool(c) for c in (rep.conical, rep.stably_finite, rep.separative, rep.refinement))


def test_associativity_error_carries_triple():
    doc = {"elements": ["0", "a", "b"], "zero": "0",
           "table": [["0", "a", "b"], ["a", "b", "a"], ["b", "a", "a"]]}
    with pytest.raises(MonoidAxiomError) as exc:
        fin.validate(doc)
    x, y, z = exc.value.counterexample
    idx = {"0": 0, "a": 1, "b": 2}
    t = doc["table"]
    add = lambda u, v: idx[t[idx[u]][idx[v]]]  # noqa: E731
    labels = doc["elements"]
    assert add(labels[add(x, y)], z) != add(x, labels[add(y, z)])


def test_triple_properties(triple):
    rep = fin.property_report(triple)
    assert rep.conical and rep.separative and rep.refinement
    assert not rep.stably_finite
    assert triple.add(1, rep.stably_finite.witness[1]) == 1


def test_group_properties(z2):
    rep = fin.property_report(z2)
    assert rep.units == [0, 1]
    assert not rep.conical
    assert rep.separative


def test_structure_examples(triple, z2):
    st_ = fin.structure_report(triple)
    assert st_.components == [[0], [1, 2]] and st_.simple
    trivial = fin.validate({"elements": ["0"], "zero": "0", "table": [["0"]]})
    assert not fin.structure_report(trivial).simple
    s2 = fin.structure_report(z2)
    assert s2.components == [[0, 1]] and not s2.simple


def test_quotient_examples(triple):
    q = fin.quotient(triple, "power_some", [2])
    assert q.monoid.n == 2
    a = q.projection[1]
    assert q.projection[2] == a and q.monoid.add(a, a) == a
    assert fin.quotient(triple, "max_antisym").monoid.n == 2
    assert fin.quotient(triple, "o_ideal", [0, 1, 2]).monoid.n == 1


def test_quotient_errors(triple):
    with pytest.raises(QuotientError):
        fin.quotient(triple, "o_ideal", [1])
    with pytest.raises(QuotientError):
        fin.quotient(triple, "power_all", [1, 2])
    with pytest.raises(QuotientError):
        fin.quotient(triple, "bogus")


def test_triple_rank(triple):
    r = fin.sr_exact_finite(triple, 1)
    assert r.value == INF
    assert r.self_cancellative
    assert not r.hermite
    x, y = r.hermite.witness
    assert triple.add(triple.add(1, 1), x) == triple.add(1, y) and triple.add(1, x) != y


def test_units_have_rank_one(z2):
    assert all(fin.sr_exact_finite(z2, u).value == 1 for u in range(2))
    assert all(fin.sr_plus_exact_finite(z2, u) == 1 for u in range(2))


def test_smallest_congruence_trivial_cases(z2):
    c = fin.smallest_sr_plus_congruence(z2, [(1, 1)])
    assert c.classes() == [[0], [1]]
    trivial = fin.validate({"elements": ["0"], "zero": "0", "table": [["0"]]})
    assert fin.smallest_sr_plus_congruence(trivial, [(0, 3)]).classes() == [[0]]


def test_smallest_congruence_matches_lattice(triple):
    got = fin.smallest_sr_plus_congruence(triple, [(1, 1)])
    ok = [c for c in all_congruences(triple)
          if fin.sr_plus_condition_holds(triple, fin.Congruence.from_relation(triple, lambda x, y: c[x] == c[y]),
                                         [(1, 1)])]
    # the least such congruence is contained in all others
    sizes = [len(set(c.values())) for c in ok]
    assert len(got.classes()) == max(sizes)
    for c in ok:
        for cls in got.classes():
            assert len({c[x] for x in cls}) == 1


@settings(max_examples=40, deadline=None)
@given(monoids)
def test_smallest_congruence_is_least(M):
    a = max(range(M.n), key=lambda x: x not in M.units)
    target = [(a, 2)]
    got = fin.smallest_sr_plus_congruence(M, target)
    assert got.is_congruence(M)
    assert fin.sr_plus_condition_holds(M, got, target)
    for c in all_congruences(M):
        cong = fin.Congruence.from_relation(M, lambda x, y: c[x] == c[y])
        if fin.sr_plus_condition_holds(M, cong, target):
            for cls in got.classes():
                assert len({c[x] for x in cls}) == 1


@settings(max_examples=60, deadline=None)
@given(monoids)
def test_rank_law(M):
    for a in range(M.n):
        v = fin.sr_exact_finite(M, a).value
        assert v == (1 if a in M.units else INF)
        vp = fin.sr_plus_exact_finite(M, a)
        assert v <= vp <= v + 1


@settings(max_examples=60, deadline=None)
@given(monoids)
def test_characterizations_agree(M):
    rep = fin.property_report(M)
    assert bool(fin.separative_c(M)) == bool(rep.separative)
    assert bool(fin.strongly_separative_c(M)) == bool(rep.strongly_separative)
    if rep.strongly_separative:
        assert rep.separative


@settings(max_examples=40, deadline=None)
@given(monoids)
def test_o_ideals(M):
    ideals = fin.all_o_ideals(M)
    assert all(fin.is_o_ideal(M, I) for I in ideals)
    assert frozenset(range(M.n)) in ideals
    # brute force over all subsets for tiny monoids
    if M.n <= 6:
        brute = {frozenset(x for x in range(M.n) if mask >> x & 1)
                 for mask in range(1 << M.n) if fin.is_o_ideal(M, [x for x in range(M.n) if mask >> x & 1])}
        assert brute == set(ideals)


@settings(max_examples=40, deadline=None)
@given(monoids)
def test_quotients_are_monoids(M):
    for kind, params in (("max_antisym", None), ("power_some", [2]), ("power_all", [2, 3])):
        q = fin.quotient(M, kind, params)
        fin.validate(q.monoid.to_document())
        rel = fin.defining_relation(M, kind, params)
        assert all(q.projection[x] == q.projection[y] for x in range(M.n) for y in range(M.n) if rel(x, y))


@settings(max_examples=40, deadline=None)
@given(monoids)
def test_components_partition(M):
    comps = fin.structure_report(M).components
    assert sorted(x for c in comps for x in c) == list(range(M.n))
    for c in comps:
        for x in c:
            for y in c:
                assert M.ideal(x) == M.ideal(y)
