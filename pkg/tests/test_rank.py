from __future__ import annotations

import json

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from srank import finite as fin
from srank import rank
from srank.harness import load_catalog
from srank.kernel import check_hom, complete
from srank.presentation import MonoidPresentation
from srank.rank import INF
from srank.verify import System, verify_certificate

from conftest import TRIPLE, system


def verified(rs, cert):
    return verify_certificate(System(json.loads(json.dumps(rs.to_json()))), json.loads(json.dumps(cert.to_json())))


@pytest.fixture(scope="module")
def catalog():
    return load_catalog()


def test_condition_fails_at_two(two_gen):
    v = rank.sr_condition_window(two_gen, (1, 0), 2)
    assert v.fails
    assert v.witness == {"x": "a", "y": "b"}
    verified(two_gen, v.certificate)


def test_refutation_by_three_element_target(two_gen):
    T = fin.cyclic(2, 1)
    h = check_hom(two_gen, T, {"a": "inf", "b": "x"})
    cert = rank.refute(two_gen, (1, 0), 2, 1, (1, 0), (0, 1), homs=[h])
    assert cert is not None and cert.kind == "Refutation"
    assert verified(two_gen, cert) == cert.claim() == "sr(a) >= 3"


def test_condition_unknown_when_it_holds(one_rel):
    v = rank.sr_condition_window(one_rel, (1, 0), 2, 6)
    assert v.unknown and v.radius == 6


def test_zero_is_cancellative(one_rel):
    assert not rank.sr_condition_window(one_rel, (0, 0), 1, 4).fails


def test_w12_from_relation(catalog):
    rs = catalog["F2_5"].system
    cert = rank.find_w12(rs, (1, 0), 4, 8)
    assert cert.kind == "W12" and cert.elements["gamma"] == (0, 1)
    assert verified(rs, cert) == "sr(a) >= 5"


def test_single_relation_lower_bound(one_rel):
    cert = rank.certify_sr_lower(one_rel, (1, 0), 1)
    assert cert.kind == "Refutation"
    assert cert.elements["x"] == (0, 1) and cert.elements["y"] == (0, 0)
    verified(one_rel, cert)


def test_free_monoid_has_no_lower_bound():
    assert rank.certify_sr_lower(system("gens a b;"), (1, 0), 1) is None


def test_infinite_certificates(catalog):
    f1 = catalog["F1"].system
    cert = rank.certify_sr_infinite(f1, f1.presentation.unit(1))
    assert cert is not None and cert.kind == "PurelyInf"
    verified(f1, cert)
    r6 = system(TRIPLE)
    c6 = rank.certify_sr_infinite(r6, (1,))
    assert c6.elements["z"] == (1,)
    verified(r6, c6)
    assert rank.certify_sr_infinite(catalog["F2_3"].system, (1, 0)) is None


@pytest.mark.parametrize("fid, elem, value", [
    ("F2_5", "a", 5),
    ("F3", "a", 2),
    ("F5", "2a", 2),
])
def test_pinned_brackets(catalog, fid, elem, value):
    fx = catalog[fid]
    b = rank.sr_bracket(fx.system, fx.element(elem), fx.radius)
    assert b.pinned and b.value == value
    for c in b.certificates:
        verified(fx.system, c)


def test_strong_bracket_f5(catalog):
    fx = catalog["F5"]
    b = rank.sr_plus_bracket(fx.system, fx.element("a"), fx.radius)
    assert b.pinned and b.value == 5


def test_strong_bracket_free_monoid():
    rs = system("gens a b;")
    b = rank.sr_plus_bracket(rs, (1, 0), 4)
    assert b.lo == 1 and b.hi[0] == 1


def test_m_bracket(one_rel, catalog):
    prof = rank.srkl_profile(one_rel, (1, 0), 3)
    assert (prof.m_lo, prof.m_hi) == (1, 1)
    fx = catalog["F2_5"]
    prof5 = rank.srkl_profile(fx.system, fx.element("a"), 5, fx.radius)
    assert prof5.m_hi is None or prof5.m_hi <= 4


def test_predicates(two_gen):
    p = rank.element_predicates(two_gen, (2, 0))
    assert p["self_cancellative"].fails
    w = p["self_cancellative"].certificate.elements
    assert two_gen.add(w["a"], w["a"]) == two_gen.add(w["a"], w["y"])
    assert not two_gen.eq(w["a"], w["y"])
    assert rank.element_predicates(two_gen, (0, 0))["self_cancellative"].holds


def test_predicates_triple():
    p = rank.element_predicates(system(TRIPLE), (1,))
    assert p["hermite"].fails and p["self_cancellative"].holds


def test_window_report_f5(catalog):
    fx = catalog["F5"]
    rep = rank.window_property_report(fx.system, 6)
    assert rep.verdicts["separative"].fails
    verified(fx.system, rep.verdicts["separative"].certificate)


def test_window_components_unit_tail(catalog):
    fx = catalog["F4_5"]
    rep = rank.window_property_report(fx.system, 6)
    classes = rep.to_json()["components_window"]["classes"]
    assert ["0", "b"] in classes
    assert len(classes) == 2


def test_window_report_free_monoid():
    rep = rank.window_property_report(system("gens a b;"), 3)
    # b is not below any multiple of a, so simplicity fails; nothing else may
    assert rep.verdicts["simple"].fails
    for name, v in rep.verdicts.items():
        if name != "simple":
            assert not v.fails, name


vec = st.tuples(st.integers(0, 3), st.integers(0, 3))
rel = st.tuples(vec, vec).filter(lambda r: r[0] != r[1])


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.lists(rel, min_size=1, max_size=2), vec)
def test_every_certificate_verifies(rels, a):
    rs = complete(MonoidPresentation(("a", "b"), tuple(rels)))
    b = rank.sr_bracket(rs, a, 6, nmax=4)
    for c in b.certificates + ([b.infinite] if b.infinite else []):
        verified(rs, c)
    if b.hi is not None and b.infinite is None:
        assert b.lo <= b.hi[0]


@settings(max_examples=25, deadline=None)
@given(st.lists(rel, min_size=1, max_size=2), vec)
def test_finite_inputs_agree_with_exact(rels, a):
    # add pure-power relations so the monoid is finite
    rels = list(rels) + [((3, 0), (1, 0)), ((0, 3), (0, 1))]
    rs = complete(MonoidPresentation(("a", "b"), tuple(rels)))
    F, idx = rank.finite_structure(rs)
    b = rank.sr_bracket(rs, a)
    exact = fin.sr_exact_finite(F, idx[rs.nf(a)]).value
    assert b.exact and b.value == exact
    assert exact in (1, INF)


def _pinned_sr_facts():
    for fid, fx in load_catalog().items():
        for f in fx.facts:
            if f["claim"] == "sr" and f["mode"] == "pinned":
                yield fid, f["element"], f["expected"]


@pytest.mark.parametrize("fid, elem, value", list(_pinned_sr_facts()))
def test_pins_hold_at_default_radius(catalog, fid, elem, value):
    # the catalog radii are minima; the default per-n radius is much wider
    fx = catalog[fid]
    b = rank.sr_bracket(fx.system, fx.element(elem))
    assert b.pinned and b.value == value
