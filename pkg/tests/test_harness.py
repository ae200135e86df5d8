from __future__ import annotations

import json
import random

import pytest

from srank import finite as fin
from srank.harness import (
    SuiteContradiction,
    finite_law_violations,
    load_catalog,
    multiples_profile,
    paper_suite,
    random_finite_monoid,
    run_fixture,
)


@pytest.fixture(scope="module")
def catalog():
    return load_catalog()


def test_catalog_contents(catalog):
    assert set(catalog) == {"F1", "F2_3", "F2_5", "F2_7", "F3", "F4_5", "F5", "F6", "F7"}
    for fx in catalog.values():
        assert fx.radius is not None and fx.radius >= 1
        assert fx.facts
        assert all(f.get("anchor") for f in fx.facts)
        assert fx.system.confluent


def test_profile_two_generator_five(catalog):
    fx = catalog["F2_5"]
    prof = multiples_profile(fx, fx.element("a"), 4)
    assert {k: prof["pinned"][k] for k in ("1", "2", "4")} == {"1": 5, "2": 3, "4": 2}
    assert all(a["passed"] for a in prof["assertions"])
    names = {a["name"] for a in prof["assertions"]}
    assert {"divisible(l=2)", "divisible(l=4)", "bracket_formula(l=3)"} <= names


def test_profile_single_relation(catalog):
    fx = catalog["F3"]
    prof = multiples_profile(fx, fx.element("a"), 3)
    assert prof["pinned"] == {"1": 2, "2": 2, "3": 2}
    assert any(a["name"].startswith("refinement_equality") for a in prof["assertions"])
    assert all(a["passed"] for a in prof["assertions"])


def test_contradiction_aborts():
    fx = load_catalog()["F2_5"]
    fx.facts = [{"claim": "sr", "element": "a", "expected": 3, "mode": "pinned", "anchor": "test"}]
    fx.profiles = []
    with pytest.raises(SuiteContradiction) as exc:
        run_fixture(fx)
    assert "lower bound 5" in str(exc.value)
    assert exc.value.dump["bracket"]["lo"] == 5


def test_too_small_radius_reports_missing():
    fx = load_catalog()["F2_7"]
    fx.radius = 2
    fx.profiles = []
    rep = run_fixture(fx)
    statuses = {f["claim"]: f["status"] for f in rep["facts"]}
    assert "missing" in statuses.values()


def test_fixture_filter():
    rep = paper_suite("F6")
    assert [f["id"] for f in rep["fixtures"]] == ["F6"]
    assert rep["summary"]["passed"]
    with pytest.raises(KeyError):
        paper_suite("nope")


def test_deterministic():
    a = json.dumps(paper_suite("F5"), sort_keys=True)
    b = json.dumps(paper_suite("F5"), sort_keys=True)
    assert a == b


def test_parallel_matches_serial(monkeypatch):
    serial = json.dumps(paper_suite(finite_count=0), sort_keys=True)
    monkeypatch.setenv("SRANK_THREADS", "3")
    parallel = json.dumps(paper_suite(finite_count=0), sort_keys=True)
    assert serial == parallel


def test_random_monoids_are_valid():
    rng = random.Random(5)
    for _ in range(20):
        M = random_finite_monoid(rng)
        assert 1 <= M.n <= 8
        fin.validate(M.to_document())
        assert finite_law_violations(M) == []
