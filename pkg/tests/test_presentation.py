from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from srank.presentation import (
    CayleyError,
    MonoidPresentation,
    PresentationError,
    format_element,
    format_presentation,
    parse_cayley,
    parse_element,
    parse_presentation,
)

from conftest import F6_TABLE, ONE_REL, TWO_GEN_3


def test_two_generator_family():
    p = parse_presentation(TWO_GEN_3)
    assert p.k == 2
    assert set(p.relations) == {((3, 0), (1, 1)), ((4, 0), (0, 2))}


def test_single_relation():
    p = parse_presentation(ONE_REL)
    assert p.relations == (((1, 1), (1, 0)),)


def test_trivial_relation_dropped():
    p = parse_presentation("gens a; rel a = a;")
    assert p.k == 1 and p.relations == ()
    assert p.dropped == (((1,), (1,)),)


def test_comments_and_star_syntax():
    p = parse_presentation("# header\ngens x y;\nrel 2*x + y = 0; # trailing\n")
    assert p.relations == (((2, 1), (0, 0)),)


@pytest.mark.parametrize("text, vec", [("2a + b", (2, 1)), ("0", (0, 0)), ("5 a", (5, 0)), ("a + a", (2, 0))])
def test_parse_element(text, vec):
    assert parse_element(text, parse_presentation(TWO_GEN_3)) == vec


@pytest.mark.parametrize("text", [
    "gens a a;",
    "gens a; rel a = c;",
    "gens a; rel a + = 0;",
    "gens a rel a = 0;",
    "gens ; ",
    "gens a; rel -1 a = 0;",
])
def test_syntax_errors(text):
    with pytest.raises(PresentationError):
        parse_presentation(text)


def test_error_reports_position():
    with pytest.raises(PresentationError) as exc:
        parse_presentation("gens a;\nrel a = c;")
    assert "line 2" in str(exc.value)


def test_element_errors():
    p = parse_presentation(TWO_GEN_3)
    for bad in ("c", "a -", "2", ""):
        with pytest.raises(PresentationError):
            parse_element(bad, p)


@given(st.lists(st.integers(0, 9), min_size=1, max_size=4))
def test_format_round_trip(coeffs):
    gens = tuple("abcd"[: len(coeffs)])
    p = MonoidPresentation(gens, ())
    v = tuple(coeffs)
    assert parse_element(format_element(v, gens), p) == v


def test_presentation_round_trip():
    p = parse_presentation(TWO_GEN_3)
    assert parse_presentation(format_presentation(p)).relations == p.relations


def test_cayley_valid():
    doc = parse_cayley(F6_TABLE)
    assert doc.labels == ("0", "a", "2a") and doc.zero == 0


def test_cayley_trivial():
    assert parse_cayley({"elements": ["0"], "zero": "0", "table": [["0"]]}).labels == ("0",)


@pytest.mark.parametrize("doc, msg", [
    ({"elements": ["0", "a"], "zero": "0", "table": [["0", "0"], ["a", "a"]]}, "identity axiom violated"),
    ({"elements": ["0", "a"], "zero": "0", "table": [["0", "a"]]}, "ragged"),
    ({"elements": ["0", "a"], "zero": "0", "table": [["0", "a"], ["a", "b"]]}, "out-of-range"),
    ({"elements": ["0", "a"], "zero": "z", "table": [["0", "a"], ["a", "a"]]}, "zero"),
    ({"elements": ["0", "a", "b"], "zero": "0",
      "table": [["0", "a", "b"], ["a", "a", "a"], ["b", "b", "b"]]}, "asymmetric"),
    ("{not json", "malformed"),
    ({"elements": ["0"]}, "missing"),
])
def test_cayley_errors(doc, msg):
    with pytest.raises(CayleyError, match=msg):
        parse_cayley(doc)
