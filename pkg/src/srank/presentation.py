"""Presentation DSL and Cayley-table documents.

A presentation file looks like::

    # comments run to end of line
    gens a b;
    rel 3 a = a + b;
    rel 4*a = 2b;

Generator order fixes the coordinate order of every exponent vector.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from typing import Any

log = logging.getLogger(__name__)

Vector = tuple[int, ...]


class PresentationError(ValueError):
    """Input error with an optional 1-based source position."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message = message
        self.line = line
        self.col = col
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(f"{message}{where}")


class CayleyError(ValueError):
    pass


@dataclass(frozen=True)
class MonoidPresentation:
    generators: tuple[str, ...]
    relations: tuple[tuple[Vector, Vector], ...]
    name: str = ""
    dropped: tuple[tuple[Vector, Vector], ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        k = len(self.generators)
        if k < 1:
            raise PresentationError("at least one generator is required")
        if len(set(self.generators)) != k or not all(self.generators):
            raise PresentationError("generator identifiers must be unique and nonempty")
        for u, v in self.relations:
            if len(u) != k or len(v) != k:
                raise PresentationError("relation vector length does not match generator count")
            if min(u + v) < 0:
                raise PresentationError("negative coefficient in relation")
            if u == v:
                raise PresentationError("trivial relation u = u must be dropped")

    @property
    def k(self) -> int:
        return len(self.generators)

    def zero(self) -> Vector:
        return (0,) * self.k

    def unit(self, i: int) -> Vector:
        return tuple(int(j == i) for j in range(self.k))

    def max_relation_degree(self) -> int:
        return max((max(sum(u), sum(v)) for u, v in self.relations), default=0)


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>\#[^\n]*)"
    r"|(?P<num>[0-9]+(?:\.[0-9]*)?)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[;=+*-])"
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise PresentationError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("num", "id", "op"):
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, msg: str, tok: _Tok | None = None) -> PresentationError:
        t = tok or self.tok
        return PresentationError(msg, t.line, t.col)

    def expect(self, kind: str, text: str | None = None) -> _Tok:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = repr(text) if text else kind
            got = repr(t.text) if t.text else "end of input"
            raise self.fail(f"expected {want}, got {got}")
        self.i += 1
        return t

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def expr(self, gens: dict[str, int]) -> Vector:
        coords = [0] * len(gens)
        self.term(gens, coords)
        while self.at("op", "+"):
            self.i += 1
            self.term(gens, coords)
        return tuple(coords)

    def term(self, gens: dict[str, int], coords: list[int]) -> None:
        t = self.tok
        if t.kind == "num":
            if "." in t.text:
                raise self.fail("non-integer coefficient", t)
            self.i += 1
            coef = int(t.text)
            if self.at("op", "*"):
                self.i += 1
            elif not self.at("id"):
                if coef == 0:
                    return
                raise self.fail("a bare nonzero integer is not an element", t)
            ident = self.expect("id")
        elif t.kind == "id":
            coef = 1
            ident = self.expect("id")
        elif t.kind == "op" and t.text == "-":
            raise self.fail("negative coefficient", t)
        else:
            got = repr(t.text) if t.text else "end of input"
            raise self.fail(f"expected a term, got {got}", t)
        if ident.text not in gens:
            raise self.fail(f"unknown generator {ident.text!r}", ident)
        coords[gens[ident.text]] += coef


def parse_presentation(text: str, name: str = "") -> MonoidPresentation:
    """Parse a ``.cmon`` document.  Relations with equal sides are dropped."""
    p = _Parser(text)
    p.expect("id", "gens")
    gens: dict[str, int] = {}
    while p.at("id"):
        t = p.tok
        if t.text in gens:
            raise p.fail(f"duplicate generator {t.text!r}")
        if t.text in ("gens", "rel"):
            raise p.fail(f"reserved word {t.text!r} used as generator")
        gens[t.text] = len(gens)
        p.i += 1
    if not gens:
        raise p.fail("expected at least one generator")
    p.expect("op", ";")
    rels: list[tuple[Vector, Vector]] = []
    dropped: list[tuple[Vector, Vector]] = []
    while not p.at("eof"):
        p.expect("id", "rel")
        u = p.expr(gens)
        p.expect("op", "=")
        v = p.expr(gens)
        p.expect("op", ";")
        if u == v:
            log.warning("dropping trivial relation %s = %s", u, v)
            dropped.append((u, v))
        else:
            rels.append((u, v))
    return MonoidPresentation(tuple(gens), tuple(rels), name, tuple(dropped))


def parse_element(text: str, p: MonoidPresentation) -> Vector:
    """Parse ``2a + b``, ``5*a``, ``0`` against the generators of ``p``."""
    parser = _Parser(text)
    gens = {g: i for i, g in enumerate(p.generators)}
    v = parser.expr(gens)
    parser.expect("eof")
    return v


def format_element(v: Vector, generators: tuple[str, ...] | list[str]) -> str:
    terms = []
    for c, g in zip(v, generators):
        if c == 1:
            terms.append(g)
        elif c > 1:
            terms.append(f"{c} {g}")
    return " + ".join(terms) if terms else "0"


def format_presentation(p: MonoidPresentation) -> str:
    lines = ["gens " + " ".join(p.generators) + ";"]
    for u, v in p.relations:
        lines.append(f"rel {format_element(u, p.generators)} = {format_element(v, p.generators)};")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Cayley documents


@dataclass(frozen=True)
class CayleyDocument:
    labels: tuple[str, ...]
    zero: int
    table: tuple[tuple[int, ...], ...]


def parse_cayley(doc: str | dict[str, Any]) -> CayleyDocument:
    """Structural checks only: shape, range, identity, symmetry."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise CayleyError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CayleyError("Cayley document must be a JSON object")
    try:
        labels = [str(x) for x in doc["elements"]]
        zero_label = str(doc["zero"])
        rows = doc["table"]
    except KeyError as exc:
        raise CayleyError(f"missing key {exc.args[0]!r}") from None
    except TypeError:
        raise CayleyError("'elements' must be a list") from None
    n = len(labels)
    if n == 0:
        raise CayleyError("empty element list")
    if len(set(labels)) != n:
        raise CayleyError("duplicate element labels")
    index = {lab: i for i, lab in enumerate(labels)}
    if zero_label not in index:
        raise CayleyError(f"zero {zero_label!r} is not an element")
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise CayleyError("ragged table: expected an n x n matrix")
    table = []
    for i, row in enumerate(rows):
        out = []
        for j, entry in enumerate(row):
            key = str(entry)
            if key not in index:
                raise CayleyError(f"out-of-range entry {entry!r} at ({labels[i]}, {labels[j]})")
            out.append(index[key])
        table.append(tuple(out))
    z = index[zero_label]
    for i in range(n):
        if table[z][i] != i or table[i][z] != i:
            raise CayleyError(f"identity axiom violated at {labels[i]!r}")
    for i in range(n):
        for j in range(i + 1, n):
            if table[i][j] != table[j][i]:
                raise CayleyError(f"asymmetric table at ({labels[i]}, {labels[j]})")
    return CayleyDocument(tuple(labels), z, tuple(table))


def cayley_to_json(doc: CayleyDocument) -> dict[str, Any]:
    return {
        "elements": list(doc.labels),
        "zero": doc.labels[doc.zero],
        "table": [[doc.labels[j] for j in row] for row in doc.table],
    }
