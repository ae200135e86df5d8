"""Fixture catalog and the theorem suites run over it."""

from __future__ import annotations

import json
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

from . import finite as fin
from .finite import FiniteMonoid
from .kernel import RewriteSystem, complete, detect_finite
from .presentation import MonoidPresentation, Vector, parse_cayley, parse_element, parse_presentation
from .rank import (INF, SrBracket, element_predicates, sr_bracket, sr_plus_bracket, srkl_profile,
                   window_property_report)
from .verify import verify_report

SET_RADIUS = 8


class SuiteContradiction(AssertionError):
    """A certificate contradicts a declared value."""

    def __init__(self, message: str, dump: dict[str, Any]):
        self.dump = dump
        super().__init__(message + "\n" + json.dumps(dump, indent=2, sort_keys=True, default=str))


@dataclass
class Fixture:
    id: str
    presentation: MonoidPresentation
    facts: list[dict[str, Any]]
    profiles: list[dict[str, Any]] = field(default_factory=list)
    radius: int | None = None
    refinement: bool = False
    separative: bool = False
    table: dict[str, Any] | None = None
    description: str = ""

    @property
    def system(self) -> RewriteSystem:
        rs = getattr(self, "_rs", None)
        if rs is None:
            rs = complete(self.presentation)
            self._rs = rs
        return rs

    def element(self, text: str) -> Vector:
        return self.system.nf(parse_element(text, self.presentation))


def fixture_dir():
    return resources.files("srank") / "fixtures"


def load_catalog() -> dict[str, Fixture]:
    root = fixture_dir()
    data = json.loads((root / "catalog.json").read_text())
    out = {}
    for entry in data["fixtures"]:
        text = (root / entry["file"]).read_text()
        p = parse_presentation(text, entry["id"])
        table = json.loads((root / entry["table"]).read_text()) if entry.get("table") else None
        out[entry["id"]] = Fixture(entry["id"], p, entry["facts"], entry.get("profiles", []), entry.get("radius"),
                                   entry.get("refinement", False), entry.get("separative", False), table,
                                   entry.get("description", ""))
    return out


def _value_json(v: int | float | None) -> Any:
    if v is None:
        return None
    return "inf" if v == INF else int(v)


def _expected(v: Any) -> int | float:
    return INF if v == "inf" else int(v)


class _Run:
    """Per-fixture evaluation with memoized brackets."""

    def __init__(self, fx: Fixture):
        self.fx = fx
        self.rs = fx.system
        self._sr: dict[Vector, SrBracket] = {}
        self._srp: dict[Vector, SrBracket] = {}
        self._pred: dict[Vector, dict] = {}
        self._window = None

    def sr(self, v: Vector) -> SrBracket:
        if v not in self._sr:
            self._sr[v] = sr_bracket(self.rs, v, self.fx.radius)
        return self._sr[v]

    def srp(self, v: Vector) -> SrBracket:
        if v not in self._srp:
            self._srp[v] = sr_plus_bracket(self.rs, v, self.fx.radius)
        return self._srp[v]

    def pred(self, v: Vector) -> dict:
        if v not in self._pred:
            self._pred[v] = element_predicates(self.rs, v, self.fx.radius)
        return self._pred[v]

    def window(self):
        if self._window is None:
            self._window = window_property_report(self.rs)
        return self._window


def _bracket_status(b: SrBracket, expected: int | float, mode: str, dump: dict[str, Any]) -> tuple[str, str]:
    if expected != INF and b.infinite is not None:
        raise SuiteContradiction(f"infinite rank certified for {b.label}, declared {expected}", dump)
    if b.lo > expected:
        raise SuiteContradiction(f"lower bound {b.lo} certified for {b.label}, declared {expected}", dump)
    if mode in ("infinite", "exact") and expected == INF:
        return ("pass", "") if b.infinite is not None else ("missing", "no infinite-rank certificate")
    if mode == "exact":
        return ("pass", "") if b.exact and b.value == expected else ("fail", "exact value differs")
    if b.hi is None:
        return "missing", "no clean window at any n"
    if b.hi[0] < expected:
        return "fail", f"condition already clean at n = {b.hi[0]}"
    if mode == "empirical":
        return ("pass", "") if b.hi[0] == expected else ("missing", "empirical upper end above the declared value")
    missing = []
    if b.lo < expected:
        missing.append("certified lower end")
    if b.hi[0] > expected:
        missing.append("empirical upper end")
    return ("pass", "") if not missing else ("missing", " and ".join(missing) + " not reached")


def _check_fact(run: _Run, fact: dict[str, Any]) -> dict[str, Any]:
    rs = run.rs
    claim = fact["claim"]
    out: dict[str, Any] = {"claim": claim, "anchor": fact["anchor"]}
    status, detail = "pass", ""
    if claim in ("sr", "sr_plus"):
        v = run.fx.element(fact["element"])
        b = run.sr(v) if claim == "sr" else run.srp(v)
        out.update(element=fact["element"], expected=fact["expected"], mode=fact["mode"], bracket=b.to_json())
        status, detail = _bracket_status(b, _expected(fact["expected"]), fact["mode"], out)
    elif claim == "sr_set":
        units = set(run.window().units) if fact["scope"] == "nonunit" else {rs.zero()}
        elems = [v for v in rs.window(SET_RADIUS) if v not in units]
        values = {}
        undetermined = []
        for v in elems:
            b = run.sr(v)
            if b.pinned:
                values[rs.fmt(v)] = _value_json(b.value)
            else:
                undetermined.append(rs.fmt(v))
        observed = sorted({x for x in values.values()}, key=lambda x: math.inf if x == "inf" else x)
        out.update(expected=fact["expected"], observed=observed, scope=fact["scope"], radius=SET_RADIUS,
                   values=values, undetermined=undetermined)
        if undetermined:
            status, detail = "missing", f"{len(undetermined)} element(s) not pinned"
        elif observed != fact["expected"]:
            status, detail = "fail", "value set differs"
    elif claim == "sr_equal":
        x, y = (run.fx.element(e) for e in fact["elements"])
        bx, by = run.sr(x), run.sr(y)
        out.update(elements=fact["elements"], values=[_value_json(bx.value), _value_json(by.value)])
        if not (bx.pinned and by.pinned):
            status, detail = "missing", "values not pinned"
        elif bx.value != by.value:
            status, detail = "fail", "values differ"
    elif claim == "predicate":
        v = run.fx.element(fact["element"])
        verdict = run.pred(v)[fact["name"]]
        out.update(element=fact["element"], name=fact["name"], expected=fact["expected"], verdict=verdict.to_json())
        status, detail = _verdict_status(verdict, fact["expected"])
    elif claim == "property":
        verdict = run.window().verdicts[fact["name"]]
        out.update(name=fact["name"], expected=fact["expected"], verdict=verdict.to_json())
        status, detail = _verdict_status(verdict, fact["expected"])
    elif claim == "eq":
        x, y = (run.fx.element(e) for e in fact["elements"])
        observed = x == y
        out.update(elements=fact["elements"], expected=fact["expected"], observed=observed)
        if observed != fact["expected"]:
            status, detail = "fail", "normal forms disagree with the declared equality"
    elif claim == "units":
        units = run.window().units
        out.update(expected=fact["expected"], observed=[rs.fmt(u) for u in units])
        if len(units) != fact["expected"]:
            status, detail = "fail", "unit count in the window differs"
    elif claim == "component":
        members = sorted(run.fx.element(e) for e in fact["members"])
        comps = [sorted(c) for c in run.window().components]
        out.update(members=fact["members"])
        if members not in comps:
            status, detail = "fail", "no window component with exactly these members"
    elif claim == "m_bracket":
        v = run.fx.element(fact["element"])
        prof = srkl_profile(rs, v, fact["kmax"], run.fx.radius, sr=run.sr(v))
        out.update(element=fact["element"], expected=fact["expected"], observed=[prof.m_lo, prof.m_hi],
                   profile=prof.to_json())
        if [prof.m_lo, prof.m_hi] != fact["expected"]:
            status, detail = "fail", "bracket for m differs"
    elif claim == "interval":
        a = run.fx.element(fact["element"])
        l = fact["l"]
        ba, bl = run.sr(a), run.sr(rs.mul(l, a))
        out.update(element=fact["element"], l=l)
        if not (ba.pinned and bl.pinned) or ba.value == INF or bl.value == INF:
            status, detail = "missing", "values not pinned"
        else:
            n, p = ba.value, bl.value
            out["values"] = [n, p]
            if not (l * p - 2 * l + 2 <= n <= l * p):
                status, detail = "fail", "interval bound violated"
    else:
        raise ValueError(f"unknown claim {claim!r}")
    out["status"] = status
    if detail:
        out["detail"] = detail
    return out


def _verdict_status(verdict, expected: bool) -> tuple[str, str]:
    if expected and verdict.fails:
        return "fail", "certified counterexample"
    if not expected and verdict.holds:
        return "fail", "holds exhaustively"
    if expected == verdict.holds or (not expected and verdict.fails):
        return "pass", ""
    return "missing", "no certified verdict"


# ---------------------------------------------------------------------------
# multiples


def multiples_profile(fx: Fixture, a: Vector, lmax: int, run: _Run | None = None,
                      hermite_from: int | None = None, not_self_cancellative_at: tuple[int, ...] = ()) -> dict[str, Any]:
    """Brackets for la, l = 1..lmax, and the theorem assertions they allow."""
    run = run or _Run(fx)
    rs = fx.system
    rows = {}
    for l in range(1, lmax + 1):
        v = rs.mul(l, a)
        rows[l] = (run.sr(v), run.srp(v), run.pred(v))
    asserts: list[dict[str, Any]] = []

    def check(name: str, ok: bool, detail: str = "") -> None:
        asserts.append({"name": name, "passed": bool(ok), "detail": detail})

    pinned = {l: b.value for l, (b, _, _) in rows.items() if b.pinned}
    for k in pinned:
        for l in pinned:
            if k < l:
                check(f"monotone({k},{l})", pinned[k] >= pinned[l], f"sr({k}a)={pinned[k]}, sr({l}a)={pinned[l]}")
    for k in rows:
        for l in rows:
            bk, bl = rows[k][0], rows[l][0]
            if k < l and bk.hi and bl.hi:
                check(f"monotone_window({k},{l})", bl.hi[0] <= bk.hi[0])
    n = pinned.get(1)
    if n is not None and n != INF:
        for l, p in pinned.items():
            lo_f, hi_f = 1 + (n - 1) // l, 1 + -(-(n - 1) // l)
            check(f"bracket_formula(l={l})", lo_f <= p <= hi_f, f"{lo_f} <= {p} <= {hi_f}")
            if (n - 1) % l == 0:
                check(f"divisible(l={l})", p == 1 + (n - 1) // l)
            if fx.refinement:
                check(f"refinement_equality(l={l})", p == hi_f)
            check(f"interval(l={l})", l * p - 2 * l + 2 <= n <= l * p)
        if hermite_from is not None:
            for k in range(hermite_from, lmax + 1):
                check(f"hermite_multiple(k={k})", not rows[k][2]["hermite"].fails)
        for k in not_self_cancellative_at:
            if k in rows:
                check(f"not_self_cancellative(k={k})", rows[k][2]["self_cancellative"].fails)
    for l, (b, bp, preds) in rows.items():
        if b.pinned and bp.pinned:
            s, sp = b.value, bp.value
            check(f"strong_vs_weak(l={l})", s <= sp <= s + 1, f"sr={s}, sr+={sp}")
        if preds["cancellative"].holds:
            check(f"hermite_chain(l={l})", not preds["hermite"].fails)
    # subadditivity on la = a + (l-1)a
    for l in range(2, lmax + 1):
        if l in pinned and 1 in pinned and (l - 1) in pinned:
            check(f"subadditive(l={l})", pinned[l] <= max(pinned[1], pinned[l - 1]))
    if fx.separative:
        for l, v in pinned.items():
            check(f"separative_trichotomy(l={l})", v in (1, 2, INF))
    return {
        "element": rs.fmt(a),
        "rows": {str(l): {"sr": b.to_json(), "sr_plus": bp.to_json(),
                          "predicates": {k: v.to_json() for k, v in p.items()}}
                 for l, (b, bp, p) in rows.items()},
        "pinned": {str(l): _value_json(v) for l, v in pinned.items()},
        "assertions": asserts,
    }


def run_fixture(fx: Fixture) -> dict[str, Any]:
    run = _Run(fx)
    rs = fx.system
    facts = [_check_fact(run, f) for f in fx.facts]
    profiles = []
    for prof in fx.profiles:
        a = fx.element(prof["element"])
        profiles.append(multiples_profile(fx, a, prof["lmax"], run, prof.get("hermite_from"),
                                          tuple(prof.get("not_self_cancellative_at", ()))))
    extra = []
    if fx.table is not None:
        F = fin.validate(parse_cayley(fx.table))
        D = detect_finite(rs)
        same = isinstance(D, FiniteMonoid) and _isomorphic_by_labels(F, D)
        extra.append({"name": "table_matches_presentation", "passed": same, "detail": ""})
    # rank consistency on every evaluated element
    for v, b in sorted(run._sr.items()):
        if v in run._srp and b.pinned and run._srp[v].pinned:
            s, sp = b.value, run._srp[v].value
            extra.append({"name": f"strong_vs_weak({rs.fmt(v)})", "passed": s <= sp <= s + 1, "detail": ""})
        extra.append({"name": f"bracket_consistent({rs.fmt(v)})", "passed": b.consistent, "detail": ""})
    report = {
        "id": fx.id,
        "description": fx.description,
        "system": rs.to_json(),
        "radius": fx.radius,
        "facts": facts,
        "profiles": profiles,
        "assertions": extra,
    }
    return report


def _isomorphic_by_labels(F: FiniteMonoid, D: FiniteMonoid) -> bool:
    # labels differ only in spacing ("2a" versus "2 a")
    norm = lambda s: s.replace(" ", "")  # noqa: E731
    if sorted(map(norm, F.labels)) != sorted(map(norm, D.labels)):
        return False
    pos = {norm(l): i for i, l in enumerate(D.labels)}
    m = [pos[norm(l)] for l in F.labels]
    return all(m[F.add(x, y)] == D.add(m[x], m[y]) for x in range(F.n) for y in range(F.n))


# ---------------------------------------------------------------------------
# finite laws


def random_finite_monoid(rng: random.Random, max_size: int = 8, tries: int = 200) -> FiniteMonoid:
    """A random finite monoid given by a presentation whose generators all have finite orbits."""
    for _ in range(tries):
        k = rng.randint(1, 3)
        rels = []
        for i in range(k):
            idx, per = rng.randint(0, 3), rng.randint(1, 3)
            u = tuple((idx + per) if j == i else 0 for j in range(k))
            v = tuple(idx if j == i else 0 for j in range(k))
            rels.append((u, v))
        for _ in range(rng.randint(0, 2)):
            u = tuple(rng.randint(0, 2) for _ in range(k))
            v = tuple(rng.randint(0, 2) for _ in range(k))
            if u != v:
                rels.append((u, v))
        gens = tuple("abc"[:k])
        F = detect_finite(complete(MonoidPresentation(gens, tuple(rels))), cap=max_size)
        if isinstance(F, FiniteMonoid):
            return F
    raise RuntimeError("could not draw a small finite monoid")


def finite_laws(count: int, seed: int = 0, max_size: int = 8) -> dict[str, Any]:
    rng = random.Random(seed)
    failures: list[dict[str, Any]] = []
    checked = 0
    for i in range(count):
        M = random_finite_monoid(rng, max_size)
        checked += 1
        problems = finite_law_violations(M)
        if problems:
            failures.append({"monoid": M.to_json(), "problems": problems})
    return {"count": checked, "seed": seed, "failures": failures, "passed": not failures}


def finite_law_violations(M: FiniteMonoid) -> list[str]:
    out = []
    for a in range(M.n):
        v = fin.sr_exact_finite(M, a).value
        if (v == 1) != (a in M.units) or v not in (1, INF):
            out.append(f"sr({M.labels[a]}) = {v}")
    try:
        pr = fin.property_report(M)
    except fin.CharacterizationMismatch as exc:
        return out + [str(exc)]
    if bool(fin.separative_c(M)) != bool(pr.separative):
        out.append("separativity (c) disagrees")
    if bool(fin.strongly_separative_c(M)) != bool(pr.strongly_separative):
        out.append("strong separativity (c) disagrees")
    for I in fin.all_o_ideals(M):
        q = fin.quotient(M, "o_ideal", I)
        for a in range(M.n):
            if fin.sr_exact_finite(q.monoid, q.projection[a]).value > fin.sr_exact_finite(M, a).value:
                out.append(f"o-ideal quotient raised sr({M.labels[a]})")
    for kind, params in (("max_antisym", None), ("power_some", [2]), ("power_all", [2, 3])):
        fin.quotient(M, kind, params)
    return out


# ---------------------------------------------------------------------------
# suite


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("SRANK_THREADS", "1")))
    except ValueError:
        return 1


def paper_suite(fixture: str | None = None, radii: dict[str, int] | None = None,
                finite_count: int = 50, seed: int = 0) -> dict[str, Any]:
    """Run the catalog; abort on any certificate contradicting a declared value."""
    catalog = load_catalog()
    if fixture is not None:
        if fixture not in catalog:
            raise KeyError(f"unknown fixture {fixture!r}")
        catalog = {fixture: catalog[fixture]}
    for fid, r in (radii or {}).items():
        if fid in catalog:
            catalog[fid].radius = r
    fixtures = list(catalog.values())
    workers = min(_workers(), len(fixtures))
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            reports = list(ex.map(run_fixture, fixtures))
    else:
        reports = [run_fixture(fx) for fx in fixtures]
    audited = 0
    rejected: list[str] = []
    for rep in reports:
        try:
            audited += len(verify_report(json.loads(json.dumps(rep))))
        except Exception as exc:  # the audit must never be skipped silently
            rejected.append(f"{rep['id']}: {exc}")
    laws = finite_laws(finite_count, seed) if fixture is None and finite_count else None
    counts = {"pass": 0, "fail": 0, "missing": 0}
    for rep in reports:
        for f in rep["facts"]:
            counts[f["status"]] += 1
    failed_assertions = [f"{rep['id']}:{a['name']}" for rep in reports
                         for a in rep["assertions"] + [x for p in rep["profiles"] for x in p["assertions"]]
                         if not a["passed"]]
    passed = (counts["fail"] == 0 and counts["missing"] == 0 and not failed_assertions and not rejected
              and (laws is None or laws["passed"]))
    return {
        "fixtures": reports,
        "finite_laws": laws,
        "audit": {"certificates": audited, "rejected": rejected},
        "summary": {"facts": counts, "failed_assertions": failed_assertions, "passed": passed},
    }
