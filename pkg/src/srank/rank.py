"""Stable rank analysis on finitely presented monoids.

Universally quantified conditions are checked on the degree window W_R and
reported three-valued.  Failures are only reported when backed by a
certificate that can be re-checked from normal-form facts:

* W12 -- (n+1)a + beta = a + gamma with na + beta != gamma, so sr(a) > n;
* Refutation -- a homomorphism into a small finite monoid where the required
  element e cannot exist;
* Exhaustive -- the e-search was complete, either because a positive grading
  bounds e or because the monoid is finite;
* PurelyInf -- (k+1)a + z = ka together with evidence that a is not a unit;
* Witness -- a direct normal-form counterexample to a named statement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import finite as fin
from .finite import FiniteMonoid
from .kernel import (Grading, Hom, RewriteSystem, detect_finite, extreme_rays, finite_elements,
                     homs_into, vscale)
from .presentation import Vector, format_element
from .verdict import Verdict, fails, holds, unknown

INF = math.inf


@dataclass(frozen=True)
class Certificate:
    kind: str
    statement: str
    elements: dict[str, Vector]
    params: dict[str, Any] = field(default_factory=dict)
    hom: Hom | None = None
    grading: tuple[int, ...] | None = None
    generators: tuple[str, ...] = field(default=(), compare=False)

    def fmt(self, v: Vector) -> str:
        return format_element(v, self.generators) if self.generators else str(list(v))

    def claim(self) -> str:
        e, p = self.elements, self.params
        a = self.fmt(e["a"]) if "a" in e else ""
        st = self.statement
        if st == "sr_gt":
            return f"sr({a}) >= {p['n'] + 1}"
        if st == "srkl_fails":
            if p["l"] == 1:
                return f"sr({a}) >= {p['k'] + 1}"
            return f"sr_{p['k']},{p['l']}[{a}] fails"
        if st == "srkl_holds":
            if p["l"] == 1:
                return f"sr({a}) <= {p['k']}"
            return f"sr_{p['k']},{p['l']}[{a}] holds"
        if st == "sr_inf":
            return f"sr({a}) = inf"
        if st == "sr_plus_gt":
            return f"sr+({a}) >= {p['m'] + 1}"
        if st == "nonunit":
            return f"{a} is not a unit"
        return f"{st}({a})" if a else st

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "kind": self.kind,
            "statement": self.statement,
            "claim": self.claim(),
            "elements": {k: list(v) for k, v in self.elements.items()},
        }
        if self.params:
            out["params"] = dict(self.params)
        if self.hom is not None:
            out["hom"] = self.hom.to_json()
        if self.grading is not None:
            out["grading"] = list(self.grading)
        return out


# ---------------------------------------------------------------------------
# shared per-system state


def default_radius(rs: RewriteSystem, n: int) -> int:
    return 4 * (rs.presentation.max_relation_degree() + n)


def finite_structure(rs: RewriteSystem) -> tuple[FiniteMonoid, dict[Vector, int]] | None:
    key = ("finite",)
    if key not in rs._cache:
        F = detect_finite(rs, cap=4096)
        if isinstance(F, FiniteMonoid):
            elems = finite_elements(rs)
            rs._cache[key] = (F, {v: i for i, v in enumerate(elems)})
        else:
            rs._cache[key] = None
    return rs._cache[key]


def library_homs(rs: RewriteSystem, max_size: int = 6,
                 extra: Sequence[tuple[str, FiniteMonoid]] = ()) -> list[Hom]:
    key = ("homs", max_size, tuple(name for name, _ in extra))
    homs = rs._cache.get(key)
    if homs is None:
        homs = []
        targets = fin.refutation_library(max_size) + list(extra)
        for name, F in targets:
            for h in homs_into(rs, F, name):
                # maps with every generator sent to zero prove nothing
                if any(img != F.zero for img in h.images):
                    homs.append(h)
        rs._cache[key] = homs
    return homs


def _index(rs: RewriteSystem, shift: Vector, W: Sequence[Vector]) -> dict[Vector, list[Vector]]:
    out: dict[Vector, list[Vector]] = {}
    for y in W:
        out.setdefault(rs.add(shift, y), []).append(y)
    return out


def _cert(rs: RewriteSystem, kind: str, statement: str, elements: dict[str, Vector], **kw: Any) -> Certificate:
    return Certificate(kind, statement, elements, generators=rs.generators, **kw)


# ---------------------------------------------------------------------------
# refutation


def refute(rs: RewriteSystem, a: Vector, k: int, l: int, x: Vector, y: Vector,
           homs: Sequence[Hom] | None = None) -> Certificate | None:
    """Look for a finite image in which no e with ka = la + e, e + x = y exists."""
    if homs is None:
        homs = library_homs(rs)
    ka, la = vscale(k, a), vscale(l, a)
    for h in homs:
        F = h.target
        hka, hla, hx, hy = h(ka), h(la), h(x), h(y)
        if not any(F.add(hla, eps) == hka and F.add(eps, hx) == hy for eps in range(F.n)):
            return _cert(rs, "Refutation", "srkl_fails", {"a": a, "x": x, "y": y},
                         params={"k": k, "l": l}, hom=h)
    return None


def _exact_e_window(rs: RewriteSystem, a: Vector, k: int, l: int, R_e: int) -> tuple[list[Vector], Grading | None]:
    """Candidates e with la + e = ka, and the grading if the list is complete."""
    ka = rs.mul(k, a)
    la = vscale(l, a)
    g = rs.positive_grading
    if g is not None:
        target = g(ka) - g(la)
        complete = R_e >= target // min(g.weights)
        E = [e for e in rs.window(R_e) if g(e) == target and rs.add(la, e) == ka]
        return E, g if complete else None
    return [e for e in rs.window(R_e) if rs.add(la, e) == ka], None


def sr_condition_window(rs: RewriteSystem, a: Vector, n: int, R: int | None = None, R_e: int | None = None,
                        l: int = 1, mode: str = "plain", refinement: bool = False,
                        homs: Sequence[Hom] | None = None) -> Verdict:
    """Windowed verdict for sr_{n,l}[a]; l = 1 is the n-stable rank condition."""
    if n < 1 or l < 1 or l > n:
        raise ValueError("need 1 <= l <= n")
    if mode not in ("plain", "refinement"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "refinement" and not refinement:
        raise ValueError("refinement mode requires refinement to be declared for this monoid")
    if mode == "refinement" and l != 1:
        raise ValueError("refinement mode only applies to l = 1")
    R = default_radius(rs, n) if R is None else R
    R_e = 2 * R if R_e is None else R_e
    if R_e < R:
        raise ValueError("R_e must be >= R")
    a = rs.nf(a)
    fs = finite_structure(rs)
    if fs is not None:
        return _finite_condition(rs, fs, a, n, l)

    ka, la = rs.mul(n, a), vscale(l, a)
    W = rs.window(R)
    by_sum = _index(rs, la, W)
    if mode == "refinement":
        # with refinement the existential reduces to x <= y
        Z = rs.window(R_e)
        E: list[Vector] = Z
        grading = None
    else:
        E, grading = _exact_e_window(rs, a, n, l, R_e)
    candidates = []
    for x in W:
        ex = {rs.add(e, x) for e in E}
        for y in by_sum.get(rs.add(ka, x), ()):
            if y not in ex:
                candidates.append((x, y))
    if not candidates:
        return unknown(R, clean=True, note=f"no counterexample with x, y in W_{R}, e in W_{R_e}")
    for x, y in candidates:
        if mode == "plain" and grading is not None:
            cert = _cert(rs, "Exhaustive", "srkl_fails", {"a": a, "x": x, "y": y},
                         params={"k": n, "l": l}, grading=grading.weights)
        elif mode == "plain":
            cert = refute(rs, a, n, l, x, y, homs)
        else:
            cert = None
        if cert is not None:
            return fails(radius=R, certificate=cert, witness={"x": rs.fmt(x), "y": rs.fmt(y)})
    return unknown(R, clean=False, candidates=tuple(candidates[:16]),
                   note=f"{len(candidates)} uncertified candidate failure(s)")


def _finite_condition(rs: RewriteSystem, fs, a: Vector, n: int, l: int) -> Verdict:
    M, idx = fs
    elems = {i: v for v, i in idx.items()}
    w = fin.sr_condition_failure(M, idx[a], n, l)
    if w is None:
        cert = _cert(rs, "Exhaustive", "srkl_holds", {"a": a}, params={"k": n, "l": l, "finite": True})
        return holds(exhaustive=True, certificate=cert)
    x, y = elems[w[0]], elems[w[1]]
    cert = _cert(rs, "Exhaustive", "srkl_fails", {"a": a, "x": x, "y": y},
                 params={"k": n, "l": l, "finite": True})
    return fails(certificate=cert, witness={"x": rs.fmt(x), "y": rs.fmt(y)}, exhaustive=True)


# ---------------------------------------------------------------------------
# lower bounds and infinite rank


def find_w12(rs: RewriteSystem, a: Vector, n: int, R: int) -> Certificate | None:
    """(n+1)a + beta = a + gamma with na + beta != gamma."""
    a = rs.nf(a)
    W = rs.window(R)
    by_sum = _index(rs, a, W)
    n1a, na = vscale(n + 1, a), vscale(n, a)
    for beta in W:
        lhs = rs.add(na, beta)
        for gamma in by_sum.get(rs.add(n1a, beta), ()):
            if gamma != lhs:
                return _cert(rs, "W12", "sr_gt", {"a": a, "beta": beta, "gamma": gamma}, params={"n": n})
    return None


def certify_sr_lower(rs: RewriteSystem, a: Vector, n: int, R: int | None = None,
                     homs: Sequence[Hom] | None = None) -> Certificate | None:
    """A certificate for sr(a) >= n + 1, or None."""
    R = default_radius(rs, n) if R is None else R
    c = find_w12(rs, a, n, R)
    if c is not None:
        return c
    v = sr_condition_window(rs, a, n, R, homs=homs)
    return v.certificate if v.fails else None


def nonunit_evidence(rs: RewriteSystem, a: Vector, homs: Sequence[Hom] | None = None) -> dict[str, Any] | None:
    a = rs.nf(a)
    if a == rs.zero():
        return None
    g = rs.grading
    if g is not None and g(a) > 0:
        return {"grading": g.weights}
    fs = finite_structure(rs)
    if fs is not None:
        M, idx = fs
        return None if idx[a] in M.units else {"finite": True}
    for h in homs if homs is not None else library_homs(rs):
        if h(a) not in h.target.units:
            return {"hom": h}
    return None


def certify_sr_infinite(rs: RewriteSystem, a: Vector, K: int = 8, R: int | None = None,
                        homs: Sequence[Hom] | None = None) -> Certificate | None:
    """(k+1)a + z = ka for some k <= K, plus proof that a is not a unit."""
    a = rs.nf(a)
    if a == rs.zero():
        return None
    g = rs.grading
    if g is not None and g(a) > 0:
        # a grading strictly increases along multiples of a
        return None
    R = default_radius(rs, 1) if R is None else R
    W = rs.window(R)
    for k in range(1, K + 1):
        ka, k1a = rs.mul(k, a), vscale(k + 1, a)
        for z in W:
            if rs.add(k1a, z) == ka:
                ev = nonunit_evidence(rs, a, homs)
                if ev is None:
                    return None
                hom = ev.get("hom")
                params: dict[str, Any] = {"k": k}
                if ev.get("finite"):
                    params["finite"] = True
                return _cert(rs, "PurelyInf", "sr_inf", {"a": a, "z": z}, params=params, hom=hom,
                             grading=ev.get("grading"))
    return None


# ---------------------------------------------------------------------------
# brackets


@dataclass
class SrBracket:
    element: Vector
    lo: int
    certificates: list[Certificate] = field(default_factory=list)
    infinite: Certificate | None = None
    hi: tuple[int, int] | None = None
    exact: bool = False
    unresolved: list[int] = field(default_factory=list)
    label: str = ""

    @property
    def consistent(self) -> bool:
        if self.infinite is not None:
            return self.hi is None
        return self.hi is None or self.lo <= self.hi[0]

    @property
    def pinned(self) -> bool:
        return self.infinite is not None or (self.hi is not None and self.lo == self.hi[0])

    @property
    def value(self) -> int | float | None:
        if self.infinite is not None:
            return INF
        if self.hi is not None and self.lo == self.hi[0]:
            return self.lo
        return None

    def to_json(self) -> dict[str, Any]:
        return {
            "element": list(self.element),
            "label": self.label,
            "lo": self.lo,
            "hi": None if self.hi is None else {"n": self.hi[0], "radius": self.hi[1]},
            "infinite": None if self.infinite is None else self.infinite.to_json(),
            "exact": self.exact,
            "pinned": self.pinned,
            "consistent": self.consistent,
            "unresolved": list(self.unresolved),
            "certificates": [c.to_json() for c in self.certificates],
        }


def _finite_bracket(rs: RewriteSystem, a: Vector, strong: bool) -> SrBracket:
    M, idx = finite_structure(rs)  # type: ignore[misc]
    ai = idx[a]
    value = fin.sr_plus_exact_finite(M, ai) if strong else fin.sr_exact_finite(M, ai).value
    label = rs.fmt(a)
    if value == INF:
        pinf = fin.purely_infinite_witness(M, ai)
        elems = {i: v for v, i in idx.items()}
        cert = _cert(rs, "PurelyInf", "sr_inf", {"a": a, "z": elems[pinf[1]]},  # type: ignore[index]
                     params={"k": pinf[0], "finite": True})  # type: ignore[index]
        return SrBracket(a, 1, infinite=cert, exact=True, label=label)
    certs = []
    if not strong:
        for n in range(1, int(value)):
            certs.append(_finite_condition(rs, (M, idx), a, n, 1).certificate)
    return SrBracket(a, int(value), certs, hi=(int(value), 0), exact=True, label=label)


def sr_bracket(rs: RewriteSystem, a: Vector, R: int | None = None, nmax: int = 12,
               homs: Sequence[Hom] | None = None) -> SrBracket:
    a = rs.nf(a)
    if finite_structure(rs) is not None:
        return _finite_bracket(rs, a, strong=False)
    label = rs.fmt(a)
    inf = certify_sr_infinite(rs, a, R=R, homs=homs)
    if inf is not None:
        return SrBracket(a, 1, infinite=inf, label=label)
    b = SrBracket(a, 1, label=label)
    for n in range(1, nmax + 1):
        Rn = default_radius(rs, n) if R is None else R
        c = find_w12(rs, a, n, Rn)
        if c is not None:
            b.lo, b.certificates = n + 1, b.certificates + [c]
            continue
        v = sr_condition_window(rs, a, n, Rn, homs=homs)
        if v.fails:
            b.lo, b.certificates = n + 1, b.certificates + [v.certificate]
        elif v.unknown and v.clean:
            b.hi = (n, Rn)
            break
        else:
            b.unresolved.append(n)
    return b


def strong_failure(rs: RewriteSystem, a: Vector, m: int, R: int) -> tuple[Vector, Vector] | None:
    """(x, y) in W_R with ma + x = a + y but (m-1)a + x != y."""
    W = rs.window(R)
    by_sum = _index(rs, a, W)
    ma, m1a = vscale(m, a), vscale(m - 1, a)
    for x in W:
        rhs = rs.add(m1a, x)
        for y in by_sum.get(rs.add(ma, x), ()):
            if y != rhs:
                return x, y
    return None


def sr_plus_bracket(rs: RewriteSystem, a: Vector, R: int | None = None, mmax: int = 13,
                    homs: Sequence[Hom] | None = None) -> SrBracket:
    a = rs.nf(a)
    if finite_structure(rs) is not None:
        return _finite_bracket(rs, a, strong=True)
    label = rs.fmt(a)
    # sr <= sr+, so an infinite stable rank certificate also covers sr+
    inf = certify_sr_infinite(rs, a, R=R, homs=homs)
    if inf is not None:
        return SrBracket(a, 1, infinite=inf, label=label)
    b = SrBracket(a, 1, label=label)
    for m in range(1, mmax + 1):
        Rm = default_radius(rs, m) if R is None else R
        w = strong_failure(rs, a, m, Rm)
        if w is None:
            b.hi = (m, Rm)
            break
        x, y = w
        b.lo = m + 1
        b.certificates.append(_cert(rs, "Witness", "sr_plus_gt", {"a": a, "x": x, "y": y}, params={"m": m}))
    return b


# ---------------------------------------------------------------------------
# (k,l) profile


@dataclass
class KLProfile:
    element: Vector
    verdicts: dict[tuple[int, int], Verdict]
    m_lo: int | None
    m_hi: int | None
    sr: SrBracket
    note: str = ""

    def to_json(self) -> dict[str, Any]:
        return {
            "element": list(self.element),
            "verdicts": {f"{k},{l}": v.to_json() for (k, l), v in sorted(self.verdicts.items())},
            "m_bracket": [self.m_lo, self.m_hi],
            "note": self.note,
        }


def srkl_profile(rs: RewriteSystem, a: Vector, kmax: int, R: int | None = None,
                 homs: Sequence[Hom] | None = None, sr: SrBracket | None = None) -> KLProfile:
    a = rs.nf(a)
    verdicts = {}
    for k in range(1, kmax + 1):
        for l in range(1, k + 1):
            verdicts[(k, l)] = sr_condition_window(rs, a, k, R, l=l, homs=homs)
    sr = sr if sr is not None else sr_bracket(rs, a, R, homs=homs)
    if sr.infinite is not None or sr.hi is None:
        return KLProfile(a, verdicts, None, None, sr, "m is only defined for finite stable rank")
    n = sr.hi[0]
    # sr_{k,l}[a] holds iff k >= sr(a) and k - l >= m; the bounds below use
    # the (empirical) upper end of the stable rank bracket for k >= sr(a)
    m_lo = 0
    m_hi = n - 1
    for (k, l), v in verdicts.items():
        if k < n:
            continue
        if v.fails:
            m_lo = max(m_lo, k - l + 1)
        elif v.holds or (v.unknown and v.clean):
            m_hi = min(m_hi, k - l)
    note = "lower end conditional on sr(a) <= %d; upper end empirical" % n
    if sr.exact:
        note = "exact"
    return KLProfile(a, verdicts, m_lo, m_hi, sr, note)


# ---------------------------------------------------------------------------
# element predicates


def _grade_slice(g: Grading, target: int) -> list[Vector]:
    """Every vector of N^k with the given grade (weights all positive)."""
    out: list[Vector] = []
    w = g.weights

    def rec(i: int, rest: int, acc: list[int]) -> None:
        if i == len(w) - 1:
            if rest % w[i] == 0:
                out.append(tuple(acc + [rest // w[i]]))
            return
        for c in range(rest // w[i] + 1):
            rec(i + 1, rest - c * w[i], acc + [c])

    if target >= 0:
        rec(0, target, [])
    return out


def element_predicates(rs: RewriteSystem, a: Vector, R: int | None = None) -> dict[str, Verdict]:
    a = rs.nf(a)
    R = default_radius(rs, 1) if R is None else R
    fs = finite_structure(rs)
    z = rs.zero()
    out: dict[str, Verdict] = {}
    if fs is not None:
        M, idx = fs
        elems = {i: v for v, i in idx.items()}
        ai = idx[a]
        for name, check, stmt in (("cancellative", fin.is_cancellative_element, "not_cancellative"),
                                  ("hermite", fin.is_hermite, "not_hermite"),
                                  ("self_cancellative", fin.is_self_cancellative, "not_self_cancellative")):
            c = check(M, ai)
            if c:
                cert = _cert(rs, "Exhaustive", name, {"a": a}, params={"finite": True})
                out[name] = holds(exhaustive=True, certificate=cert)
            else:
                names = ("y",) if len(c.witness) == 1 else ("x", "y")
                els = {"a": a, **{k: elems[i] for k, i in zip(names, c.witness)}}
                out[name] = fails(certificate=_cert(rs, "Witness", stmt, els), exhaustive=True,
                                  witness={k: rs.fmt(v) for k, v in els.items()})
        return out

    W = rs.window(R)
    free = not rs.rules
    trivial = a == z or free

    # cancellative: a + x = a + y forces x = y
    by_sum = _index(rs, a, W)
    wit = next(((ys[0], ys[1]) for ys in by_sum.values() if len(ys) > 1), None)
    if wit is not None:
        out["cancellative"] = fails(radius=R, certificate=_cert(rs, "Witness", "not_cancellative",
                                                                  {"a": a, "x": wit[0], "y": wit[1]}))
    elif trivial:
        out["cancellative"] = holds(exhaustive=True, note="forced")
    else:
        out["cancellative"] = unknown(R)

    # Hermite: 2a + x = a + y forces a + x = y
    wit = None
    a2 = vscale(2, a)
    for x in W:
        ax = rs.add(a, x)
        for y in by_sum.get(rs.add(a2, x), ()):
            if y != ax:
                wit = (x, y)
                break
        if wit:
            break
    if wit is not None:
        out["hermite"] = fails(radius=R, certificate=_cert(rs, "Witness", "not_hermite",
                                                             {"a": a, "x": wit[0], "y": wit[1]}))
    elif trivial:
        out["hermite"] = holds(exhaustive=True, note="forced")
    else:
        out["hermite"] = unknown(R)

    # self-cancellative: 2a = a + y forces y = a
    ys = [y for y in by_sum.get(rs.nf(a2), ()) if y != a]
    g = rs.positive_grading
    if ys:
        out["self_cancellative"] = fails(radius=R, certificate=_cert(rs, "Witness", "not_self_cancellative",
                                                                       {"a": a, "y": ys[0]}))
    elif trivial:
        out["self_cancellative"] = holds(exhaustive=True, note="forced")
    elif g is not None:
        # a + y = 2a forces grade(y) = grade(a), a finite set of vectors
        target = rs.nf(a2)
        bad = [y for y in _grade_slice(g, g(a)) if rs.add(a, y) == target and rs.nf(y) != a]
        if bad:
            out["self_cancellative"] = fails(certificate=_cert(rs, "Witness", "not_self_cancellative",
                                                               {"a": a, "y": rs.nf(bad[0])}))
        else:
            out["self_cancellative"] = holds(exhaustive=True, certificate=_cert(
                rs, "Exhaustive", "self_cancellative", {"a": a}, grading=g.weights))
    else:
        out["self_cancellative"] = unknown(R)
    return out


# ---------------------------------------------------------------------------
# global properties on a window


@dataclass
class WindowReport:
    radius: int
    witness_radius: int
    verdicts: dict[str, Verdict]
    components: list[list[Vector]]
    units: list[Vector]
    generators: tuple[str, ...] = ()

    def to_json(self) -> dict[str, Any]:
        f = lambda v: format_element(v, self.generators)  # noqa: E731
        return {
            "radius": self.radius,
            "witness_radius": self.witness_radius,
            "verdicts": {k: v.to_json() for k, v in self.verdicts.items()},
            "units_in_window": [f(u) for u in self.units],
            "components_window": {
                "classes": [[f(v) for v in c] for c in self.components],
                "note": "refinement of the true partition; classes may merge beyond the window",
            },
        }


def _finite_window_report(rs: RewriteSystem, fs) -> WindowReport:
    M, idx = fs
    elems = {i: v for v, i in idx.items()}
    pr = fin.property_report(M)
    sr_ = fin.structure_report(M)
    verdicts = {}
    stmts = {"conical": "not_conical", "stably_finite": "not_stably_finite", "separative": "not_separative",
             "strongly_separative": "not_strongly_separative", "refinement": "no_refinement"}
    for name, stmt in stmts.items():
        c = getattr(pr, name)
        if c:
            verdicts[name] = holds(exhaustive=True, certificate=_cert(rs, "Exhaustive", name, {}, params={"finite": True}))
        else:
            els = {f"w{i}": elems[w] for i, w in enumerate(c.witness)}
            verdicts[name] = fails(exhaustive=True, certificate=_cert(rs, "Exhaustive", stmt, els, params={"finite": True}),
                                   witness={k: rs.fmt(v) for k, v in els.items()})
    verdicts["simple"] = (holds if sr_.simple else fails)(exhaustive=True)
    comps = [[elems[i] for i in c] for c in sr_.components]
    return WindowReport(0, 0, verdicts, comps, [elems[u] for u in sorted(M.units)], rs.generators)


def window_property_report(rs: RewriteSystem, R: int | None = None, R2: int | None = None,
                           kmax: int = 4) -> WindowReport:
    fs = finite_structure(rs)
    if fs is not None:
        return _finite_window_report(rs, fs)
    R = 2 * (rs.presentation.max_relation_degree() + 1) if R is None else R
    R2 = 2 * R if R2 is None else R2
    if R2 < R:
        raise ValueError("witness radius must be >= R")
    W = rs.window(R)
    z = rs.zero()
    g = rs.positive_grading
    verdicts: dict[str, Verdict] = {}

    # below[t] = {x in W_R : x + w = t for some w in W_R2}
    below: dict[Vector, set[Vector]] = {}
    for x in W:
        for w in rs.window(R2):
            below.setdefault(rs.add(x, w), set()).add(x)
    units = [x for x in W if x in below.get(z, ())]

    wit = next(((u, y) for u in units if u != z for y in rs.window(R2) if rs.add(u, y) == z), None)
    if wit is not None:
        verdicts["conical"] = fails(radius=R, certificate=_cert(rs, "Witness", "not_conical", {"x": wit[0], "y": wit[1]}))
    elif g is not None:
        verdicts["conical"] = holds(exhaustive=True, certificate=_cert(rs, "Witness", "positively_graded", {}, grading=g.weights))
    else:
        verdicts["conical"] = unknown(R)

    wit = next(((a, x) for a in W for x in W if x != z and rs.add(a, x) == a), None)
    if wit is not None:
        verdicts["stably_finite"] = fails(radius=R, certificate=_cert(rs, "Witness", "not_stably_finite",
                                                                        {"a": wit[0], "x": wit[1]}))
    elif g is not None:
        verdicts["stably_finite"] = holds(exhaustive=True, certificate=_cert(rs, "Witness", "positively_graded", {},
                                                                             grading=g.weights))
    else:
        verdicts["stably_finite"] = unknown(R)

    doubles = {x: rs.mul(2, x) for x in W}
    sep = strong = None
    for x in W:
        for y in W:
            if x == y:
                continue
            xy = rs.add(x, y)
            if xy == doubles[x]:
                if strong is None:
                    strong = (x, y)
                if xy == doubles[y] and sep is None:
                    sep = (x, y)
        if sep is not None:
            break
    verdicts["separative"] = (fails(radius=R, certificate=_cert(rs, "Witness", "not_separative", {"x": sep[0], "y": sep[1]}))
                              if sep else unknown(R))
    verdicts["strongly_separative"] = (
        fails(radius=R, certificate=_cert(rs, "Witness", "not_strongly_separative", {"x": strong[0], "y": strong[1]}))
        if strong else unknown(R))

    verdicts["refinement"] = _refinement_window(rs, min(R, 6))
    verdicts["simple"] = _simplicity(rs, units)

    # components: mutual <= with multipliers up to kmax
    parent = {x: x for x in W}

    def find(x: Vector) -> Vector:
        while parent[x] != x:
            x = parent[x]
        return x

    for x in W:
        for y in W:
            if find(x) == find(y):
                continue
            up = any(x in below.get(rs.mul(k, y), ()) for k in range(1, kmax + 1))
            down = up and any(y in below.get(rs.mul(k, x), ()) for k in range(1, kmax + 1))
            if up and down:
                rx, ry = find(x), find(y)
                lo, hi = sorted((rx, ry), key=lambda v: W.index(v))
                parent[hi] = lo
    comps: dict[Vector, list[Vector]] = {}
    for x in W:
        comps.setdefault(find(x), []).append(x)
    components = sorted(comps.values(), key=lambda c: W.index(c[0]))
    return WindowReport(R, R2, verdicts, components, units, rs.generators)


def _refinement_window(rs: RewriteSystem, R: int) -> Verdict:
    W = rs.window(R)
    sums: dict[Vector, list[tuple[Vector, Vector]]] = {}
    for p in W:
        for q in W:
            sums.setdefault(rs.add(p, q), []).append((p, q))
    for s, ds in sums.items():
        for x1, x2 in ds:
            for y1, y2 in ds:
                ok = False
                for z11, z12 in sums.get(x1, ()):
                    for z21, z22 in sums.get(x2, ()):
                        if rs.add(z11, z21) == y1 and rs.add(z12, z22) == y2:
                            ok = True
                            break
                    if ok:
                        break
                if not ok:
                    return unknown(R, clean=False, candidates=((x1, x2, y1, y2),),
                                   note="no refinement found inside the window")
    return unknown(R, clean=True)


def _simplicity(rs: RewriteSystem, units: list[Vector]) -> Verdict:
    """Fails when a grading vanishing on a non-unit x is positive on some y."""
    g = rs.grading
    if g is None:
        return unknown(0)
    for ray in extreme_rays(rs.presentation):
        for i in range(rs.k):
            x = rs.nf(rs.presentation.unit(i))
            if g(x) > 0 and sum(r * c for r, c in zip(ray, x)) == 0:
                for j in range(rs.k):
                    y = rs.presentation.unit(j)
                    if ray[j] > 0:
                        cert = _cert(rs, "Witness", "not_simple", {"x": x, "y": rs.nf(y)},
                                     params={"separating": list(ray)}, grading=g.weights)
                        return fails(certificate=cert)
    return unknown(0)

