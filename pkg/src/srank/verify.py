"""Independent re-checking of emitted certificates.

Works from the JSON form only: a system section (generators, relations,
rules) and a certificate.  Nothing here calls the completion or search code;
reduction, monoid axioms and the existential searches are reimplemented in
the simplest possible way.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Any, Sequence

Vec = tuple[int, ...]


class VerificationError(Exception):
    pass


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise VerificationError(msg)


def _key(v: Vec) -> tuple:
    return (sum(v), v)


def _plus(*vs: Sequence[int]) -> Vec:
    return tuple(sum(c) for c in zip(*vs))


def _times(k: int, v: Sequence[int]) -> Vec:
    return tuple(k * c for c in v)


class System:
    """A rule set checked to be a convergent presentation of the relations."""

    def __init__(self, data: dict[str, Any], derivation_cap: int = 200_000):
        self.generators = list(data["generators"])
        self.k = len(self.generators)
        self.relations = [(tuple(u), tuple(v)) for u, v in data["relations"]]
        self.rules = [(tuple(l), tuple(r)) for l, r in data["rules"]]
        self._nf: dict[Vec, Vec] = {}
        self._check(derivation_cap)

    def step(self, v: Vec) -> Vec | None:
        for l, r in self.rules:
            if all(a <= b for a, b in zip(l, v)):
                return tuple(b - a + c for a, b, c in zip(l, v, r))
        return None

    def nf(self, v: Sequence[int]) -> Vec:
        v = tuple(v)
        start = v
        if start in self._nf:
            return self._nf[start]
        while True:
            w = self.step(v)
            if w is None:
                break
            v = w
        self._nf[start] = v
        return v

    def _check(self, cap: int) -> None:
        for l, r in self.rules:
            _require(len(l) == self.k and len(r) == self.k, "rule length mismatch")
            _require(_key(l) > _key(r), f"rule {l} -> {r} is not decreasing")
        for (l1, r1), (l2, r2) in itertools.combinations(self.rules, 2):
            m = tuple(max(a, b) for a, b in zip(l1, l2))
            s = tuple(x - a + b for x, a, b in zip(m, l1, r1))
            t = tuple(x - a + b for x, a, b in zip(m, l2, r2))
            _require(self.nf(s) == self.nf(t), f"critical pair of {l1} and {l2} does not join")
        for u, v in self.relations:
            _require(self.nf(u) == self.nf(v), f"relation {u} = {v} is not respected by the rules")
        bound = max([sum(x) for rel in self.relations + self.rules for x in rel] + [0])
        for l, r in self.rules:
            _require(self._derivable(l, r, 2 * bound, cap),
                     f"rule {l} -> {r} could not be derived from the relations")

    def _derivable(self, s: Vec, t: Vec, degree_bound: int, cap: int) -> bool:
        """Bidirectional BFS along single relation applications."""
        moves = self.relations + [(v, u) for u, v in self.relations]
        sides = [{s: 0}, {t: 0}]
        queues = [deque([s]), deque([t])]
        if s == t:
            return True
        seen = 2
        while queues[0] and queues[1]:
            i = 0 if len(queues[0]) <= len(queues[1]) else 1
            for _ in range(len(queues[i])):
                v = queues[i].popleft()
                for u, w in moves:
                    if all(a <= b for a, b in zip(u, v)):
                        nxt = tuple(b - a + c for a, b, c in zip(u, v, w))
                        if sum(nxt) > degree_bound or nxt in sides[i]:
                            continue
                        if nxt in sides[1 - i]:
                            return True
                        sides[i][nxt] = 0
                        queues[i].append(nxt)
                        seen += 1
                        if seen > cap:
                            return False
        return False

    def eq(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.nf(u) == self.nf(v)

    def finite_carrier(self) -> list[Vec] | None:
        """All irreducible vectors if there are finitely many, else None."""
        bounds = []
        for i in range(self.k):
            pure = [l[i] for l, _ in self.rules if l[i] and sum(l) == l[i]]
            if not pure:
                return None
            bounds.append(min(pure))
        out = [v for v in itertools.product(*(range(b) for b in bounds)) if self.step(v) is None]
        return out


class Table:
    def __init__(self, data: dict[str, Any]):
        self.labels = [str(x) for x in data["elements"]]
        idx = {lab: i for i, lab in enumerate(self.labels)}
        self.zero = idx[str(data["zero"])]
        self.t = [[idx[str(c)] for c in row] for row in data["table"]]
        n = len(self.labels)
        _require(all(len(row) == n for row in self.t), "target table is not square")
        for x in range(n):
            _require(self.t[self.zero][x] == x and self.t[x][self.zero] == x, "target identity fails")
            for y in range(n):
                _require(self.t[x][y] == self.t[y][x], "target is not commutative")
                for z in range(n):
                    _require(self.t[self.t[x][y]][z] == self.t[x][self.t[y][z]], "target is not associative")
        self.idx = idx
        self.n = n

    def image(self, images: list[int], v: Sequence[int]) -> int:
        acc = self.zero
        for c, g in zip(v, images):
            for _ in range(c):
                acc = self.t[acc][g]
        return acc


def _hom(system: System, data: dict[str, Any]) -> tuple[Table, list[int]]:
    T = Table(data["target"])
    assignment = data["assignment"]
    _require(set(assignment) == set(system.generators), "assignment does not cover the generators")
    images = [T.idx[str(assignment[g])] for g in system.generators]
    for u, v in system.relations:
        _require(T.image(images, u) == T.image(images, v), "assignment does not respect a relation")
    return T, images


def _grading(system: System, w: Sequence[int]) -> list[int]:
    w = list(w)
    _require(len(w) == system.k and min(w) >= 0, "malformed grading")
    for u, v in system.relations:
        _require(sum(a * c for a, c in zip(u, w)) == sum(a * c for a, c in zip(v, w)), "grading is not invariant")
    return w


def _grade_slice(w: list[int], target: int) -> list[Vec]:
    out: list[Vec] = []
    if target < 0:
        return out
    ranges = [range(target // c + 1) for c in w]
    for v in itertools.product(*ranges):
        if sum(a * c for a, c in zip(v, w)) == target:
            out.append(v)
    return out


def _nonunit(system: System, a: Vec, cert: dict[str, Any]) -> None:
    zero = (0,) * system.k
    if cert.get("grading") is not None:
        w = _grading(system, cert["grading"])
        _require(sum(x * c for x, c in zip(a, w)) > 0, "grading does not separate a from the units")
    elif cert.get("hom") is not None:
        T, images = _hom(system, cert["hom"])
        ha = T.image(images, a)
        _require(all(T.t[ha][t] != T.zero for t in range(T.n)), "image of a is a unit in the target")
    elif cert.get("params", {}).get("finite"):
        carrier = system.finite_carrier()
        _require(carrier is not None, "carrier is not finite")
        _require(all(system.nf(_plus(a, t)) != zero for t in carrier), "a is a unit")
    else:
        raise VerificationError("no evidence that a is not a unit")


def _e_candidates(system: System, cert: dict[str, Any], a: Vec, k: int, l: int) -> list[Vec]:
    if cert.get("params", {}).get("finite"):
        carrier = system.finite_carrier()
        _require(carrier is not None, "carrier is not finite")
        return carrier
    w = cert.get("grading")
    _require(w is not None, "exhaustive certificate without a bound")
    w = _grading(system, w)
    _require(min(w) > 0, "grading is not strictly positive")
    ga = sum(x * c for x, c in zip(a, w))
    return _grade_slice(w, (k - l) * ga)


def _finite_check(system: System, statement: str) -> None:
    M = system.finite_carrier()
    _require(M is not None, "carrier is not finite")
    add = lambda x, y: system.nf(_plus(x, y))  # noqa: E731
    if statement == "conical":
        _require(all(add(x, y) != (0,) * system.k or x == (0,) * system.k for x in M for y in M), "not conical")
    elif statement == "stably_finite":
        _require(all(add(a, x) != a or x == (0,) * system.k for a in M for x in M), "not stably finite")
    elif statement == "separative":
        _require(all(x == y or not (add(x, x) == add(x, y) == add(y, y)) for x in M for y in M), "not separative")
    elif statement == "strongly_separative":
        _require(all(x == y or add(x, x) != add(x, y) for x in M for y in M), "not strongly separative")
    elif statement == "refinement":
        for x1, x2, y1, y2 in itertools.product(M, repeat=4):
            if add(x1, x2) != add(y1, y2):
                continue
            _require(any(add(z11, z12) == x1 and add(z21, z22) == x2 and add(z11, z21) == y1 and add(z12, z22) == y2
                         for z11, z12, z21, z22 in itertools.product(M, repeat=4)), "refinement fails")
    else:
        raise VerificationError(f"unknown finite statement {statement!r}")


def _finite_refuted(system: System, statement: str, els: list[Vec]) -> None:
    add = lambda *vs: system.nf(_plus(*vs))  # noqa: E731
    z = (0,) * system.k
    if statement == "not_conical":
        x, y = els
        _require(add(x, y) == z and system.nf(x) != z, "not a conicality counterexample")
    elif statement == "not_stably_finite":
        a, x = els
        _require(add(a, x) == system.nf(a) and system.nf(x) != z, "not a stable finiteness counterexample")
    elif statement == "not_separative":
        x, y = els
        _require(add(x, x) == add(x, y) == add(y, y) and system.nf(x) != system.nf(y), "not a separativity counterexample")
    elif statement == "not_strongly_separative":
        x, y = els
        _require(add(x, x) == add(x, y) and system.nf(x) != system.nf(y), "not a strong separativity counterexample")
    elif statement == "no_refinement":
        M = system.finite_carrier()
        _require(M is not None, "carrier is not finite")
        x1, x2, y1, y2 = els
        _require(add(x1, x2) == add(y1, y2), "not an equation")
        _require(not any(add(z11, z12) == system.nf(x1) and add(z21, z22) == system.nf(x2)
                         and add(z11, z21) == system.nf(y1) and add(z12, z22) == system.nf(y2)
                         for z11, z12, z21, z22 in itertools.product(M, repeat=4)), "a refinement exists")
    else:
        raise VerificationError(f"unknown statement {statement!r}")


def _fmt(v: Sequence[int], gens: Sequence[str]) -> str:
    terms = [g if c == 1 else f"{c} {g}" for c, g in zip(v, gens) if c]
    return " + ".join(terms) if terms else "0"


def _claim_text(system: System, st: str, els: dict[str, Vec], p: dict[str, Any]) -> str:
    a = _fmt(els["a"], system.generators) if "a" in els else ""
    if st == "sr_gt":
        return f"sr({a}) >= {p['n'] + 1}"
    if st in ("srkl_fails", "srkl_holds"):
        k, l = p["k"], p["l"]
        if l == 1:
            return f"sr({a}) >= {k + 1}" if st == "srkl_fails" else f"sr({a}) <= {k}"
        return f"sr_{k},{l}[{a}] {'fails' if st == 'srkl_fails' else 'holds'}"
    if st == "sr_inf":
        return f"sr({a}) = inf"
    if st == "sr_plus_gt":
        return f"sr+({a}) >= {p['m'] + 1}"
    if st == "nonunit":
        return f"{a} is not a unit"
    return f"{st}({a})" if a else st


def verify_certificate(system: System, cert: dict[str, Any]) -> str:
    """Re-check one certificate; returns its claim or raises VerificationError.

    The claim is rebuilt from the checked statement, so a certificate whose
    recorded claim text says more than was proved is rejected.
    """
    try:
        st = _check(system, cert)
        els = {k: tuple(v) for k, v in cert.get("elements", {}).items()}
        claim = _claim_text(system, st, els, cert.get("params", {}))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise VerificationError(f"malformed certificate: {exc!r}") from exc
    if "claim" in cert:
        _require(cert["claim"] == claim, f"recorded claim {cert['claim']!r} does not match {claim!r}")
    return claim


def _check(system: System, cert: dict[str, Any]) -> str:
    kind, st = cert["kind"], cert["statement"]
    els = {k: tuple(v) for k, v in cert.get("elements", {}).items()}
    p = cert.get("params", {})
    nf, eq = system.nf, system.eq
    a = els.get("a")

    if kind == "W12":
        _require(st == "sr_gt", "W12 certificates prove sr_gt only")
        n = p["n"]
        _require(eq(_plus(_times(n + 1, a), els["beta"]), _plus(a, els["gamma"])), "W12 equation fails")
        _require(not eq(_plus(_times(n, a), els["beta"]), els["gamma"]), "W12 inequality fails")
        return st

    if kind == "Refutation":
        _require(st == "srkl_fails", "refutations prove srkl_fails only")
        k, l = p["k"], p["l"]
        x, y = els["x"], els["y"]
        _require(eq(_plus(_times(k, a), x), _plus(_times(l, a), y)), "hypothesis equation fails")
        T, images = _hom(system, cert["hom"])
        hk, hl = T.image(images, _times(k, a)), T.image(images, _times(l, a))
        hx, hy = T.image(images, x), T.image(images, y)
        _require(not any(T.t[hl][e] == hk and T.t[e][hx] == hy for e in range(T.n)), "an e exists in the target")
        return st

    if kind == "Exhaustive":
        if st == "srkl_fails":
            k, l = p["k"], p["l"]
            x, y = els["x"], els["y"]
            _require(eq(_plus(_times(k, a), x), _plus(_times(l, a), y)), "hypothesis equation fails")
            ka, ny = nf(_times(k, a)), nf(y)
            for e in _e_candidates(system, cert, a, k, l):
                _require(not (nf(_plus(_times(l, a), e)) == ka and nf(_plus(e, x)) == ny), "an e exists")
            return st
        if st == "srkl_holds":
            k, l = p["k"], p["l"]
            M = system.finite_carrier()
            _require(M is not None and p.get("finite"), "universal claim on an infinite carrier")
            ka, la = nf(_times(k, a)), _times(l, a)
            E = [e for e in M if nf(_plus(la, e)) == ka]
            for x in M:
                for y in M:
                    if nf(_plus(ka, x)) == nf(_plus(la, y)):
                        _require(any(nf(_plus(e, x)) == y for e in E), "condition fails")
            return st
        if st in ("cancellative", "hermite", "self_cancellative") and p.get("finite"):
            M = system.finite_carrier()
            _require(M is not None, "carrier is not finite")
            add = lambda *vs: nf(_plus(*vs))  # noqa: E731
            if st == "cancellative":
                _require(all(add(a, x) != add(a, y) for x in M for y in M if x != y), "not cancellative")
            elif st == "hermite":
                _require(all(add(a, x) == y for x in M for y in M if add(a, a, x) == add(a, y)), "not Hermite")
            else:
                _require(all(y == nf(a) for y in M if add(a, y) == add(a, a)), "not self-cancellative")
            return st
        if st == "self_cancellative":
            w = _grading(system, cert["grading"])
            _require(min(w) > 0, "grading is not strictly positive")
            target = nf(_times(2, a))
            for y in _grade_slice(w, sum(x * c for x, c in zip(a, w))):
                if nf(_plus(a, y)) == target:
                    _require(nf(y) == nf(a), "not self-cancellative")
            return st
        if p.get("finite"):
            if st.startswith("not_") or st == "no_refinement":
                _finite_refuted(system, st, [els[k] for k in sorted(els)])
            else:
                _finite_check(system, st)
            return st
        raise VerificationError(f"unknown exhaustive statement {st!r}")

    if kind == "PurelyInf":
        _require(st == "sr_inf", "PurelyInf certificates prove sr_inf only")
        k = p["k"]
        _require(eq(_plus(_times(k + 1, a), els["z"]), _times(k, a)), "collapse equation fails")
        _nonunit(system, a, cert)
        return st

    if kind == "Witness":
        z = (0,) * system.k
        if st == "sr_plus_gt":
            m = p["m"]
            x, y = els["x"], els["y"]
            _require(eq(_plus(_times(m, a), x), _plus(a, y)), "hypothesis equation fails")
            _require(not eq(_plus(_times(m - 1, a), x), y), "conclusion holds")
            return st
        if st == "not_cancellative":
            _require(eq(_plus(a, els["x"]), _plus(a, els["y"])) and not eq(els["x"], els["y"]), "not a witness")
            return st
        if st == "not_hermite":
            x, y = els["x"], els["y"]
            _require(eq(_plus(a, a, x), _plus(a, y)) and not eq(_plus(a, x), y), "not a witness")
            return st
        if st == "not_self_cancellative":
            _require(eq(_plus(a, a), _plus(a, els["y"])) and not eq(a, els["y"]), "not a witness")
            return st
        if st in ("not_conical", "not_stably_finite", "not_separative", "not_strongly_separative"):
            order = {"not_conical": ("x", "y"), "not_stably_finite": ("a", "x"),
                     "not_separative": ("x", "y"), "not_strongly_separative": ("x", "y")}[st]
            _finite_refuted(system, st, [els[k] for k in order])
            return st
        if st == "positively_graded":
            w = _grading(system, cert["grading"])
            _require(min(w) > 0, "grading is not strictly positive")
            # u + v = 0 or a + x = a forces the grade of the summand to vanish
            _require(nf(z) == z, "zero is reducible")
            return st
        if st == "not_simple":
            w = _grading(system, cert["grading"])
            sep = _grading(system, p["separating"])
            x, y = els["x"], els["y"]
            dot = lambda v, c: sum(s * t for s, t in zip(v, c))  # noqa: E731
            _require(dot(x, w) > 0, "x is not shown to be a non-unit")
            _require(dot(x, sep) == 0 and dot(y, sep) > 0, "grading does not separate y from multiples of x")
            return st
        raise VerificationError(f"unknown witness statement {st!r}")

    raise VerificationError(f"unknown certificate kind {kind!r}")


def verify_report(report: dict[str, Any]) -> list[str]:
    """Verify every certificate found anywhere inside a JSON report."""
    claims: list[str] = []
    systems: dict[str, System] = {}

    def walk(node: Any, system: System | None) -> None:
        if isinstance(node, dict):
            if "system" in node and isinstance(node["system"], dict) and "rules" in node["system"]:
                key = repr(node["system"])
                if key not in systems:
                    systems[key] = System(node["system"])
                system = systems[key]
            if "kind" in node and "statement" in node:
                if system is None:
                    raise VerificationError("certificate outside any system section")
                claims.append(verify_certificate(system, node))
            for v in node.values():
                walk(v, system)
        elif isinstance(node, list):
            for v in node:
                walk(v, system)

    walk(report, None)
    return claims
