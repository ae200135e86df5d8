"""Exact decision procedures on finite commutative monoids given by a table."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Sequence

from .presentation import CayleyDocument, parse_cayley

INF = math.inf


class MonoidAxiomError(ValueError):
    def __init__(self, message: str, counterexample: tuple[str, ...] = ()):
        self.counterexample = counterexample
        super().__init__(message)


@dataclass(frozen=True)
class FiniteMonoid:
    labels: tuple[str, ...]
    zero: int
    table: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    def add(self, x: int, y: int) -> int:
        return self.table[x][y]

    def mul(self, k: int, x: int) -> int:
        """k·x for k >= 0, by doubling."""
        acc, base = self.zero, x
        while k:
            if k & 1:
                acc = self.table[acc][base]
            base = self.table[base][base]
            k >>= 1
        return acc

    def sum(self, xs: Iterable[int]) -> int:
        acc = self.zero
        for x in xs:
            acc = self.table[acc][x]
        return acc

    def index_of(self, label: str) -> int:
        return self.labels.index(label)

    @cached_property
    def units(self) -> frozenset[int]:
        z = self.zero
        return frozenset(x for x in range(self.n) if z in self.table[x])

    @cached_property
    def _up(self) -> tuple[frozenset[int], ...]:
        # x <= y  iff  y in x + M
        return tuple(frozenset(row) for row in self.table)

    def leq(self, x: int, y: int) -> bool:
        return y in self._up[x]

    def orbit(self, x: int) -> tuple[int, int]:
        """(index, period) of the sequence x, 2x, 3x, ... (index >= 1)."""
        seen: dict[int, int] = {}
        k, cur = 1, x
        while cur not in seen:
            seen[cur] = k
            k += 1
            cur = self.table[cur][x]
        return seen[cur], k - seen[cur]

    @cached_property
    def orbit_bound(self) -> tuple[int, int]:
        """(max index, lcm of periods) over all elements."""
        idx, per = 1, 1
        for x in range(self.n):
            i, p = self.orbit(x)
            idx = max(idx, i)
            per = per * p // math.gcd(per, p)
        return idx, per

    def ideal(self, x: int) -> frozenset[int]:
        """The o-ideal <x> = {y : y <= kx for some k >= 1}."""
        i, p = self.orbit(x)
        mults = {self.mul(k, x) for k in range(1, i + p)}
        return frozenset(y for y in range(self.n) if any(self.leq(y, m) for m in mults))

    def to_document(self) -> CayleyDocument:
        return CayleyDocument(self.labels, self.zero, self.table)

    def to_json(self) -> dict[str, Any]:
        return {
            "elements": list(self.labels),
            "zero": self.labels[self.zero],
            "table": [[self.labels[j] for j in row] for row in self.table],
        }


def validate(doc: CayleyDocument | str | dict) -> FiniteMonoid:
    """Check identity, commutativity and associativity exhaustively."""
    if not isinstance(doc, CayleyDocument):
        doc = parse_cayley(doc)
    t, lab, n = doc.table, doc.labels, len(doc.labels)
    for x in range(n):
        if t[doc.zero][x] != x or t[x][doc.zero] != x:
            raise MonoidAxiomError("identity axiom violated", (lab[x],))
        for y in range(n):
            if t[x][y] != t[y][x]:
                raise MonoidAxiomError("commutativity violated", (lab[x], lab[y]))
    for x in range(n):
        tx = t[x]
        for y in range(n):
            xy = tx[y]
            for z in range(n):
                if t[xy][z] != tx[t[y][z]]:
                    raise MonoidAxiomError(f"associativity violated: ({lab[x]}+{lab[y]})+{lab[z]} != {lab[x]}+({lab[y]}+{lab[z]})", (lab[x], lab[y], lab[z]))
    return FiniteMonoid(doc.labels, doc.zero, doc.table)


def from_function(labels: Sequence[str], op, zero: int = 0) -> FiniteMonoid:
    n = len(labels)
    table = tuple(tuple(op(i, j) for j in range(n)) for i in range(n))
    return validate(CayleyDocument(tuple(labels), zero, table))


# ---------------------------------------------------------------------------
# small monoids used as refutation targets


def cyclic(index: int, period: int) -> FiniteMonoid:
    """{0, x, ..., (index+period-1)x} with (index+period)x = index·x."""
    size = index + period

    def red(k: int) -> int:
        return k if k < size else index + (k - index) % period

    labels = [("0" if k == 0 else "x" if k == 1 else f"{k}x") for k in range(size)]
    if period == 1 and index >= 1:
        labels[-1] = "inf"
    return from_function(labels, lambda i, j: red(i + j))


def group_with_absorber(m: int) -> FiniteMonoid:
    labels = [str(k) for k in range(m)] + ["inf"]
    return from_function(labels, lambda i, j: m if m in (i, j) else (i + j) % m)


def product(A: FiniteMonoid, B: FiniteMonoid) -> FiniteMonoid:
    pairs = list(itertools.product(range(A.n), range(B.n)))
    pos = {p: i for i, p in enumerate(pairs)}
    labels = [f"({A.labels[a]},{B.labels[b]})" for a, b in pairs]

    def op(i: int, j: int) -> int:
        (a1, b1), (a2, b2) = pairs[i], pairs[j]
        return pos[(A.add(a1, a2), B.add(b1, b2))]

    return from_function(labels, op, pos[(A.zero, B.zero)])


def refutation_library(max_size: int = 6) -> list[tuple[str, FiniteMonoid]]:
    """Small absorbing-style monoids searched when refuting an existential."""
    lib: list[tuple[str, FiniteMonoid]] = []
    for size in range(2, max_size + 1):
        for index in range(0, size):
            period = size - index
            lib.append((f"C({index},{period})", cyclic(index, period)))
    for m in range(2, max_size):
        lib.append((f"Z/{m}+inf", group_with_absorber(m)))
    small = [("C(1,1)", cyclic(1, 1)), ("C(2,1)", cyclic(2, 1)), ("Z/2", cyclic(0, 2))]
    for (na, A), (nb, B) in itertools.combinations_with_replacement(small, 2):
        if A.n * B.n <= max_size:
            lib.append((f"{na}x{nb}", product(A, B)))
    return lib


# ---------------------------------------------------------------------------
# element-wise and global properties


@dataclass
class Check:
    value: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.value

    def to_json(self, M: FiniteMonoid) -> dict[str, Any]:
        out: dict[str, Any] = {"value": self.value}
        if self.witness is not None:
            out["witness"] = [M.labels[w] if isinstance(w, int) else w for w in self.witness]
        return out


def _first(it: Iterable[tuple]) -> Check:
    for w in it:
        return Check(False, w)
    return Check(True)


def is_conical(M: FiniteMonoid) -> Check:
    return _first((x, y) for x in range(M.n) for y in range(M.n)
                  if M.add(x, y) == M.zero and x != M.zero)


def is_stably_finite(M: FiniteMonoid) -> Check:
    return _first((a, x) for a in range(M.n) for x in range(M.n)
                  if M.add(a, x) == a and x != M.zero)


def separative_a(M: FiniteMonoid) -> Check:
    return _first((x, y) for x in range(M.n) for y in range(M.n)
                  if x != y and M.add(x, x) == M.add(x, y) == M.add(y, y))


def separative_b(M: FiniteMonoid) -> Check:
    return _first((x, y) for x in range(M.n) for y in range(M.n)
                  if x != y and M.mul(2, x) == M.mul(2, y) and M.mul(3, x) == M.mul(3, y))


def separative_c(M: FiniteMonoid) -> Check:
    bound = M.n + 1
    return _first((x, y, k) for x in range(M.n) for y in range(M.n) for k in range(1, bound + 1)
                  if x != y and M.mul(k, x) == M.mul(k, y) and M.mul(k + 1, x) == M.mul(k + 1, y))


def separative_d(M: FiniteMonoid) -> Check:
    ideals = [M.ideal(x) for x in range(M.n)]
    return _first((x, y, z) for x in range(M.n) for y in range(M.n) if x != y
                  for z in ideals[x] & ideals[y] if M.add(x, z) == M.add(y, z))


def strongly_separative_a(M: FiniteMonoid) -> Check:
    return _first((x, y) for x in range(M.n) for y in range(M.n)
                  if x != y and M.add(x, x) == M.add(x, y))


def strongly_separative_b(M: FiniteMonoid) -> Check:
    # k·x is periodic after at most n+1 steps
    bound = M.n + 1
    return _first((x, y, k) for x in range(M.n) for y in range(M.n) if x != y
                  for k in range(1, bound + 1) if M.mul(k + 1, x) == M.add(M.mul(k, x), y))


def strongly_separative_c(M: FiniteMonoid) -> Check:
    ideals = [M.ideal(x) for x in range(M.n)]
    return _first((x, y, z) for x in range(M.n) for y in range(M.n) if x != y
                  for z in ideals[x] if M.add(x, z) == M.add(y, z))


def strongly_separative_d(M: FiniteMonoid) -> Check:
    return _first((x, y, z) for x in range(M.n) for y in range(M.n) for z in range(M.n)
                  if M.add(M.add(x, z), z) == M.add(y, z) and M.add(x, z) != y)


def has_refinement(M: FiniteMonoid) -> Check:
    n, t = M.n, M.table
    decomp: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for p in range(n):
        for q in range(n):
            decomp[t[p][q]].append((p, q))
    # minus[s][p] = {q : p + q = s}
    minus = [[[] for _ in range(n)] for _ in range(n)]
    for p in range(n):
        for q in range(n):
            minus[t[p][q]][p].append(q)
    seen: set[tuple[int, int, int, int]] = set()
    for s in range(n):
        ds = decomp[s]
        for x1, x2 in ds:
            for y1, y2 in ds:
                key = (x1, x2, y1, y2)
                if key in seen:
                    continue
                seen.add(key)
                # the grid transposes onto the swapped equation as well
                seen.add((y1, y2, x1, x2))
                if not _refines(t, decomp, minus, x1, x2, y1, y2):
                    return Check(False, (x1, x2, y1, y2))
    return Check(True)


def _refines(t, decomp, minus, x1, x2, y1, y2) -> bool:
    for z11, z12 in decomp[x1]:
        for z21 in minus[y1][z11]:
            for z22 in minus[x2][z21]:
                if t[z12][z22] == y2:
                    return True
    return False


def irreducibles(M: FiniteMonoid) -> list[int]:
    U = M.units
    out = []
    for a in range(M.n):
        if a in U:
            continue
        if all(b in U or c in U for b in range(M.n) for c in range(M.n) if M.add(b, c) == a):
            out.append(a)
    return out


@dataclass
class PropertyReport:
    units: list[int]
    conical: Check
    stably_finite: Check
    separative: Check
    strongly_separative: Check
    refinement: Check
    irreducibles: list[int]
    separative_characterizations: dict[str, Check] = field(default_factory=dict)
    strong_characterizations: dict[str, Check] = field(default_factory=dict)

    def to_json(self, M: FiniteMonoid) -> dict[str, Any]:
        return {
            "units": [M.labels[u] for u in self.units],
            "conical": self.conical.to_json(M),
            "stably_finite": self.stably_finite.to_json(M),
            "separative": self.separative.to_json(M),
            "strongly_separative": self.strongly_separative.to_json(M),
            "refinement": self.refinement.to_json(M),
            "irreducibles": [M.labels[a] for a in self.irreducibles],
        }


class CharacterizationMismatch(AssertionError):
    pass


def property_report(M: FiniteMonoid) -> PropertyReport:
    sep = {"a": separative_a(M), "b": separative_b(M), "d": separative_d(M)}
    strong = {"a": strongly_separative_a(M), "b": strongly_separative_b(M), "d": strongly_separative_d(M)}
    for name, group in (("separativity", sep), ("strong separativity", strong)):
        if len({bool(c) for c in group.values()}) != 1:
            raise CharacterizationMismatch(f"{name} characterizations disagree: {group}")
    return PropertyReport(
        units=sorted(M.units),
        conical=is_conical(M),
        stably_finite=is_stably_finite(M),
        separative=sep["a"],
        strongly_separative=strong["a"],
        refinement=has_refinement(M),
        irreducibles=irreducibles(M),
        separative_characterizations=sep,
        strong_characterizations=strong,
    )


# ---------------------------------------------------------------------------
# o-ideals, components, simplicity


def is_o_ideal(M: FiniteMonoid, S: Iterable[int]) -> bool:
    S = set(S)
    if M.zero not in S:
        return False
    if any(M.add(x, y) not in S for x in S for y in S):
        return False
    return all(x in S for y in S for x in range(M.n) if M.leq(x, y))


def o_ideal_generated(M: FiniteMonoid, S: Iterable[int]) -> frozenset[int]:
    out: set[int] = set(M.ideal(M.zero))
    for x in S:
        out |= M.ideal(x)
    # a sum of ideal members is below a multiple of the sum of generators
    changed = True
    while changed:
        changed = False
        for x, y in list(itertools.product(out, repeat=2)):
            s = M.add(x, y)
            if s not in out:
                out |= {z for z in range(M.n) if M.leq(z, s)}
                changed = True
    return frozenset(out)


def all_o_ideals(M: FiniteMonoid) -> list[frozenset[int]]:
    found = {o_ideal_generated(M, ())}
    frontier = list(found)
    while frontier:
        nxt = []
        for I in frontier:
            for x in range(M.n):
                if x not in I:
                    J = o_ideal_generated(M, set(I) | {x})
                    if J not in found:
                        found.add(J)
                        nxt.append(J)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


@dataclass
class StructureReport:
    ideals: dict[int, frozenset[int]]
    components: list[list[int]]
    simple: bool

    def to_json(self, M: FiniteMonoid) -> dict[str, Any]:
        return {
            "ideals": {M.labels[x]: sorted(M.labels[y] for y in I) for x, I in self.ideals.items()},
            "components": [[M.labels[x] for x in c] for c in self.components],
            "simple": self.simple,
        }


def structure_report(M: FiniteMonoid) -> StructureReport:
    ideals = {x: M.ideal(x) for x in range(M.n)}
    comps: dict[frozenset[int], list[int]] = {}
    for x in range(M.n):
        comps.setdefault(ideals[x], []).append(x)
    components = sorted(comps.values(), key=lambda c: c[0])
    is_group = len(M.units) == M.n
    simple = not is_group and all(len(ideals[x]) == M.n for x in range(M.n) if x not in M.units)
    return StructureReport(ideals, components, simple)


def archimedean_components(M: FiniteMonoid) -> list[list[int]]:
    return structure_report(M).components


# ---------------------------------------------------------------------------
# congruences and quotients


class Congruence:
    """Union-find partition of element indices; classes keyed by least member."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx < ry:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry
        return True

    def same(self, x: int, y: int) -> bool:
        return self.find(x) == self.find(y)

    def classes(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return sorted(out.values(), key=lambda c: c[0])

    def rep(self, x: int) -> int:
        # least member; find() keeps the least index as root
        return self.find(x)

    def merge_closed(self, M: FiniteMonoid, pairs: Iterable[tuple[int, int]]) -> None:
        """Merge the pairs and re-close under translation by every element."""
        work = list(pairs)
        while work:
            x, y = work.pop()
            if self.union(x, y):
                for z in range(M.n):
                    work.append((M.add(x, z), M.add(y, z)))

    def is_congruence(self, M: FiniteMonoid) -> bool:
        return all(self.same(M.add(x, z), M.add(y, z))
                   for cls in self.classes() for x in cls for y in cls for z in range(M.n))

    @classmethod
    def from_relation(cls, M: FiniteMonoid, rel) -> "Congruence":
        c = cls(M.n)
        for x in range(M.n):
            for y in range(x + 1, M.n):
                if rel(x, y):
                    c.union(x, y)
        return c

    def key(self) -> tuple[int, ...]:
        return tuple(self.find(x) for x in range(len(self.parent)))


@dataclass
class Quotient:
    monoid: FiniteMonoid
    projection: tuple[int, ...]
    congruence: Congruence
    kind: str


class QuotientError(ValueError):
    pass


def quotient_by(M: FiniteMonoid, cong: Congruence, kind: str = "congruence") -> Quotient:
    classes = cong.classes()
    pos = {}
    for i, c in enumerate(classes):
        for x in c:
            pos[x] = i
    table = []
    for ci in classes:
        row = []
        for cj in classes:
            images = {pos[M.add(x, y)] for x in ci for y in cj}
            if len(images) != 1:
                raise QuotientError("relation is not compatible with addition")
            row.append(images.pop())
        table.append(tuple(row))
    labels = tuple("[" + M.labels[c[0]] + "]" for c in classes)
    Q = validate(CayleyDocument(labels, pos[M.zero], tuple(table)))
    return Quotient(Q, tuple(pos[x] for x in range(M.n)), cong, kind)


def _power_some_relation(M: FiniteMonoid, S: Sequence[int]):
    if not S or any(s < 1 for s in S):
        raise QuotientError("S must be a nonempty set of positive integers")
    index, period = M.orbit_bound
    # m ranges over positive multiples of the generators of S; beyond
    # index + period multiples the pair (m·u, m·v) is periodic
    ms = sorted({j * s for s in S for j in range(1, index + period + 1)})
    return lambda u, v: any(M.mul(m, u) == M.mul(m, v) for m in ms)


def _power_all_relation(M: FiniteMonoid, S: Sequence[int]):
    if not S:
        raise QuotientError("S must be nonempty")
    if any(s < 2 for s in S):
        raise QuotientError("S must be a subset of the integers >= 2")
    return lambda u, v: all(M.mul(m, u) == M.mul(m, v) for m in S)


def defining_relation(M: FiniteMonoid, kind: str, params: Any = None):
    if kind == "o_ideal":
        I = set(params)
        if not is_o_ideal(M, I):
            raise QuotientError("parameter set is not an o-ideal")
        sums = [[M.add(x, a) for a in I] for x in range(M.n)]
        return lambda x, y: bool(set(sums[x]) & set(sums[y]))
    if kind == "max_antisym":
        return lambda x, y: M.leq(x, y) and M.leq(y, x)
    if kind == "power_some":
        return _power_some_relation(M, list(params))
    if kind == "power_all":
        return _power_all_relation(M, list(params))
    raise QuotientError(f"unknown quotient kind {kind!r}")


def quotient(M: FiniteMonoid, kind: str, params: Any = None) -> Quotient:
    """Quotient by one of the four congruences; the result is re-verified."""
    rel = defining_relation(M, kind, params)
    cong = Congruence.from_relation(M, rel)
    for cls in cong.classes():
        for x in cls:
            if not all(rel(x, y) for y in cls):
                raise QuotientError(f"{kind} relation is not transitive on this monoid")
    if not cong.is_congruence(M):
        raise QuotientError(f"{kind} relation is not a congruence on this monoid")
    q = quotient_by(M, cong, kind)
    check_quotient(M, q, kind, params)
    return q


def check_quotient(M: FiniteMonoid, q: Quotient, kind: str, params: Any = None) -> None:
    """Projection is a surjective homomorphism and related pairs are identified."""
    pi, Q = q.projection, q.monoid
    if set(pi) != set(range(Q.n)):
        raise QuotientError("projection is not surjective")
    if pi[M.zero] != Q.zero:
        raise QuotientError("projection does not preserve zero")
    for x in range(M.n):
        for y in range(M.n):
            if pi[M.add(x, y)] != Q.add(pi[x], pi[y]):
                raise QuotientError("projection is not additive")
    rel = defining_relation(M, kind, params)
    for x in range(M.n):
        for y in range(M.n):
            if rel(x, y) and pi[x] != pi[y]:
                raise QuotientError("a related pair survives in the quotient")
    if kind == "o_ideal" and any(pi[a] != Q.zero for a in params):
        raise QuotientError("the o-ideal does not collapse to zero")


# ---------------------------------------------------------------------------
# stable rank on finite monoids


def sr_condition_failure(M: FiniteMonoid, a: int, n: int, l: int = 1) -> tuple[int, int] | None:
    """A pair (x, y) violating the (n, l) stable rank condition, or None."""
    na, la = M.mul(n, a), M.mul(l, a)
    E = [e for e in range(M.n) if M.add(la, e) == na]
    for x in range(M.n):
        s = M.add(na, x)
        for y in range(M.n):
            if M.add(la, y) == s and not any(M.add(e, x) == y for e in E):
                return x, y
    return None


def strong_condition_failure(M: FiniteMonoid, a: int, m: int) -> tuple[int, int] | None:
    ma, m1a = M.mul(m, a), M.mul(m - 1, a)
    for x in range(M.n):
        s = M.add(ma, x)
        for y in range(M.n):
            if M.add(a, y) == s and M.add(m1a, x) != y:
                return x, y
    return None


def purely_infinite_witness(M: FiniteMonoid, a: int) -> tuple[int, int] | None:
    """(k, z) with (k+1)a + z = ka, k >= 1."""
    index, period = M.orbit(a)
    for k in range(1, index + period + 1):
        ka, k1a = M.mul(k, a), M.mul(k + 1, a)
        for z in range(M.n):
            if M.add(k1a, z) == ka:
                return k, z
    return None


def is_hermite(M: FiniteMonoid, a: int) -> Check:
    a2 = M.add(a, a)
    return _first((x, y) for x in range(M.n) for y in range(M.n)
                  if M.add(a2, x) == M.add(a, y) and M.add(a, x) != y)


def is_self_cancellative(M: FiniteMonoid, a: int) -> Check:
    a2 = M.add(a, a)
    return _first((y,) for y in range(M.n) if M.add(a, y) == a2 and y != a)


def is_cancellative_element(M: FiniteMonoid, a: int) -> Check:
    return _first((x, y) for x in range(M.n) for y in range(x + 1, M.n) if M.add(a, x) == M.add(a, y))


@dataclass
class FiniteRank:
    value: int | float
    hermite: Check
    self_cancellative: Check
    failures: dict[int, tuple[int, int]]
    purely_infinite: tuple[int, int] | None = None

    def to_json(self, M: FiniteMonoid) -> dict[str, Any]:
        return {
            "sr": "inf" if self.value == INF else self.value,
            "hermite": self.hermite.to_json(M),
            "self_cancellative": self.self_cancellative.to_json(M),
            "failures": {str(n): [M.labels[x], M.labels[y]] for n, (x, y) in self.failures.items()},
            "purely_infinite": None if self.purely_infinite is None
            else {"k": self.purely_infinite[0], "z": M.labels[self.purely_infinite[1]]},
        }


def sr_exact_finite(M: FiniteMonoid, a: int) -> FiniteRank:
    failures: dict[int, tuple[int, int]] = {}
    n = 1
    value: int | float
    pinf = None
    while True:
        w = sr_condition_failure(M, a, n)
        if w is None:
            value = n
            break
        failures[n] = w
        if a not in M.units:
            pinf = purely_infinite_witness(M, a)
            if pinf is not None:
                value = INF
                break
        n += 1
    return FiniteRank(value, is_hermite(M, a), is_self_cancellative(M, a), failures, pinf)


def sr_plus_exact_finite(M: FiniteMonoid, a: int) -> int | float:
    m = 1
    while True:
        if strong_condition_failure(M, a, m) is None:
            return m
        if a not in M.units and purely_infinite_witness(M, a) is not None:
            # the strong condition at m implies the ordinary one at m
            return INF
        m += 1


def _sr_plus_violation(M: FiniteMonoid, cong: Congruence, b: int, m: int) -> tuple[int, int] | None:
    mb, m1b = M.mul(m, b), M.mul(m - 1, b)
    reps = [c[0] for c in cong.classes()]
    for x in reps:
        lhs = cong.find(M.add(mb, x))
        for y in reps:
            if cong.find(M.add(b, y)) == lhs and not cong.same(M.add(m1b, x), y):
                return M.add(m1b, x), y
    return None


def sr_plus_condition_holds(M: FiniteMonoid, cong: Congruence, targets: Sequence[tuple[int, int]]) -> bool:
    return all(_sr_plus_violation(M, cong, b, m) is None for b, m in targets)


def smallest_sr_plus_congruence(M: FiniteMonoid, targets: Sequence[tuple[int, int]]) -> Congruence:
    """Least congruence whose quotient gives each target b strong stable rank <= m."""
    if any(m < 1 for _, m in targets):
        raise ValueError("bounds must be >= 1")
    cong = Congruence(M.n)
    while True:
        for b, m in targets:
            v = _sr_plus_violation(M, cong, b, m)
            if v is not None:
                cong.merge_closed(M, [v])
                break
        else:
            return cong
