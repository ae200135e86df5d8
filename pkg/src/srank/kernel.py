"""Word problem for finitely presented commutative monoids.

Completion of the relation set into a confluent rewrite system over exponent
vectors, normal forms, degree windows, finiteness detection, gradings and
homomorphisms into finite monoids.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable, Mapping, Sequence

from .finite import FiniteMonoid
from .presentation import MonoidPresentation, Vector, format_element
from .verdict import Verdict, fails, holds, unknown

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 100_000

Rule = tuple[Vector, Vector]


def order_key(v: Vector) -> tuple[int, Vector]:
    """Degree-lexicographic key; earlier generators weigh more on ties."""
    return sum(v), v


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vscale(k: int, v: Vector) -> Vector:
    return tuple(k * a for a in v)


def divides(l: Vector, v: Vector) -> bool:
    return all(a <= b for a, b in zip(l, v))


def vjoin(u: Vector, v: Vector) -> Vector:
    return tuple(max(a, b) for a, b in zip(u, v))


def _reduce(v: Vector, rules: Sequence[Rule]) -> Vector:
    changed = True
    while changed:
        changed = False
        for l, r in rules:
            t = min((b // a for a, b in zip(l, v) if a), default=0)
            if t:
                v = tuple(x - t * a + t * c for x, a, c in zip(v, l, r))
                changed = True
    return v


def _orient(u: Vector, v: Vector) -> Rule:
    return (u, v) if order_key(u) > order_key(v) else (v, u)


def critical_pairs(rules: Sequence[Rule]) -> Iterable[tuple[Rule, Rule, Vector, Vector]]:
    """Overlaps of rule pairs whose left sides share support."""
    for (l1, r1), (l2, r2) in itertools.combinations(rules, 2):
        if not any(a and b for a, b in zip(l1, l2)):
            continue
        m = vjoin(l1, l2)
        yield (l1, r1), (l2, r2), tuple(x - a + b for x, a, b in zip(m, l1, r1)), tuple(x - a + b for x, a, b in zip(m, l2, r2))


class NotConfluentError(RuntimeError):
    pass


@dataclass(frozen=True)
class RewriteSystem:
    presentation: MonoidPresentation
    rules: tuple[Rule, ...]
    confluent: bool = True
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def k(self) -> int:
        return self.presentation.k

    @property
    def generators(self) -> tuple[str, ...]:
        return self.presentation.generators

    def zero(self) -> Vector:
        return (0,) * self.k

    def nf(self, v: Vector) -> Vector:
        if not self.confluent:
            raise NotConfluentError("rewrite system is not confluent; exact claims refused")
        c = self._cache
        out = c.get(v)
        if out is None:
            out = _reduce(v, self.rules)
            if len(c) < 2_000_000:
                c[v] = out
        return out

    def eq(self, u: Vector, v: Vector) -> bool:
        return self.nf(u) == self.nf(v)

    def add(self, *vs: Vector) -> Vector:
        acc = self.zero()
        for v in vs:
            acc = vadd(acc, v)
        return self.nf(acc)

    def mul(self, k: int, v: Vector) -> Vector:
        return self.nf(vscale(k, v))

    def irreducible(self, v: Vector) -> bool:
        return not any(divides(l, v) for l, _ in self.rules)

    def window(self, R: int) -> tuple[Vector, ...]:
        """All normal forms of total degree <= R, in increasing term order."""
        key = ("window", R)
        w = self._cache.get(key)
        if w is None:
            w = tuple(enumerate_window(self, R))
            self._cache[key] = w
        return w

    def fmt(self, v: Vector) -> str:
        return format_element(v, self.generators)

    @cached_property
    def grading(self) -> "Grading | None":
        return find_grading(self.presentation)

    @cached_property
    def positive_grading(self) -> "Grading | None":
        g = self.grading
        return g if g is not None and all(w > 0 for w in g.weights) else None

    def to_json(self) -> dict[str, Any]:
        return {
            "generators": list(self.generators),
            "relations": [[list(u), list(v)] for u, v in self.presentation.relations],
            "rules": [[list(l), list(r)] for l, r in self.rules],
            "confluent": self.confluent,
        }


class BudgetExceeded(RuntimeError):
    def __init__(self, partial: RewriteSystem, budget: int):
        self.partial = partial
        self.budget = budget
        super().__init__(f"completion budget of {budget} rule insertions exhausted")


def complete(p: MonoidPresentation, budget: int = DEFAULT_BUDGET) -> RewriteSystem:
    """Complete the relations into an inter-reduced confluent rule set."""
    rules: list[Rule] = []
    pending: list[tuple[Vector, Vector]] = list(p.relations)
    insertions = 0
    while pending:
        u, v = pending.pop()
        u, v = _reduce(u, rules), _reduce(v, rules)
        if u == v:
            continue
        insertions += 1
        if insertions > budget:
            raise BudgetExceeded(RewriteSystem(p, tuple(rules), confluent=False), budget)
        l, r = _orient(u, v)
        kept: list[Rule] = []
        for l2, r2 in rules:
            if divides(l, l2):
                # the old rule becomes redundant; its content is re-queued
                pending.append((l2, r2))
            else:
                kept.append((l2, r2))
        for l2, r2 in kept:
            if any(a and b for a, b in zip(l, l2)):
                m = vjoin(l, l2)
                pending.append((tuple(x - a + b for x, a, b in zip(m, l, r)),
                                tuple(x - a + b for x, a, b in zip(m, l2, r2))))
        kept.append((l, r))
        rules = kept
    # inter-reduce right sides
    final = []
    for i, (l, r) in enumerate(rules):
        others = rules[:i] + rules[i + 1:]
        final.append((l, _reduce(r, others)))
    final.sort(key=lambda lr: order_key(lr[0]))
    rs = RewriteSystem(p, tuple(final))
    check_confluence(rs)
    return rs


def check_confluence(rs: RewriteSystem) -> None:
    for l, r in rs.rules:
        if order_key(l) <= order_key(r):
            raise NotConfluentError(f"rule {l} -> {r} is not decreasing")
    for _, _, s, t in critical_pairs(rs.rules):
        if _reduce(s, rs.rules) != _reduce(t, rs.rules):
            raise NotConfluentError(f"critical pair {s}, {t} does not join")


def normal_form(rs: RewriteSystem, v: Vector) -> Vector:
    return rs.nf(v)


def enumerate_window(rs: RewriteSystem, R: int) -> list[Vector]:
    # irreducible vectors form a down-set, so a BFS from 0 reaches all of them
    if not rs.confluent:
        raise NotConfluentError("rewrite system is not confluent")
    z = rs.zero()
    seen = {z}
    frontier = [z]
    for _ in range(R):
        nxt = []
        for v in frontier:
            for i in range(rs.k):
                w = v[:i] + (v[i] + 1,) + v[i + 1:]
                if w not in seen and rs.irreducible(w):
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(seen, key=order_key)


# ---------------------------------------------------------------------------
# gradings


@dataclass(frozen=True)
class Grading:
    weights: tuple[int, ...]

    def __call__(self, v: Vector) -> int:
        return sum(a * w for a, w in zip(v, self.weights))

    @property
    def positive(self) -> bool:
        return all(w > 0 for w in self.weights)

    def to_json(self) -> list[int]:
        return list(self.weights)


def nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[list[Fraction]]:
    """Basis of the rational kernel, by reduced row echelon form."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [Fraction(0)] * ncols
        vec[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fcol]
        basis.append(vec)
    return basis


def _primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for x in vec:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


def extreme_rays(p: MonoidPresentation) -> list[tuple[int, ...]]:
    """Extreme rays of {w >= 0 : (u - v)·w = 0 for every relation}."""
    k = p.k
    diffs = [[a - b for a, b in zip(u, v)] for u, v in p.relations]
    rays = []
    for size in range(1, k + 1):
        for S in itertools.combinations(range(k), size):
            sub = [[row[j] for j in S] for row in diffs]
            basis = nullspace(sub, size)
            if len(basis) != 1:
                continue
            b = basis[0]
            if all(x > 0 for x in b) or all(x < 0 for x in b):
                full = [Fraction(0)] * k
                for j, x in zip(S, b):
                    full[j] = abs(x)
                rays.append(_primitive(full))
    return rays


def find_grading(p: MonoidPresentation) -> Grading | None:
    """A nonnegative grading with the largest possible support, or None."""
    rays = extreme_rays(p)
    if not rays:
        return None
    total = [sum(col) for col in zip(*rays)]
    g = 0
    for x in total:
        g = math.gcd(g, x)
    return Grading(tuple(x // g for x in total))


# ---------------------------------------------------------------------------
# finiteness


@dataclass(frozen=True)
class NotClosedWithin:
    cap: int
    infinite: bool = False
    grading: Grading | None = None
    free_generator: int | None = None

    def to_json(self) -> dict[str, Any]:
        return {"cap": self.cap, "infinite": self.infinite,
                "grading": None if self.grading is None else self.grading.to_json(),
                "free_generator": self.free_generator}


def _unbounded_generator(rs: RewriteSystem) -> int | None:
    # the normal forms are exactly the irreducible vectors; they are finite in
    # number iff every generator has a pure power among the left sides
    for i in range(rs.k):
        if not any(l[i] and sum(l) == l[i] for l, _ in rs.rules):
            return i
    return None


def detect_finite(rs: RewriteSystem, cap: int = 256) -> FiniteMonoid | NotClosedWithin:
    free = _unbounded_generator(rs)
    if free is not None:
        g = rs.grading
        if g is not None and g.weights[free] == 0:
            g = None
        return NotClosedWithin(cap, True, g, free)
    elements: list[Vector] = [rs.zero()]
    index = {rs.zero(): 0}
    i = 0
    while i < len(elements):
        v = elements[i]
        for j in range(rs.k):
            w = rs.nf(v[:j] + (v[j] + 1,) + v[j + 1:])
            if w not in index:
                if len(elements) >= cap:
                    return NotClosedWithin(cap)
                index[w] = len(elements)
                elements.append(w)
        i += 1
    elements.sort(key=order_key)
    index = {v: n for n, v in enumerate(elements)}
    table = tuple(tuple(index[rs.add(u, v)] for v in elements) for u in elements)
    labels = tuple(rs.fmt(v) for v in elements)
    return FiniteMonoid(labels, 0, table)


def finite_elements(rs: RewriteSystem) -> tuple[Vector, ...]:
    """Normal forms in the element order used by detect_finite (finite systems only)."""
    return rs.window(max_degree(rs))


def max_degree(rs: RewriteSystem) -> int:
    """Largest degree of an irreducible vector (finite systems only)."""
    bounds = []
    for i in range(rs.k):
        bounds.append(min(l[i] for l, _ in rs.rules if l[i] and sum(l) == l[i]) - 1)
    return sum(bounds)


# ---------------------------------------------------------------------------
# order witnesses


@dataclass(frozen=True)
class Witness:
    z: Vector


@dataclass(frozen=True)
class UnknownUpTo:
    R: int


def leq_witness(rs: RewriteSystem, u: Vector, v: Vector, R: int) -> Witness | UnknownUpTo:
    """Search z in W_R with u + z = v."""
    target = rs.nf(v)
    g = rs.positive_grading
    for z in rs.window(R):
        if g is not None and g(u) + g(z) > g(target):
            continue
        if rs.add(u, z) == target:
            return Witness(z)
    return UnknownUpTo(R)


# ---------------------------------------------------------------------------
# homomorphisms into finite monoids


@dataclass(frozen=True)
class Hom:
    source: RewriteSystem
    target: FiniteMonoid
    images: tuple[int, ...]
    target_name: str = ""

    def __call__(self, v: Vector) -> int:
        F = self.target
        acc = F.zero
        for c, img in zip(v, self.images):
            if c:
                acc = F.add(acc, F.mul(c, img))
        return acc

    def assignment(self) -> dict[str, str]:
        return {g: self.target.labels[i] for g, i in zip(self.source.generators, self.images)}

    @cached_property
    def image(self) -> frozenset[int]:
        F = self.target
        seen = {F.zero}
        frontier = [F.zero]
        while frontier:
            nxt = []
            for x in frontier:
                for img in self.images:
                    y = F.add(x, img)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def to_json(self) -> dict[str, Any]:
        out = {"target": self.target.to_json(), "assignment": self.assignment()}
        if self.target_name:
            out["name"] = self.target_name
        return out


@dataclass(frozen=True)
class HomViolation:
    relation: int
    lhs_image: str
    rhs_image: str


def check_hom(rs: RewriteSystem, F: FiniteMonoid, assignment: Mapping[str, int | str] | Sequence[int],
              name: str = "") -> Hom | HomViolation:
    """Exact check that the generator assignment respects every relation."""
    if isinstance(assignment, Mapping):
        missing = [g for g in rs.generators if g not in assignment]
        if missing:
            raise ValueError(f"assignment is missing generator(s) {', '.join(missing)}")
        images = []
        for g in rs.generators:
            x = assignment[g]
            images.append(F.index_of(x) if isinstance(x, str) else int(x))
    else:
        if len(assignment) != rs.k:
            raise ValueError("assignment length does not match generator count")
        images = list(assignment)
    if any(not 0 <= x < F.n for x in images):
        raise ValueError("assignment maps outside the target monoid")
    h = Hom(rs, F, tuple(images), name)
    for i, (u, v) in enumerate(rs.presentation.relations):
        hu, hv = h(u), h(v)
        if hu != hv:
            return HomViolation(i, F.labels[hu], F.labels[hv])
    return h


def homs_into(rs: RewriteSystem, F: FiniteMonoid, name: str = "") -> Iterable[Hom]:
    """All homomorphisms into F, by exhaustive generator assignment."""
    for images in itertools.product(range(F.n), repeat=rs.k):
        h = check_hom(rs, F, images, name)
        if isinstance(h, Hom):
            yield h


@dataclass
class UnitarityReport:
    injective: Verdict
    cofinal: Verdict
    weakly_unitary: Verdict

    def to_json(self) -> dict[str, Any]:
        return {"injective": self.injective.to_json(), "cofinal": self.cofinal.to_json(),
                "weakly_unitary": self.weakly_unitary.to_json()}


def unitarity_report(h: Hom, R: int) -> UnitarityReport:
    rs, F = h.source, h.target
    W = rs.window(R)
    seen: dict[int, Vector] = {}
    injective: Verdict | None = None
    for v in W:
        img = h(v)
        if img in seen:
            injective = fails(radius=R, witness={"x": rs.fmt(seen[img]), "y": rs.fmt(v), "image": F.labels[img]})
            break
        seen[img] = v
    if injective is None:
        fin = detect_finite(rs, cap=max(len(W) + 1, 1))
        if isinstance(fin, FiniteMonoid) and fin.n <= len(W):
            injective = holds(radius=R, exhaustive=True)
        else:
            injective = unknown(R, clean=True)
    S = h.image
    # phi(M) is a finite submonoid of F, so both remaining checks are exact
    cofinal = holds(exhaustive=True)
    for t in range(F.n):
        if not any(F.leq(t, s) for s in S):
            cofinal = fails(witness={"t": F.labels[t]})
            break
    weak = holds(exhaustive=True)
    for s1 in S:
        for s2 in S:
            for z in range(F.n):
                if F.add(s1, z) == s2 and z not in S:
                    weak = fails(witness={"u": F.labels[s1], "v": F.labels[s2], "z": F.labels[z]})
                    break
            if weak.fails:
                break
        if weak.fails:
            break
    return UnitarityReport(injective, cofinal, weak)
