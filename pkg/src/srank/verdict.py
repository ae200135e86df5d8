"""Three-valued outcomes shared by the kernel and the rank engine."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

HOLDS = "holds"
FAILS = "fails"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """``holds``/``fails`` carry evidence; ``unknown`` carries the search window.

    ``exhaustive`` marks a ``holds`` that was decided over the whole monoid
    (finite carrier, or a quantifier bounded by a grading), as opposed to one
    backed by a certificate.  For ``unknown`` verdicts ``clean`` says whether
    the window showed no candidate counterexample at all.
    """

    status: str
    radius: int | None = None
    certificate: Any = None
    witness: dict[str, Any] | None = None
    exhaustive: bool = False
    clean: bool = True
    candidates: tuple = field(default=(), compare=False)
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def fails(self) -> bool:
        return self.status == FAILS

    @property
    def unknown(self) -> bool:
        return self.status == UNKNOWN

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"status": self.status}
        if self.radius is not None:
            out["radius"] = self.radius
        if self.status == HOLDS:
            out["exhaustive"] = self.exhaustive
        if self.status == UNKNOWN:
            out["clean"] = self.clean
        if self.witness is not None:
            out["witness"] = {k: list(v) if isinstance(v, tuple) else v for k, v in self.witness.items()}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.note:
            out["note"] = self.note
        return out


def holds(**kw: Any) -> Verdict:
    return Verdict(HOLDS, **kw)


def fails(**kw: Any) -> Verdict:
    return Verdict(FAILS, **kw)


def unknown(radius: int, **kw: Any) -> Verdict:
    return Verdict(UNKNOWN, radius=radius, **kw)
