"""Command-line entry point: ``srank <command> FILE ...``."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import Any

from . import __version__
from . import finite as fin
from .finite import FiniteMonoid, MonoidAxiomError
from .harness import SuiteContradiction, fixture_dir, paper_suite
from .kernel import DEFAULT_BUDGET, BudgetExceeded, RewriteSystem, complete, detect_finite, find_grading
from .presentation import CayleyError, PresentationError, format_element, parse_cayley, parse_element, parse_presentation
from .rank import INF, element_predicates, sr_bracket, sr_plus_bracket, window_property_report
from .verify import VerificationError, verify_report

EXIT_OK, EXIT_ASSERT, EXIT_INPUT, EXIT_NO_VERDICT = 0, 1, 2, 3


class InputError(Exception):
    pass


class NoVerdict(Exception):
    pass


def _resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    bundled = fixture_dir() / p.name
    if bundled.is_file():
        return Path(str(bundled))
    raise InputError(f"file not found: {path}")


def _read(path: str) -> tuple[Path, str, str]:
    p = _resolve(path)
    data = p.read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputError(f"{path}: not valid UTF-8") from exc
    return p, text, hashlib.sha256(data).hexdigest()


def _is_table(p: Path, text: str) -> bool:
    return p.suffix == ".ctab" or text.lstrip().startswith("{")


def _load_system(args, text: str) -> RewriteSystem:
    return complete(parse_presentation(text, Path(args.file).stem), args.budget)


def _load_table(text: str) -> FiniteMonoid:
    return fin.validate(parse_cayley(text))


def _value(v) -> Any:
    return "inf" if v == INF else v


# ---------------------------------------------------------------------------
# commands; each returns (results, exit code)


def cmd_nf(args, p, text):
    rs = _load_system(args, text)
    v = parse_element(args.expr[0], rs.presentation)
    nf = rs.nf(v)
    return {"expr": args.expr[0], "vector": list(v), "normal_form": list(nf), "display": rs.fmt(nf)}, EXIT_OK


def cmd_eq(args, p, text):
    if len(args.expr) != 2:
        raise InputError("eq needs exactly two -e expressions")
    rs = _load_system(args, text)
    u, v = (parse_element(e, rs.presentation) for e in args.expr)
    equal = rs.eq(u, v)
    res = {"exprs": args.expr, "normal_forms": [list(rs.nf(u)), list(rs.nf(v))], "equal": equal,
           "system": rs.to_json()}
    return res, EXIT_ASSERT if args.assert_ and not equal else EXIT_OK


def cmd_complete(args, p, text):
    rs = _load_system(args, text)
    rules = [f"{rs.fmt(l)} -> {rs.fmt(r)}" for l, r in rs.rules]
    return {"system": rs.to_json(), "rules_display": rules}, EXIT_OK


def cmd_finite(args, p, text):
    if _is_table(p, text):
        M = _load_table(text)
        return {"finite": True, "size": M.n, "table": M.to_json()}, EXIT_OK
    rs = _load_system(args, text)
    F = detect_finite(rs, args.cap)
    if isinstance(F, FiniteMonoid):
        return {"finite": True, "size": F.n, "table": F.to_json()}, EXIT_OK
    res = {"finite": False, "not_closed_within": F.to_json()}
    code = EXIT_OK
    if args.require_verdict and not F.infinite:
        code = EXIT_NO_VERDICT
    return res, code


def cmd_grade(args, p, text):
    pres = parse_presentation(text)
    g = find_grading(pres)
    res = {"grading": None if g is None else list(g.weights),
           "positive": bool(g and g.positive),
           "display": None if g is None else {gen: w for gen, w in zip(pres.generators, g.weights)}}
    return res, EXIT_OK


def _finite_sr(args, M: FiniteMonoid) -> tuple[dict, int]:
    label = args.expr[0]
    if label not in M.labels:
        raise InputError(f"unknown element {label!r}")
    a = M.index_of(label)
    r = fin.sr_exact_finite(M, a)
    res = {"element": label, "exact": True, "sr": _value(r.value),
           "sr_plus": _value(fin.sr_plus_exact_finite(M, a)), "details": r.to_json(M)}
    code = EXIT_OK
    if args.assert_ is not None and _value(r.value) != _parse_expected(args.assert_):
        code = EXIT_ASSERT
    return res, code


def _parse_expected(s: str):
    if s in ("inf", "infinity"):
        return "inf"
    try:
        return int(s)
    except ValueError as exc:
        raise InputError(f"--assert expects an integer or 'inf', got {s!r}") from exc


def cmd_sr(args, p, text):
    if len(args.expr) != 1:
        raise InputError("sr needs exactly one -e expression")
    if _is_table(p, text):
        return _finite_sr(args, _load_table(text))
    rs = _load_system(args, text)
    a = parse_element(args.expr[0], rs.presentation)
    b = sr_bracket(rs, a, args.radius, args.nmax)
    res: dict[str, Any] = {"element": rs.fmt(rs.nf(a)), "system": rs.to_json(), "sr": b.to_json()}
    if args.plus:
        res["sr_plus"] = sr_plus_bracket(rs, a, args.radius, args.nmax + 1).to_json()
    if args.predicates:
        res["predicates"] = {k: v.to_json() for k, v in element_predicates(rs, a, args.radius).items()}
    code = EXIT_OK
    if args.assert_ is not None:
        want = _parse_expected(args.assert_)
        if want == "inf":
            # a finite upper end is only empirical, so nothing is certified false here
            pass
        elif b.infinite is not None or b.lo > want:
            code = EXIT_ASSERT
    if code == EXIT_OK and args.require_verdict and not b.pinned:
        code = EXIT_NO_VERDICT
    return res, code


def cmd_props(args, p, text):
    if _is_table(p, text):
        M = _load_table(text)
        pr = fin.property_report(M)
        st = fin.structure_report(M)
        res = {"exact": True, "properties": pr.to_json(M), "structure": st.to_json(M)}
        statuses = {k: ("holds" if v["value"] else "fails") for k, v in res["properties"].items() if isinstance(v, dict)}
        statuses["simple"] = "holds" if st.simple else "fails"
    else:
        rs = _load_system(args, text)
        w = window_property_report(rs, args.radius, args.witness_radius)
        res = {"exact": False, "system": rs.to_json(), "report": w.to_json()}
        statuses = {k: v.status for k, v in w.verdicts.items()}
    code = EXIT_OK
    for name in args.assert_prop or ():
        if name not in statuses:
            raise InputError(f"unknown property {name!r}")
        if statuses[name] == "fails":
            code = EXIT_ASSERT
    if code == EXIT_OK and args.require_verdict:
        names = args.assert_prop or list(statuses)
        if any(statuses[n] == "unknown" for n in names):
            code = EXIT_NO_VERDICT
    return res, code


def cmd_quotient(args, p, text):
    if _is_table(p, text):
        M = _load_table(text)
    else:
        rs = _load_system(args, text)
        F = detect_finite(rs, args.cap)
        if not isinstance(F, FiniteMonoid):
            raise InputError("quotients need a finite monoid (use a .ctab file or a finite presentation)")
        M = F
    if args.kind == "o_ideal":
        if not args.ideal:
            raise InputError("--ideal is required for kind o_ideal")
        labels = [s.strip() for s in args.ideal.split(",") if s.strip()]
        bad = [s for s in labels if s not in M.labels]
        if bad:
            raise InputError(f"unknown element(s) {bad}")
        params: Any = [M.index_of(s) for s in labels]
    elif args.kind in ("power_some", "power_all"):
        if not args.S:
            raise InputError("S empty: give --S with one or more integers")
        params = args.S
    else:
        params = None
    q = fin.quotient(M, args.kind, params)
    res = {
        "kind": args.kind,
        "quotient": q.monoid.to_json(),
        "projection": {M.labels[x]: q.monoid.labels[q.projection[x]] for x in range(M.n)},
        "classes": [[M.labels[x] for x in c] for c in q.congruence.classes()],
    }
    return res, EXIT_OK


def cmd_suite(args, p, text):
    rep = paper_suite(args.fixture, finite_count=args.finite_count)
    code = EXIT_OK if rep["summary"]["passed"] else EXIT_ASSERT
    return rep, code


def cmd_verify(args, p, text):
    try:
        report = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc
    claims = verify_report(report)
    return {"verified": len(claims), "claims": claims}, EXIT_OK


COMMANDS = {
    "nf": cmd_nf, "eq": cmd_eq, "complete": cmd_complete, "finite": cmd_finite, "grade": cmd_grade,
    "sr": cmd_sr, "props": cmd_props, "quotient": cmd_quotient, "suite": cmd_suite, "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="srank", description="Stable rank workbench for commutative monoids.")
    ap.add_argument("--version", action="version", version=f"srank {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, file=True):
        if file:
            sp.add_argument("file", help="presentation (.cmon) or Cayley table (.ctab)")
        sp.add_argument("--json", action="store_true", help="print the JSON report")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="completion budget (rule insertions)")
        sp.add_argument("--require-verdict", action="store_true", help="exit 3 when no verdict is reached")
        return sp

    sp = common(sub.add_parser("nf", help="normal form of an element"))
    sp.add_argument("-e", dest="expr", action="append", required=True)
    sp = common(sub.add_parser("eq", help="decide equality of two elements"))
    sp.add_argument("-e", dest="expr", action="append", required=True)
    sp.add_argument("--assert", dest="assert_", action="store_true", help="exit 1 if the elements differ")
    common(sub.add_parser("complete", help="print the completed rewrite system"))
    sp = common(sub.add_parser("finite", help="detect a finite monoid"))
    sp.add_argument("--cap", type=int, default=256)
    common(sub.add_parser("grade", help="find a grading of maximal support"))
    sp = common(sub.add_parser("sr", help="stable rank bracket of an element"))
    sp.add_argument("-e", dest="expr", action="append", required=True)
    sp.add_argument("--radius", type=int, default=None, help="window radius (default depends on n)")
    sp.add_argument("--nmax", type=int, default=12)
    sp.add_argument("--plus", action="store_true", help="also bracket the strong stable rank")
    sp.add_argument("--predicates", action="store_true", help="also check cancellative/Hermite/self-cancellative")
    sp.add_argument("--assert", dest="assert_", metavar="VALUE", help="exit 1 if a certificate contradicts sr = VALUE")
    sp = common(sub.add_parser("props", help="global properties"))
    sp.add_argument("--radius", type=int, default=None)
    sp.add_argument("--witness-radius", type=int, default=None)
    sp.add_argument("--assert", dest="assert_prop", action="append", metavar="PROPERTY",
                    help="exit 1 if PROPERTY is certified false (repeatable)")
    sp = common(sub.add_parser("quotient", help="quotient of a finite monoid"))
    sp.add_argument("--kind", required=True, choices=["o_ideal", "max_antisym", "power_some", "power_all"])
    sp.add_argument("--ideal", help="comma-separated element labels of the o-ideal")
    sp.add_argument("--S", type=int, nargs="+", help="integers for the power congruences")
    sp.add_argument("--cap", type=int, default=256)
    sp = common(sub.add_parser("suite", help="run the fixture suite"), file=False)
    sp.add_argument("--fixture", default=None)
    sp.add_argument("--finite-count", type=int, default=50, help="random finite monoids checked")
    common(sub.add_parser("verify", help="re-verify every certificate in a JSON report"))
    return ap


def _text(command: str, res: dict[str, Any]) -> str:
    if command == "nf":
        return res["display"]
    if command == "eq":
        return "equal" if res["equal"] else "not equal"
    if command == "complete":
        return "\n".join(res["rules_display"]) or "(no rules)"
    if command == "finite":
        if res["finite"]:
            return f"finite, {res['size']} elements: " + ", ".join(res["table"]["elements"])
        info = res["not_closed_within"]
        return "infinite (certified)" if info["infinite"] else f"not closed within {info['cap']} elements"
    if command == "grade":
        return "no nonzero grading" if res["grading"] is None else \
            ", ".join(f"{g} -> {w}" for g, w in res["display"].items())
    if command == "sr":
        if res.get("exact"):
            return f"sr({res['element']}) = {res['sr']} (exact)\nsr+({res['element']}) = {res['sr_plus']} (exact)"
        lines = [_bracket_text("sr", res["element"], res["sr"])]
        if "sr_plus" in res:
            lines.append(_bracket_text("sr+", res["element"], res["sr_plus"]))
        for k, v in res.get("predicates", {}).items():
            lines.append(f"{k}: {v['status']}")
        return "\n".join(lines)
    if command == "props":
        if res["exact"]:
            return "\n".join(f"{k}: {v['value']}" for k, v in res["properties"].items() if isinstance(v, dict)) + \
                f"\nsimple: {res['structure']['simple']}"
        rep = res["report"]
        lines = [f"{k}: {v['status']}" for k, v in rep["verdicts"].items()]
        lines.append("components in window: " + " | ".join(", ".join(c) for c in rep["components_window"]["classes"]))
        return "\n".join(lines)
    if command == "quotient":
        return "classes: " + " | ".join(", ".join(c) for c in res["classes"])
    if command == "suite":
        s = res["summary"]
        lines = []
        for fx in res["fixtures"]:
            for f in fx["facts"]:
                what = f.get("element") or f.get("name") or ",".join(f.get("elements", [])) or f.get("scope", "")
                lines.append(f"{fx['id']:6} {f['claim']:10} {what:12} {f['status']}")
        lines.append(f"certificates audited: {res['audit']['certificates']}, rejected: {len(res['audit']['rejected'])}")
        lines.append("suite " + ("passed" if s["passed"] else "FAILED"))
        return "\n".join(lines)
    if command == "verify":
        return f"{res['verified']} certificate(s) verified"
    return json.dumps(res)


def _bracket_text(name: str, elem: str, b: dict[str, Any]) -> str:
    if b["infinite"] is not None:
        return f"{name}({elem}) = inf  [{b['infinite']['kind']}]"
    hi = b["hi"]
    kinds = ",".join(c["kind"] for c in b["certificates"])
    certified = f"certified >= {b['lo']}" + (f" [{kinds}]" if kinds else "")
    if hi is None:
        return f"{name}({elem}): {certified}; no upper end found"
    tag = "exact" if b["exact"] else f"empirical at radius {hi['radius']}"
    if b["lo"] == hi["n"]:
        return f"{name}({elem}) = {b['lo']}  ({certified}; <= {hi['n']} {tag})"
    return f"{name}({elem}) in [{b['lo']}, {hi['n']}]  ({certified}; <= {hi['n']} {tag})"


def run(argv: list[str] | None = None) -> tuple[int, dict[str, Any] | None]:
    ap = build_parser()
    args = ap.parse_args(argv)
    start = time.perf_counter()
    try:
        if args.command == "suite":
            p, text, digest = None, "", None
        else:
            p, text, digest = _read(args.file)
        res, code = COMMANDS[args.command](args, p, text)
    except (InputError, PresentationError, CayleyError, MonoidAxiomError, fin.QuotientError, VerificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT, None
    except BudgetExceeded as exc:
        print(f"error: {exc}; the partial system is not confluent", file=sys.stderr)
        return EXIT_NO_VERDICT, None
    except SuiteContradiction as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ASSERT, None
    params = {k: v for k, v in vars(args).items() if k not in ("command", "file", "json")}
    report = {
        "tool": "srank",
        "version": __version__,
        "command": args.command,
        "input": None if digest is None else {"path": str(args.file), "sha256": digest},
        "params": params,
        "results": res,
        "timing": {"seconds": round(time.perf_counter() - start, 6)},
    }
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(_text(args.command, res))
    return code, report


def main(argv: list[str] | None = None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
