"""Command-line front end.

Exit codes: 0 verified, 1 refuted, 2 budget exceeded, 3 input error.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import geometry, twist_spun
from .presentations import (DEFAULT_BUDGET, PresentationSyntaxError, enumerate_presentation,
                            parse_presentation)
from .quandle import (FiniteQuandle, MalformedTable, check_axioms, element_invariants, find_isomorphism,
                      is_connected)
from .report import Report, emit, recheck


class InputError(ValueError):
    pass


LEMMA_FORMER = "< v, w | (v*w)*v = w, (w*v)*w = v, w *^{m} v = w >"
LEMMA_LATTER = "< v, w | (v*w)*v = w, (((v*w)*v)*v)*w = v, w *^{m} v = w >"


def _default_budget() -> int:
    env = os.environ.get("QF_BUDGET")
    if env is None:
        return DEFAULT_BUDGET
    try:
        return int(env)
    except ValueError:
        raise InputError(f"QF_BUDGET must be an integer, got {env!r}") from None


def _in_range(m: int, allowed, what: str) -> None:
    if m not in allowed:
        raise InputError(f"{what} must be one of {sorted(allowed)}, got {m}")


def _table_report(command: str, q: FiniteQuandle) -> Report:
    return Report(command, "verified", {"table": q.to_dict(), "axioms": bool(check_axioms(q)),
                                        "connected": is_connected(q)})


def _iso_payload(src: FiniteQuandle, tgt: FiniteQuandle) -> dict:
    hom = find_isomorphism(src, tgt)
    payload = {"source": src.to_dict(), "target": tgt.to_dict(),
               "isomorphism": list(hom.mapping) if hom else None, "size": src.order}
    if hom is None:
        inv1, inv2 = sorted(element_invariants(src)), sorted(element_invariants(tgt))
        if src.order != tgt.order:
            payload["counterexample"] = {"orders": [src.order, tgt.order]}
        elif inv1 != inv2:
            payload["counterexample"] = {"element_invariants_differ": True}
        else:
            payload["counterexample"] = {"exhaustive_search": "no bijective homomorphism"}
    return payload


def cmd_build(args) -> Report:
    cmd = f"build {args.what}"
    if args.what == "schlafli":
        _in_range(args.m, range(2, 7), "--m")
        if args.m == 6:
            return Report(cmd, "verified", {"model": geometry.eisenstein_quandle().describe()})
        if args.m == 2 and args.model == "geometric":
            raise InputError("{3,2} has only the algebraic model")
        model = args.model or ("algebraic" if args.m == 2 else "geometric")
        return _table_report(cmd, geometry.schlafli_quandle(args.m, model))
    if args.what == "cell":
        _in_range(args.cells, geometry.CELLS, "--cells")
        return _table_report(cmd, geometry.cell_quandle(args.cells))
    # twist-spun
    _in_range(args.m, range(1, 7), "--m")
    Q = twist_spun.build_Qm(args.m, args.budget)
    if not Q.finite:
        r = Q.realization
        return Report(cmd, "budget_exceeded", {"m": args.m, "budget": args.budget,
                                               "classes_seen": r.classes_seen, "stats": r.stats})
    return _table_report(cmd, Q.quandle)


def cmd_enum(args) -> Report:
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(str(exc)) from None
    pres = parse_presentation(text)
    res = enumerate_presentation(pres, args.budget)
    if not res.finite:
        return Report("enum", "budget_exceeded", {"budget": args.budget, "classes_seen": res.classes_seen,
                                                  "stats": res.stats})
    rep = _table_report("enum", res.quandle)
    rep.payload["generator_images"] = res.generator_images
    return rep


def cmd_verify(args) -> Report:
    cmd = f"verify {args.claim}"
    if args.claim == "main1":
        _in_range(args.m, (3, 4, 5), "--m")
        Q = twist_spun.build_Qm(args.m, args.budget)
        if not Q.finite:
            return Report(cmd, "budget_exceeded", {"m": args.m, "budget": args.budget})
        X = geometry.cell_quandle(twist_spun.CELLS_FOR_M[args.m])
        payload = _iso_payload(Q.quandle, X)
        return Report(cmd, "verified" if payload["isomorphism"] else "refuted", payload)
    if args.claim == "main2":
        _in_range(args.m, range(2, 6), "--m")
        ext = twist_spun.verify_main2(args.m, args.budget)
        payload = {"source": ext.projection.source.to_dict(), "target": ext.projection.target.to_dict(),
                   "extension": ext.to_dict()}
        if not ext.verdict:
            payload["counterexample"] = {"reason": ext.reason, "deck_order": ext.deck_order,
                                         "E0": ext.e0.to_dict(), "E1": ext.e1.to_dict(), "E2": ext.e2.to_dict()}
        return Report(cmd, "verified" if ext.verdict else "refuted", payload)
    # lemma
    _in_range(args.m, range(2, 6), "--m")
    X = geometry.schlafli_quandle(args.m)
    parts = {}
    for key, template in (("former", LEMMA_FORMER), ("latter", LEMMA_LATTER)):
        res = enumerate_presentation(parse_presentation(template.format(m=args.m)), args.budget, name=key)
        if not res.finite:
            return Report(cmd, "budget_exceeded", {"presentation": key, "budget": args.budget})
        parts[key] = res.quandle
    payload = {"lemma": {"former_vs_model": _iso_payload(parts["former"], X),
                         "latter_vs_model": _iso_payload(parts["latter"], X),
                         "former_vs_latter": _iso_payload(parts["former"], parts["latter"])}}
    ok = all(p["isomorphism"] is not None for p in payload["lemma"].values())
    if not ok:
        payload["counterexample"] = {k: v.get("counterexample") for k, v in payload["lemma"].items()}
    return Report(cmd, "verified" if ok else "refuted", payload)


def _load_table(path: str) -> FiniteQuandle:
    try:
        return FiniteQuandle.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_iso(args) -> Report:
    a, b = _load_table(args.a), _load_table(args.b)
    for q, path in ((a, args.a), (b, args.b)):
        rep = check_axioms(q)
        if not rep:
            raise InputError(f"{path} is not a quandle ({rep.axiom} fails at {rep.witness})")
    payload = _iso_payload(a, b)
    return Report("iso", "verified" if payload["isomorphism"] else "refuted", payload)


def cmd_certify(args) -> Report:
    if args.m != 6:
        raise InputError("certify-infinite supports --m 6 only")
    cert = twist_spun.certify_infinite(args.m)
    return Report("certify-infinite", "verified" if cert.valid else "error", {"certificate": cert.to_dict()})


def cmd_recheck(args) -> Report:
    try:
        rep = Report.loads(Path(args.report).read_text(encoding="utf-8"))
    except (OSError, ValueError, KeyError) as exc:
        raise InputError(str(exc)) from None
    ok = recheck(rep)
    return Report("recheck", "verified" if ok else "refuted", {"command": rep.command, "rechecked": ok})


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=int, default=None, help="class limit (default: $QF_BUDGET or 20000)")

    parser = argparse.ArgumentParser(prog="quandlebench", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="build a quandle table")
    bsub = build.add_subparsers(dest="what", required=True)
    p = bsub.add_parser("schlafli", parents=[common])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--model", choices=("geometric", "algebraic"), default=None)
    p = bsub.add_parser("cell", parents=[common])
    p.add_argument("--cells", type=int, required=True)
    p = bsub.add_parser("twist-spun", parents=[common])
    p.add_argument("--m", type=int, required=True)
    build.set_defaults(func=cmd_build)

    p = sub.add_parser("enum", parents=[common], help="enumerate a .qdl presentation")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("verify", parents=[common], help="verify a result")
    p.add_argument("claim", choices=("main1", "main2", "lemma"))
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("iso", parents=[common], help="isomorphism between two table files")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("certify-infinite", parents=[common], help="infinity certificate")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("recheck", parents=[common], help="re-verify a saved JSON report")
    p.add_argument("report")
    p.set_defaults(func=cmd_recheck)
    return parser


def run(argv=None, out=None) -> tuple[int, Report]:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code == 0 else 3), Report(" ".join(argv or []), "error", {"error": "usage"})
    fmt = getattr(args, "format", "text")
    command = " ".join(argv if argv is not None else sys.argv[1:])
    t0 = time.perf_counter()
    try:
        if args.budget is None:
            args.budget = _default_budget()
        if args.budget < 1:
            raise InputError("--budget must be positive")
        report = args.func(args)
    except (InputError, MalformedTable, PresentationSyntaxError, geometry.UnsupportedSymbol,
            twist_spun.OutOfScope) as exc:
        report = Report(command, "error", {"error": str(exc)})
    report.command = command
    report.elapsed_ms = round((time.perf_counter() - t0) * 1000, 3)
    print(emit(report, fmt), file=out)
    return report.exit_code, report


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
