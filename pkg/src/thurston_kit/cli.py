"""Command-line front end: ``thurston-kit <command> ...``.

Exit codes: 0 success, 1 usage, 2 parse or validation failure, 3 analysis
precondition unmet, 4 counterexample flag (or a corpus property failing).
File arguments that do not exist on disk are looked up in the shipped
corpus, so ``thurston-kit validate z3.cover`` works from any directory.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from .corpus import CORPUS, check_entry, corpus_dir, get_entry
from .cover import disk_preimage_topology, lift_word, validate_presentation
from .curves import LiftCache, MulticurveError, face_structure, pullback_saturate, standard_seeds
from .fuzz import fuzz_cubic, fuzz_quadratic
from .generate import SEED_ENV, GeneratorConfig
from .io import PresentationParseError, load_curves, read_presentation_file
from .obstruction import (
    COUNTEREXAMPLE,
    QUADRATIC_LIKE,
    ObstructionError,
    PreconditionError,
    classify_levy,
    classify_obstruction_case,
    find_levy_cycles,
    structural_checks,
    transition_matrix,
    verify_main_theorem,
)
from .spectral import is_irreducible, leading_eigenvalue_bounds
from .sphere_group import WordError, canonical_curve_class, format_word, parse_word

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_PRECONDITION, EXIT_COUNTEREXAMPLE = range(5)

REPORT_FIELDS = ("matrix", "lambda_lower", "lambda_upper", "decision", "irreducible",
                 "levy_cycles", "case", "verdict")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    q = corpus_dir() / p.name
    if q.exists():
        return q
    raise UsageError(f"no such file: {path}")


def _load(path: str):
    return read_presentation_file(_resolve(path))


def _multicurve(args, pf) -> List:
    n = pf.presentation.n
    if getattr(args, "multicurve", None):
        words = load_curves(_resolve(args.multicurve), n)
    elif pf.multicurve is not None:
        words = list(pf.multicurve)
    else:
        raise UsageError("no multicurve: pass --multicurve or add a 'multicurve' block")
    return [canonical_curve_class(w, n) for w in words]


def _labels(P, points) -> str:
    return "{" + " ".join(P.marked.labels[j] for j in sorted(points)) + "}"


def _emit(args, doc: dict, text: str):
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        print(text)


# -- analysis report ---------------------------------------------------------------

def analysis_report(P, G, depth: int) -> dict:
    """Structured report with the stable fields of ``REPORT_FIELDS`` plus details."""
    cache = LiftCache(P)
    M = transition_matrix(P, G, cache=cache)
    bounds = leading_eigenvalue_bounds(M)
    levy = find_levy_cycles(P, G, cache)
    cycles = []
    for cyc in levy.cycles:
        kind = classify_levy(P, G, cyc, depth)
        label = kind.kind + (f"({kind.depth})" if kind.kind == "removable-up-to-depth" else "")
        cycles.append({"curves": [format_word(c.word) for c in cyc.curves], "classification": label})
    doc = {
        "curves": [format_word(c.word) for c in M.curves],
        "matrix": [[str(x) for x in row] for row in M.entries],
        "lambda_lower": str(bounds.lower),
        "lambda_upper": str(bounds.upper),
        "decision": bounds.decision,
        "irreducible": is_irreducible(M),
        "levy_cycles": cycles,
        "case": None,
        "verdict": None,
        "notes": [],
    }
    try:
        rep = classify_obstruction_case(P, G, depth=depth, cache=cache)
        doc["case"] = str(rep)
        if QUADRATIC_LIKE in rep.cases:
            s = structural_checks(P, G, require_case=False, cache=cache)
            doc["structure"] = {"separating": [format_word(c.word) for c in s.separating],
                                "wrong_preimages": [format_word(c.word) for c, _ in s.wrong_preimages],
                                "containment": s.containment, "ok": s.ok}
        doc["verdict"] = verify_main_theorem(P, G, cache=cache).status
    except PreconditionError as exc:
        doc["notes"].append(f"case analysis skipped: {exc}")
    return doc


def _report_text(doc: dict) -> str:
    width = max([len(x) for row in doc["matrix"] for x in row] + [1])
    lines = ["curves: " + ", ".join(f"[{c}]" for c in doc["curves"]), "matrix:"]
    lines += ["  " + " ".join(x.rjust(width) for x in row) for row in doc["matrix"]]
    lines.append(f"lambda in [{doc['lambda_lower']}, {doc['lambda_upper']}]: {doc['decision']}")
    lines.append(f"irreducible: {doc['irreducible']}")
    if doc["levy_cycles"]:
        for c in doc["levy_cycles"]:
            lines.append("Levy cycle: " + " -> ".join(f"[{w}]" for w in c["curves"])
                         + f" ({c['classification']})")
    else:
        lines.append("Levy cycles: none")
    if doc["case"] is not None:
        lines.append(f"case: {doc['case']}")
    if "structure" in doc:
        lines.append(f"quadratic-like structure: {'ok' if doc['structure']['ok'] else 'FAILS'}")
    if doc["verdict"] is not None:
        lines.append(f"verdict: {doc['verdict']}")
    lines += doc["notes"]
    return "\n".join(lines)


# -- commands ------------------------------------------------------------------------

def cmd_validate(args) -> int:
    P = _load(args.file).presentation
    rep = validate_presentation(P, check_peripheral=not args.no_peripheral)
    _emit(args, {"file": args.file, "valid": rep.ok, "errors": [f"{name}: {detail}" for name, detail in rep.failures]},
          "valid" if rep.ok else str(rep))
    return EXIT_OK if rep.ok else EXIT_INPUT


def cmd_lift(args) -> int:
    P = _load(args.file).presentation
    w = parse_word(args.curve, P.n)
    out = []
    for l in lift_word(P, w):
        out.append({"kind": l.kind, "degree": l.degree, "sheets": [s + 1 for s in l.sheets],
                    "word": format_word(l.word),
                    "class": format_word(l.curve.word) if l.curve else None,
                    "point": P.marked.labels[l.point] if l.point is not None else None})
    lines = []
    for d in out:
        what = f"[{d['class']}]" if d["class"] else (d["point"] or "")
        lines.append(f"sheets {d['sheets']} degree {d['degree']}: {d['kind']} {what}".rstrip())
    _emit(args, {"file": args.file, "curve": args.curve, "lifts": out}, "\n".join(lines))
    return EXIT_OK


def cmd_faces(args) -> int:
    pf = _load(args.file)
    P = pf.presentation
    G = _multicurve(args, pf)
    tree = face_structure(G, P.n)
    out, lines = [], []
    for f in tree.faces:
        d = {"boundary": [format_word(c.word) for c in f.boundary],
             "marked": [P.marked.labels[j] for j in sorted(f.marked)], "disk": f.is_disk}
        text = f"face {_labels(P, f.marked)} bounded by " + ", ".join(f"[{b}]" for b in d["boundary"])
        if f.is_disk:
            topo = disk_preimage_topology(P, f.boundary[0], f.disk_side(P.n))
            d["preimage"] = {"total_chi": topo.total_chi, "boundary_degrees": list(topo.degrees),
                             "all_disks": topo.all_disks}
            text += (f"\n  preimage: chi {topo.total_chi}, boundary degrees {list(topo.degrees)}, "
                     + ("all disks" if topo.all_disks else "has a non-disk component"))
        out.append(d)
        lines.append(text)
    _emit(args, {"file": args.file, "faces": out}, "\n".join(lines))
    return EXIT_OK


def cmd_saturate(args) -> int:
    P = _load(args.file).presentation
    if args.seed:
        seeds = [canonical_curve_class(parse_word(s, P.n), P.n) for s in args.seed]
    else:
        seeds = standard_seeds(P.n)
    res = pullback_saturate(P, seeds, max_iter=args.max_iter, max_size=args.max_size)
    curves = sorted(format_word(c.word) for c in res.curves) if res.status != "timeout" else []
    doc = {"file": args.file, "status": res.status, "laminar": res.laminar,
           "iterations": len(res.trajectory) - 1, "reason": res.reason, "curves": curves}
    lines = [f"{res.status} after {doc['iterations']} steps" + (f": {res.reason}" if res.reason else "")]
    if res.status != "timeout":
        lines.append("laminar" if res.laminar else "not laminar (no disjoint realization)")
        lines += [f"  {c}" for c in curves]
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_analyze(args) -> int:
    pf = _load(args.file)
    G = _multicurve(args, pf)
    doc = analysis_report(pf.presentation, G, args.depth)
    doc["file"] = args.file
    if args.report:
        Path(args.report).write_text(json.dumps(doc, indent=2) + "\n")
    _emit(args, doc, _report_text(doc))
    return EXIT_COUNTEREXAMPLE if doc["verdict"] == COUNTEREXAMPLE else EXIT_OK


def cmd_verify(args) -> int:
    pf = _load(args.file)
    P = pf.presentation
    if args.multicurve or pf.multicurve is not None:
        verdict = verify_main_theorem(P, _multicurve(args, pf))
        doc = {"file": args.file, "verdict": verdict.status,
               "witness": [format_word(c.word) for c in verdict.witness.curves] if verdict.witness else None,
               "diagnostics": verdict.diagnostics}
        _emit(args, doc, str(verdict))
        return EXIT_OK if verdict.confirmed else EXIT_COUNTEREXAMPLE
    from .fuzz import analyze_instance
    r = analyze_instance(P, depth=args.depth)
    doc = {"file": args.file, "timeout": r.timeout, "obstructions": [
        {"curves": [format_word(c.word) for c in o.curves],
         "verdict": o.verdict.status if o.verdict else None} for o in r.obstructions],
        "flags": r.flags}
    lines = [f"saturation timeouts: {r.seed_timeouts}",
             f"certified irreducible obstructions: {len(r.obstructions)}"]
    for o in r.obstructions:
        lines.append("  " + ", ".join(f"[{c}]" for c in o.curves) + f": {o.verdict}")
    lines += r.flags
    _emit(args, doc, "\n".join(lines))
    return EXIT_COUNTEREXAMPLE if r.flags else EXIT_OK


def cmd_fuzz(args) -> int:
    cfg = GeneratorConfig.from_env(seed=args.seed, count=args.count)
    run = fuzz_cubic if args.degree == 3 else fuzz_quadratic
    summary = run(cfg, depth=args.depth, max_word_length=args.max_word_length)
    doc = {"seed": cfg.seed, "count": summary.count, "degree": args.degree,
           "timeouts": summary.timeouts, "obstructions": summary.obstructions,
           "cases": summary.case_counts(), "flags": summary.flags,
           "seconds": round(summary.seconds, 3)}
    _emit(args, doc, f"seed: {cfg.seed}\n{summary}")
    return EXIT_COUNTEREXAMPLE if summary.flags else EXIT_OK


def cmd_corpus(args) -> int:
    if args.action == "list":
        doc = [{"name": e.name, "file": e.file, "curves": e.curves, "description": e.description}
               for e in CORPUS]
        lines = [f"{e.name:30s} {e.file:28s} {e.description}" for e in CORPUS]
        lines.append(f"(files in {corpus_dir()})")
        _emit(args, {"entries": doc}, "\n".join(lines))
        return EXIT_OK
    entries = [get_entry(n) for n in args.names] if args.names else list(CORPUS)
    failed = False
    doc, lines = [], []
    for e in entries:
        checks = check_entry(e, depth=args.depth)
        bad = [c for c in checks if not c.ok]
        failed |= bool(bad)
        doc.append({"name": e.name, "ok": not bad,
                    "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks]})
        lines.append(f"{'PASS' if not bad else 'FAIL'} {e.name}")
        lines += [f"  {c}" for c in checks if args.verbose or not c.ok]
    _emit(args, {"entries": doc}, "\n".join(lines))
    return EXIT_COUNTEREXAMPLE if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="thurston-kit", description="Thurston obstructions of combinatorial branched covers.")
    p.add_argument("--json", action="store_true", help="print machine-readable JSON")
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print machine-readable JSON")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser(parents=[common], name="validate", help="check a presentation file")
    s.add_argument("file")
    s.add_argument("--no-peripheral", action="store_true",
                   help="skip the check that marked preimages restrict to peripheral loops")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser(parents=[common], name="lift", help="lift one curve through the cover")
    s.add_argument("file")
    s.add_argument("--curve", required=True, help="word such as 'g1 g2'")
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser(parents=[common], name="faces", help="complementary faces of a multicurve")
    s.add_argument("file")
    s.add_argument("--multicurve", help="curves file; default is the file's own block")
    s.set_defaults(func=cmd_faces)

    s = sub.add_parser(parents=[common], name="saturate", help="iterate pullback from seed curves")
    s.add_argument("file")
    s.add_argument("--seed", action="append", help="seed curve word (repeatable); default: standard seeds")
    s.add_argument("--max-iter", type=int, default=64)
    s.add_argument("--max-size", type=int, default=256)
    s.set_defaults(func=cmd_saturate)

    s = sub.add_parser(parents=[common], name="analyze", help="matrix, eigenvalue, Levy cycles and case of a multicurve")
    s.add_argument("file")
    s.add_argument("--multicurve", help="curves file; default is the file's own block")
    s.add_argument("--depth", type=int, default=3, help="depth for removability checks")
    s.add_argument("--report", help="write the JSON report to this path")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser(parents=[common], name="verify", help="check that an irreducible obstruction has a Levy cycle")
    s.add_argument("file")
    s.add_argument("--multicurve", help="curves file; without one, saturate from standard seeds")
    s.add_argument("--depth", type=int, default=2)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser(parents=[common], name="fuzz", help="random presentations through the whole pipeline")
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--seed", type=int, default=0, help=f"overridden by ${SEED_ENV}")
    s.add_argument("--depth", type=int, default=2)
    s.add_argument("--degree", type=int, choices=(2, 3), default=3)
    s.add_argument("--max-word-length", type=int, default=512)
    s.set_defaults(func=cmd_fuzz)

    s = sub.add_parser(parents=[common], name="corpus", help="list or check the shipped examples")
    s.add_argument("action", choices=("list", "run"))
    s.add_argument("names", nargs="*")
    s.add_argument("--depth", type=int, default=3)
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, KeyError) as exc:
        print(f"thurston-kit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PresentationParseError, WordError, MulticurveError) as exc:
        print(f"thurston-kit: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PreconditionError, ObstructionError, ValueError) as exc:
        print(f"thurston-kit: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
