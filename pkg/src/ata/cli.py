"""``ata`` command-line interface.

Exit codes: ``decide`` returns 0 covered, 1 not covered, 2 inconsistent.
Operational failures use sysexits codes: 64 usage, 65 bad input data,
69 external extractor unavailable, 70 internal error. Other commands return
0 on success and 1 when they found problems (validation errors, accuracy
misses).
"""
from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

from ata import __version__
from ata.engine import (
    DEFAULT_MAX_GOAL_INSTANCES,
    EXIT_CODES,
    TooManyGoalInstances,
    canonical_json,
    decide,
    decide_all_goals,
    parse_triggers,
    render_text,
)
from ata.grounding import CLAUSE_WARNING_THRESHOLD, GroundingError, projected_clause_count
from ata.harness import load_manifest, run_dataset, stability_test
from ata.ingest import (
    AxiomizationError,
    ExternalExtractorUnavailable,
    ExtractionError,
    HttpExtractor,
    RuleTableExtractor,
    axiomize,
)
from ata.lang import (
    DiagnosticError,
    analyze_kb,
    export_smtlib,
    parse_claim,
    serialize_claim,
)
from ata.logic import Diagnostic, Span, parse_goal_spec

EX_USAGE = 64
EX_DATAERR = 65
EX_UNAVAILABLE = 69
EX_SOFTWARE = 70


class UsageError(Exception):
    pass


def _err(*parts: object) -> None:
    print(*parts, file=sys.stderr)


def read_kb_source(path: str) -> tuple[str, list[tuple[int, str]]]:
    """Return KB text and ``(first_line, file)`` segments; directories concatenate ``*.atakb`` by name."""
    p = Path(path)
    if not p.exists():
        raise UsageError(f"knowledge base {path} does not exist")
    if p.is_file():
        return p.read_text(encoding="utf-8"), [(1, str(p))]
    files = sorted(f for f in p.iterdir() if f.suffix == ".atakb" and f.is_file())
    if not files:
        raise UsageError(f"directory {path} contains no .atakb files")
    chunks, segments, line = [], [], 1
    for f in files:
        text = f.read_text(encoding="utf-8")
        if not text.endswith("\n"):
            text += "\n"
        segments.append((line, str(f)))
        chunks.append(text)
        line += text.count("\n")
    return "".join(chunks), segments


def _relocate(d: Diagnostic, segments: list[tuple[int, str]]) -> Diagnostic:
    if d.span is None or len(segments) == 1 and d.span.file == segments[0][1]:
        return d
    start, file = max((s for s in segments if s[0] <= d.span.line), key=lambda s: s[0])
    off = start - 1
    span = Span(d.span.line - off, d.span.column, d.span.end_line - off, d.span.end_column, file)
    return Diagnostic(d.severity, d.code, d.message, d.where, span)


def analyze_kb_path(path: str):
    text, segments = read_kb_source(path)
    label = segments[0][1] if len(segments) == 1 else path
    result = analyze_kb(text, label)
    result.diagnostics = [_relocate(d, segments) for d in result.diagnostics]
    return result


def load_kb(path: str):
    result = analyze_kb_path(path)
    for d in result.diagnostics:
        if not d.is_error:
            _err(d)
    if not result.ok:
        raise DiagnosticError(result.diagnostics)
    return result.value


def _extractor(args):
    if args.extractor == "external":
        url = os.environ.get("ATA_EXTRACTOR_URL")
        if not url:
            raise UsageError("--extractor external requires ATA_EXTRACTOR_URL")
        return HttpExtractor(
            url,
            timeout=float(os.environ.get("ATA_EXTRACTOR_TIMEOUT", "30")),
            retries=int(os.environ.get("ATA_EXTRACTOR_RETRIES", "2")),
            token=os.environ.get("ATA_EXTRACTOR_TOKEN"),
        )
    if not args.rules:
        return None
    path = Path(args.rules)
    if not path.is_file():
        raise UsageError(f"rule table {args.rules} does not exist")
    return RuleTableExtractor.from_text(path.read_text(encoding="utf-8"), str(path))


def _load_claim(kb, path_str: str, args):
    path = Path(path_str)
    if not path.is_file():
        raise UsageError(f"claim file {path_str} does not exist")
    if path.suffix == ".ataclaim":
        return parse_claim(path.read_text(encoding="utf-8"), kb, str(path), default_id=path.stem)
    extractor = _extractor(args)
    if extractor is None:
        raise UsageError(f"{path_str} is not a .ataclaim file; pass --rules or --extractor external")
    return axiomize(path.read_text(encoding="utf-8"), kb, extractor, claim_id=path.stem)


def atomic_write(path: str, text: str) -> None:
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


# --- commands -------------------------------------------------------------------------


def cmd_validate(args) -> int:
    result = analyze_kb_path(args.kb)
    for d in result.diagnostics:
        _err(d)
    if not result.ok:
        return 1
    if args.triggers:
        _, diags = parse_triggers(Path(args.triggers).read_text(encoding="utf-8"), result.value, args.triggers)
        for d in diags:
            _err(d)
        if diags:
            return 1
    return 0


def cmd_decide(args) -> int:
    kb = load_kb(args.kb)
    claim = _load_claim(kb, args.claim, args)
    projected = projected_clause_count(kb, claim.constants)
    if projected > args.clause_warning:
        _err(f"warning: projected {projected} ground clauses exceeds {args.clause_warning}")
    triggers = []
    if args.triggers:
        path = Path(args.triggers)
        if not path.is_file():
            raise UsageError(f"trigger file {args.triggers} does not exist")
        triggers, diags = parse_triggers(path.read_text(encoding="utf-8"), kb, str(path))
        if diags:
            raise DiagnosticError(diags)
    text_mode = args.format == "text" or args.explain == "text"
    if args.goal:
        decisions = [decide(kb, claim, parse_goal_spec(args.goal), triggers)]
    else:
        decisions = decide_all_goals(kb, claim, triggers, cap=args.max_goal_instances)
    if text_mode:
        out = "\n".join(render_text(d) for d in decisions)
    elif args.goal:
        out = canonical_json(decisions[0].to_json())
    else:
        out = canonical_json([d.to_json() for d in decisions])
    _emit(out, args.out)
    return max((EXIT_CODES[d.verdict] for d in decisions), default=0)


def cmd_axiomize(args) -> int:
    kb = load_kb(args.kb)
    path = Path(args.text)
    if not path.is_file():
        raise UsageError(f"text file {args.text} does not exist")
    extractor = _extractor(args)
    if extractor is None:
        raise UsageError("axiomize needs --rules or --extractor external")
    claim = axiomize(path.read_text(encoding="utf-8"), kb, extractor, claim_id=args.claim_id or path.stem)
    _emit(serialize_claim(claim), args.out)
    return 0


def cmd_export_smt(args) -> int:
    kb = load_kb(args.kb)
    claim = _load_claim(kb, args.claim, args)
    _emit(export_smtlib(kb, claim, parse_goal_spec(args.goal)), args.out)
    return 0


def _manifest(args):
    path = Path(args.manifest)
    if not path.is_file():
        raise UsageError(f"manifest {args.manifest} does not exist")
    return load_manifest(path)


def cmd_bench(args) -> int:
    kb = load_kb(args.kb)
    report = run_dataset(kb, _manifest(args), _extractor(args), jobs=args.jobs)
    _emit(report.to_text() if args.format == "text" else report.to_json(), args.out)
    return 0 if report.matches == report.total and not report.manifest_errors else 1


def cmd_stability(args) -> int:
    kb = load_kb(args.kb)
    report = stability_test(kb, _manifest(args), _extractor(args), args.repetitions, jobs=args.jobs)
    _emit(report.to_text() if args.format == "text" else report.to_json(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ata", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"ata {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, claim=False, goal=False, extract=False, fmt=False, out=True):
        p.add_argument("--kb", required=True, help=".atakb file or directory of fragments")
        if claim:
            p.add_argument("--claim", required=True, help=".ataclaim file, or raw text with --rules/--extractor")
        if goal:
            p.add_argument("--goal", required=goal == "required", help="goal instance, e.g. 'is_covered(ALICE)'")
        if extract:
            p.add_argument("--extractor", choices=["rules", "external"], default="rules")
            p.add_argument("--rules", help=".atarules table for the rules extractor")
        if fmt:
            p.add_argument("--format", choices=["json", "text"], default="json")
        if out:
            p.add_argument("--out", help="write output atomically to this file instead of stdout")

    p = sub.add_parser("validate", help="check a knowledge base")
    common(p, out=False)
    p.add_argument("--triggers", help="also check a trigger rule file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("decide", help="adjudicate a claim")
    common(p, claim=True, goal=True, extract=True, fmt=True)
    p.add_argument("--explain", choices=["text"], help="render the explanation as text")
    p.add_argument("--triggers", help="review trigger rule file")
    p.add_argument("--max-goal-instances", type=int, default=DEFAULT_MAX_GOAL_INSTANCES)
    p.add_argument("--clause-warning", type=int, default=CLAUSE_WARNING_THRESHOLD)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("axiomize", help="encode claim text as a .ataclaim file")
    common(p, extract=True)
    p.add_argument("--text", required=True, help="claim text file")
    p.add_argument("--claim-id", help="claim id (default: file stem)")
    p.set_defaults(func=cmd_axiomize)

    p = sub.add_parser("export-smt", help="export the decision problem as SMT-LIB v2")
    common(p, claim=True, goal="required", extract=True)
    p.set_defaults(func=cmd_export_smt)

    for name, func, helptext in (
        ("bench", cmd_bench, "accuracy report over a labelled manifest"),
        ("stability", cmd_stability, "intrinsic/extrinsic stability report"),
    ):
        p = sub.add_parser(name, help=helptext)
        common(p, extract=True, fmt=True)
        p.add_argument("--manifest", required=True)
        p.add_argument("--jobs", type=int, default=1)
        if name == "stability":
            p.add_argument("--repetitions", type=int, default=5)
        p.set_defaults(func=func)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EX_USAGE if exc.code else 0
    if getattr(args, "jobs", 1) < 1:
        _err("error: --jobs must be >= 1")
        return EX_USAGE
    if getattr(args, "repetitions", 2) < 2:
        _err("error: --repetitions must be >= 2")
        return EX_USAGE
    if getattr(args, "extractor", None) == "external" and args.rules:
        _err("error: --rules and --extractor external are mutually exclusive")
        return EX_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        _err(f"error: {exc}")
        return EX_USAGE
    except DiagnosticError as exc:
        for d in exc.diagnostics:
            if d.is_error:
                _err(d)
        return EX_DATAERR
    except ExternalExtractorUnavailable as exc:
        _err(f"error: ExternalExtractorUnavailable: {exc}")
        return EX_UNAVAILABLE
    except AxiomizationError as exc:
        _err(f"error: {exc}")
        if any(isinstance(e, ExternalExtractorUnavailable) for _, e in exc.failures):
            return EX_UNAVAILABLE
        return EX_DATAERR
    except (ExtractionError, GroundingError, TooManyGoalInstances, ValueError) as exc:
        _err(f"error: {exc}")
        return EX_DATAERR
    except OSError as exc:
        _err(f"error: {exc}")
        return EX_USAGE
    except Exception:  # noqa: BLE001
        import traceback

        traceback.print_exc()
        return EX_SOFTWARE


if __name__ == "__main__":
    sys.exit(main())
