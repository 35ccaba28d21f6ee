"""Single entry point: ``sdsr <subcommand>``.

Exit codes: 0 success, 1 validation errors in the data, 2 usage errors,
3 transport/backend failures.  ``--format json`` prints machine-readable
output on stdout; warnings and progress notes go to stderr only, so
stdout stays byte-stable for identical inputs on lexical-backend paths.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import bench, corpus, distractors, engine, guidance, prefix
from .errors import IoFailure, SdsrError, TransportError
from .library import (
    Finding,
    SEVERITY_ERROR,
    deserialize_library,
    has_errors,
    serialize_library,
    validate_library,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_TRANSPORT = 3


@dataclass(frozen=True)
class CommandOutcome:
    exit_code: int
    stdout_payload: str


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc


def _write_text(path: str | Path, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def _load_library(path: str, body_key: str | None = None):
    return deserialize_library(_read_text(path), body_key=body_key)


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    data = json.loads(_read_text(path))
    if not isinstance(data, dict):
        raise SdsrError("config file must hold a JSON object")
    return data


def _load_prompts(path: str | None) -> guidance.PromptConfig:
    if not path:
        from .fixtures import fixture_prompt_config
        return fixture_prompt_config()
    return guidance.prompt_config_from_dict(json.loads(_read_text(path)))


def _make_backend(name: str, config: dict):
    if name == "lexical":
        return engine.LexicalBackend()
    if name == "remote":
        from .remote import RemoteBackend, remote_config_from_dict
        remote_cfg = config.get("remote")
        if not remote_cfg:
            raise SdsrError("remote backend requires a config file with a 'remote' section")
        return RemoteBackend(remote_config_from_dict(remote_cfg))
    raise SdsrError(f"unknown backend {name!r}")


def _findings_payload(findings: list[Finding]) -> list[dict]:
    return [{"severity": f.severity, "code": f.code, "message": f.message} for f in findings]


def _print_findings_stderr(findings: list[Finding]) -> None:
    for f in findings:
        if f.severity != SEVERITY_ERROR:
            print(f"{f.severity} {f.code}: {f.message}", file=sys.stderr)


def _emit(args, payload: object, table: str) -> str:
    if args.format == "json":
        return json.dumps(payload, ensure_ascii=False, indent=2)
    return table


# --- subcommand handlers -----------------------------------------------


def _cmd_validate(args) -> CommandOutcome:
    lib = _load_library(args.infile, args.body_key)
    findings = validate_library(lib, strict=args.strict, hint_max=args.hint_max)
    table = "\n".join(f"{f.severity} {f.code}: {f.message}" for f in findings) or "no findings"
    out = _emit(args, {"findings": _findings_payload(findings)}, table)
    code = EXIT_VALIDATION if has_errors(findings) else EXIT_OK
    return CommandOutcome(code, out)


def _cmd_summarize(args) -> CommandOutcome:
    lib = _load_library(args.infile, args.body_key)
    summarized = guidance.build_summary(lib, hint_max=args.hint_max)
    _write_text(args.outfile, serialize_library(summarized))
    payload = {
        "out": args.outfile,
        "categories": len(summarized.categories),
        "skills": summarized.total_skills,
    }
    table = (f"wrote {args.outfile}: {payload['categories']} categories, "
             f"{payload['skills']} skills indexed")
    return CommandOutcome(EXIT_OK, _emit(args, payload, table))


def _cmd_strip(args) -> CommandOutcome:
    lib = _load_library(args.infile, args.body_key)
    _write_text(args.outfile, serialize_library(guidance.strip_summary(lib)))
    payload = {"out": args.outfile}
    return CommandOutcome(EXIT_OK, _emit(args, payload, f"wrote {args.outfile}"))


def _cmd_condition(args) -> CommandOutcome:
    lib = _load_library(args.infile, args.body_key)
    prompts = _load_prompts(args.prompts)
    cond = guidance.build_condition(lib, args.version, prompts, hint_max=args.hint_max)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    lib_path = out_dir / f"library_{cond.condition}.json"
    prompt_path = out_dir / f"prompt_{cond.condition}.txt"
    lib_path.write_bytes(cond.library_artifact)
    _write_text(prompt_path, cond.system_prompt + "\n")
    payload = {"condition": cond.condition, "library": str(lib_path),
               "prompt": str(prompt_path)}
    table = f"condition {cond.condition}: {lib_path} + {prompt_path}"
    return CommandOutcome(EXIT_OK, _emit(args, payload, table))


def _cmd_expand(args) -> CommandOutcome:
    lib = _load_library(args.infile, args.body_key)
    spec_data = json.loads(_read_text(args.specs))
    if isinstance(spec_data, list):
        matches = [s for s in spec_data if int(s.get("round_id", -1)) == args.round]
        if not matches:
            raise SdsrError(f"specs file has no round_id {args.round}")
        cfg = distractors.round_config_from_dict(matches[0])
    else:
        cfg = distractors.round_config_from_dict(spec_data)
        if args.round is not None and cfg.round_id != args.round:
            raise SdsrError(
                f"specs file is round {cfg.round_id}, but --round {args.round} was given")
    result = distractors.expand_round(lib, cfg, hint_max=args.hint_max)
    _write_text(args.outfile, serialize_library(result.library))
    _print_findings_stderr(list(result.report))
    payload = {
        "out": args.outfile,
        "categories": len(result.library.categories),
        "skills": result.library.total_skills,
        "findings": _findings_payload(list(result.report)),
    }
    table = (f"wrote {args.outfile}: {payload['categories']} categories, "
             f"{payload['skills']} skills")
    code = EXIT_VALIDATION if has_errors(list(result.report)) else EXIT_OK
    return CommandOutcome(code, _emit(args, payload, table))


def _cmd_route(args) -> CommandOutcome:
    config = _load_config(args.config)
    backend = _make_backend(args.backend, config)
    registry = prefix.scan_registry(args.directory, extension=args.extension)
    summaries, findings = prefix.read_registry_summaries(
        registry, block_size=args.block_size, strict=not args.lenient)
    _print_findings_stderr(findings)
    request = engine.RoutingRequest(
        query=args.query,
        summaries=tuple((fid, res.summary) for fid, res in summaries),
        k_max=args.k_max,
        threshold=args.threshold,
    )
    result = engine.route_tier1(request, backend)
    payload = {
        "selected": [{"file_id": sf.file_id, "score": sf.score} for sf in result.selected],
        "expanded_scope": result.expanded_scope,
        "trace": list(result.trace),
    }
    table = "\n".join(f"{sf.file_id}\t{sf.score:.4f}" for sf in result.selected)
    if result.expanded_scope:
        table += "\n(expanded scope: no file met the threshold)"
    return CommandOutcome(EXIT_OK, _emit(args, payload, table))


def _cmd_select(args) -> CommandOutcome:
    config = _load_config(args.config)
    backend = _make_backend(args.backend, config)
    libraries = [_load_library(p, args.body_key) for p in args.libs.split(",")]
    selection = engine.select_tier2(args.query, libraries, backend)
    if args.complement_pass:
        selection = engine.apply_complement_pass(selection, libraries[0])
    for flag in selection.flags:
        print(f"WARNING {flag}", file=sys.stderr)
    payload = bench.selection_set_to_dict(selection)
    table = bench.format_selections(selection) or "(no selection)"
    return CommandOutcome(EXIT_OK, _emit(args, payload, table))


def _cmd_bench(args) -> CommandOutcome:
    config = _load_config(args.config)
    backend = _make_backend(args.backend, config)
    lib = _load_library(args.lib, args.body_key)
    questions = bench.questions_from_json(_read_text(args.questions))
    _print_findings_stderr(bench.lint_questions(questions))
    prompts = _load_prompts(args.prompts)
    conditions = [
        guidance.build_condition(lib, name.strip(), prompts, hint_max=args.hint_max)
        for name in args.conditions.split(",") if name.strip()
    ]
    if not conditions:
        raise SdsrError("no conditions requested")
    results = bench.run_benchmark(
        conditions, questions, backend, out_dir=args.out_dir)
    payload = []
    for res in results:
        entry: dict = {"condition": res.condition}
        if res.report is None:
            entry["error"] = res.error
        else:
            entry.update({
                "primary_accuracy": res.report.primary_accuracy,
                "secondary_hit_rate": res.report.secondary_hit_rate,
                "total": res.report.total,
                "max_total": res.report.max_total,
            })
        payload.append(entry)
    table = bench.report_table(results)
    code = EXIT_TRANSPORT if any(r.report is None for r in results) else EXIT_OK
    return CommandOutcome(code, _emit(args, payload, table))


def _cmd_score(args) -> CommandOutcome:
    key = bench.questions_from_json(_read_text(args.key))
    raw = _read_text(args.selections)
    stripped = raw.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        selection = bench.selection_set_from_obj(json.loads(raw))
    else:
        selection, findings = bench.parse_response(raw, key)
        _print_findings_stderr(findings)
    report = bench.score_responses(selection, key)
    payload = {
        "total": report.total,
        "max_total": report.max_total,
        "primary_accuracy": report.primary_accuracy,
        "secondary_hit_rate": report.secondary_hit_rate,
        "per_question": [
            {"id": q.question_id, "primary_hit": q.primary_hit,
             "secondary_hit": q.secondary_hit, "score": q.score}
            for q in report.per_question
        ],
    }
    n_sec = round((report.max_total - len(report.per_question)) * 2)
    table = (
        f"total {report.total}/{report.max_total}  "
        f"primary {report.primary_hits}/{len(report.per_question)}  "
        f"secondary {report.secondary_hits}/{n_sec}"
    )
    return CommandOutcome(EXIT_OK, _emit(args, payload, table))


def _cmd_structure(args) -> CommandOutcome:
    text = _read_text(args.infile)
    rules = corpus.rules_from_json(_read_text(args.rules))
    doc = corpus.section_document(text, rules, doc_id=args.doc_id)
    summary = None
    if args.digests or args.refs:
        digests = json.loads(_read_text(args.digests)) if args.digests else {}
        refs = []
        if args.refs:
            refs = [
                corpus.CrossReference(
                    from_section=str(r["from_section"]), to_section=str(r["to_section"]),
                    locator=str(r.get("locator", "")), trigger=str(r.get("trigger", "")))
                for r in json.loads(_read_text(args.refs))
            ]
        summary, findings = corpus.build_doc_summary(doc, digests, refs, budget=args.budget)
        _print_findings_stderr(findings)
    _write_text(args.outfile, json.dumps(
        corpus.document_to_dict(doc, summary), ensure_ascii=False, indent=2) + "\n")
    payload = {
        "out": args.outfile,
        "sections": [{"section_id": s.section_id, "role": s.role} for s in doc.sections],
    }
    table = "\n".join(f"{s.section_id}\t{s.role}" for s in doc.sections)
    return CommandOutcome(EXIT_OK, _emit(args, payload, table))


def _cmd_coload(args) -> CommandOutcome:
    data = json.loads(_read_text(args.infile))
    doc, summary = corpus.document_from_dict(data)
    if summary is None:
        summary = corpus.DocSummary(doc_id=doc.doc_id)
    section_ids = sorted(corpus.resolve_coload(args.query, summary, doc))
    payload = {"sections": section_ids}
    return CommandOutcome(EXIT_OK, _emit(args, payload, "\n".join(section_ids)))


# --- parser -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sdsr",
        description="Summary-prefixed knowledge libraries: validate, route, benchmark.",
        epilog="Exit codes: 0 ok, 1 validation errors, 2 usage error, "
               "3 transport/backend failure.",
    )
    parser.add_argument("--format", choices=("json", "table"), default="table",
                        help="stdout payload shape (default: table)")
    parser.add_argument("--config", default=None,
                        help="JSON config file (remote backend settings, defaults)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common_lib(p):
        p.add_argument("--in", dest="infile", required=True, help="library file")
        p.add_argument("--body-key", default=None, help="top-level body key override")

    p = sub.add_parser("validate", help="check a library against every invariant")
    common_lib(p)
    p.add_argument("--strict", action="store_true", help="escalate warnings to errors")
    p.add_argument("--hint-max", type=int, default=100)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("summarize", help="build or rebuild the summary block")
    common_lib(p)
    p.add_argument("--out", dest="outfile", required=True)
    p.add_argument("--hint-max", type=int, default=100)
    p.set_defaults(func=_cmd_summarize)

    p = sub.add_parser("strip", help="remove the summary block")
    common_lib(p)
    p.add_argument("--out", dest="outfile", required=True)
    p.set_defaults(func=_cmd_strip)

    p = sub.add_parser("condition", help="materialize one guidance condition")
    common_lib(p)
    p.add_argument("--version", required=True, choices=("A", "B", "C", "D"))
    p.add_argument("--out-dir", required=True)
    p.add_argument("--prompts", default=None, help="prompt config JSON")
    p.add_argument("--hint-max", type=int, default=100)
    p.set_defaults(func=_cmd_condition)

    p = sub.add_parser("expand", help="inject one round of distractors")
    common_lib(p)
    p.add_argument("--round", type=int, default=None)
    p.add_argument("--specs", required=True, help="round config JSON")
    p.add_argument("--out", dest="outfile", required=True)
    p.add_argument("--hint-max", type=int, default=100)
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("route", help="tier-1 summary-scan routing over a directory")
    p.add_argument("--query", required=True)
    p.add_argument("--dir", dest="directory", required=True)
    p.add_argument("--ext", dest="extension", default=".json")
    p.add_argument("--block-size", type=int, default=prefix.DEFAULT_BLOCK_SIZE)
    p.add_argument("--k-max", type=int, default=engine.DEFAULT_K_MAX)
    p.add_argument("--threshold", type=float, default=engine.DEFAULT_THRESHOLD)
    p.add_argument("--backend", choices=("lexical", "remote"), default="lexical")
    p.add_argument("--lenient", action="store_true",
                   help="accept summaries that are not the first key")
    p.set_defaults(func=_cmd_route)

    p = sub.add_parser("select", help="tier-2 selection over loaded libraries")
    p.add_argument("--query", required=True)
    p.add_argument("--libs", required=True, help="comma-separated library files")
    p.add_argument("--body-key", default=None)
    p.add_argument("--backend", choices=("lexical", "remote"), default="lexical")
    p.add_argument("--complement-pass", action="store_true",
                   help="derive secondaries from complement fields")
    p.set_defaults(func=_cmd_select)

    p = sub.add_parser("bench", help="run guidance conditions over a question set")
    p.add_argument("--conditions", required=True, help="e.g. A,B,C,D")
    p.add_argument("--lib", required=True)
    p.add_argument("--body-key", default=None)
    p.add_argument("--questions", required=True)
    p.add_argument("--prompts", default=None)
    p.add_argument("--backend", choices=("lexical", "remote"), default="lexical")
    p.add_argument("--out-dir", default=None, help="persist transcripts and report.csv here")
    p.add_argument("--hint-max", type=int, default=100)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("score", help="score selections against an answer key")
    p.add_argument("--selections", required=True,
                   help="selection JSON or response-format text file")
    p.add_argument("--key", required=True, help="question/key JSON file")
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("structure", help="section a document by header rules")
    p.add_argument("--rules", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.add_argument("--doc-id", default="doc")
    p.add_argument("--digests", default=None, help="role-to-digest JSON")
    p.add_argument("--refs", default=None, help="cross-reference JSON")
    p.add_argument("--budget", type=int, default=corpus.DEFAULT_SUMMARY_BUDGET)
    p.set_defaults(func=_cmd_structure)

    p = sub.add_parser("coload", help="resolve which sections a query co-loads")
    p.add_argument("--query", required=True)
    p.add_argument("--in", dest="infile", required=True, help="structured .sdsr.json file")
    p.set_defaults(func=_cmd_coload)

    return parser


def dispatch(argv: list[str]) -> CommandOutcome:
    """Parse and run one command; never raises for expected failures."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed usage to stderr
        code = EXIT_OK if exc.code == 0 else EXIT_USAGE
        return CommandOutcome(code, "")
    try:
        return args.func(args)
    except TransportError as exc:
        print(f"ERROR {type(exc).__name__}: {exc}", file=sys.stderr)
        return CommandOutcome(EXIT_TRANSPORT, "")
    except IoFailure as exc:
        print(f"ERROR {type(exc).__name__}: {exc}", file=sys.stderr)
        return CommandOutcome(EXIT_USAGE, "")
    except SdsrError as exc:
        print(f"ERROR {type(exc).__name__}: {exc}", file=sys.stderr)
        return CommandOutcome(EXIT_VALIDATION, "")
    except ValueError as exc:
        print(f"ERROR {exc}", file=sys.stderr)
        return CommandOutcome(EXIT_USAGE, "")


def main(argv: list[str] | None = None) -> int:
    outcome = dispatch(sys.argv[1:] if argv is None else argv)
    if outcome.stdout_payload:
        print(outcome.stdout_payload)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
