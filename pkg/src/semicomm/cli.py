"""Command-line front end.

Exit codes: 0 success or claim holds, 1 violation or failed proof, 2 usage
or parse error, 3 hypothesis never satisfied. Results go to stdout,
diagnostics to stderr. ``--json`` switches every subcommand to one JSON
record per line.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import census, construct, proofcheck, verify
from .classify import classify, consecutive_powers
from .decompose import audit_prop_1_2, decompose_semilattice, render_decomposition, write_decomposition
from .errors import ContractViolation, InputError, ResourceLimitError
from .proofcheck.prover9 import THEORIES, emit_prover9
from .table import CayleyTable, format_sg, load_sg, save_sg

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_NEVER = 0, 1, 2, 3


def _emit(args, record: dict, text: str) -> None:
    if args.json:
        print(json.dumps(record, sort_keys=True, default=_jsonable))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _jsonable(obj):
    if isinstance(obj, CayleyTable):
        return obj.rows()
    if hasattr(obj, "tolist"):
        return obj.tolist()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    return str(obj)


def cmd_construct(args) -> int:
    S = construct.build(args.name, *args.params)
    comment = " ".join([args.name, *map(str, args.params)])
    if args.output:
        save_sg(S, args.output, comment)
        _emit(args, {"name": args.name, "order": S.order, "path": args.output}, f"wrote {args.output} (order {S.order})")
    else:
        _emit(args, {"name": args.name, "order": S.order, "names": S.names, "table": S.rows()}, format_sg(S, comment))
    return EXIT_OK


def cmd_classify(args) -> int:
    S = load_sg(args.file)
    report = classify(S)
    record = {"file": args.file, **report.as_dict()}
    text = report.render()
    if args.bound:
        cp = consecutive_powers(S, args.bound)
        record["consecutive_powers"] = {"holds": cp.holds, "triples": cp.triples, "witness": cp.witness}
        text += f"consecutive_powers={'true' if cp.holds else 'false'}\n"
    _emit(args, record, text)
    return EXIT_OK


def cmd_decompose(args) -> int:
    S = load_sg(args.file)
    dec = decompose_semilattice(S)
    audit = audit_prop_1_2(S)
    record = {
        "file": args.file,
        "classes": dec.partition.classes(),
        "quotient": dec.meet_table.rows(),
        "separative": audit.separative,
        "components_cancellative": audit.all_components_cancellative,
    }
    text = render_decomposition(dec)
    text += (
        f"# separative={str(audit.separative).lower()} "
        f"components_cancellative={str(audit.all_components_cancellative).lower()}\n"
    )
    if args.output:
        stem = os.path.splitext(os.path.basename(args.file))[0]
        paths = write_decomposition(dec, args.output, stem)
        record["paths"] = paths
        text += "".join(f"# wrote {p}\n" for p in paths)
    _emit(args, record, text)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    n = args.order
    if args.jobs > 1:
        census.all_tables(n, jobs=args.jobs)  # warm the cache in parallel
    if args.count_only:
        count = census.count_semigroups(n, up_to_iso=args.iso, filter=args.filter)
        _emit(args, {"order": n, "iso": args.iso, "filter": args.filter, "count": count}, str(count))
        return EXIT_OK
    first = True
    for S in census.enumerate_semigroups(n, filter=args.filter, up_to_iso=args.iso):
        if args.json:
            print(json.dumps({"order": n, "table": S.rows()}))
        else:
            if not first:
                sys.stdout.write("\n")
            sys.stdout.write(format_sg(S))
        first = False
    return EXIT_OK


def _audit_text(res: verify.AuditResult) -> str:
    lines = [
        f"claim={res.claim}",
        f"universe={res.universe}",
        f"verdict={res.verdict}",
        f"models_checked={res.models_checked}",
        f"hypothesis_count={res.hypothesis_count}",
    ]
    for name, ok, detail in res.checks:
        lines.append(f"check {'pass' if ok else 'FAIL'}: {name}" + (f" [{detail}]" if detail else ""))
    if res.hypothesis_witness is not None:
        lines.append(f"hypothesis_witness={res.hypothesis_witness}")
    for model, witness in res.violations[:5]:
        lines.append(f"violation witness={witness}")
        if isinstance(model, CayleyTable):
            lines.append(format_sg(model).rstrip())
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    res = verify.audit_theorem(
        args.claim, args.max_order, p=args.p, q=args.q, k=args.k, bound=args.bound, jobs=args.jobs
    )
    _emit(args, res.as_record(), _audit_text(res))
    return res.exit_code


def cmd_audit_example(args) -> int:
    res = verify.audit_counterexample(args.example)
    _emit(args, res.as_record(), _audit_text(res))
    return res.exit_code


def _load_script(path: str) -> proofcheck.ProofScript:
    if os.path.exists(path):
        with open(path) as fh:
            text = fh.read()
        return proofcheck.parse_script(text, os.path.splitext(os.path.basename(path))[0])
    # fall back to a bundled script of the same name
    stem = os.path.splitext(os.path.basename(path))[0]
    if stem in proofcheck.BUNDLED:
        return proofcheck.parse_script(proofcheck.bundled_text(stem), stem)
    raise InputError(f"no such proof script: {path} (bundled: {', '.join(proofcheck.BUNDLED)})")


def cmd_replay(args) -> int:
    script = _load_script(args.file)
    report = proofcheck.check_proof(script)
    record = {
        "script": script.name,
        "mode": script.mode,
        "ok": report.ok,
        "claims": [
            {
                "name": c.name,
                "goal": str(c.goal),
                "ok": c.ok,
                "steps": [
                    {"line": s.line, "step": s.step, "before": s.before, "after": s.after, "ok": s.ok, "error": s.message}
                    for s in c.steps
                ],
            }
            for c in report.claims
        ],
    }
    _emit(args, record, report.render(verbose=args.verbose))
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_emit_prover9(args) -> int:
    text = emit_prover9(args.p, args.q, args.theory, wrap=args.wrap)
    _emit(args, {"p": args.p, "q": args.q, "theory": args.theory, "text": text}, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="one JSON record per line")

    parser = argparse.ArgumentParser(prog="semicomm", description="Finite semigroup commutativity toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a named semigroup")
    p.add_argument("name", choices=sorted(construct.NAMED))
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("classify", parents=[common], help="class membership of a table")
    p.add_argument("file")
    p.add_argument("--bound", type=int, default=0, help="also test consecutive power identities up to this exponent")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("decompose", parents=[common], help="least semilattice decomposition")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="directory for quotient and component .sg files")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("enumerate", parents=[common], help="list or count semigroups of one order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--iso", action="store_true", help="one table per isomorphism class")
    p.add_argument("--filter", choices=sorted(census.BATCH_FILTERS))
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common], help="audit a theorem over the census")
    p.add_argument("--claim", required=True, choices=verify.CLAIMS)
    p.add_argument("--max-order", type=int, default=4)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--bound", type=int, default=8)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("audit-example", parents=[common], help="re-check a counterexample")
    p.add_argument("example", choices=sorted(verify.EXAMPLES))
    p.set_defaults(func=cmd_audit_example)

    p = sub.add_parser("replay", parents=[common], help="check a .prf proof script")
    p.add_argument("file", help="path, or the name of a bundled script")
    p.add_argument("-v", "--verbose", action="store_true", help="show every step")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("emit-prover9", parents=[common], help="Prover9 input for a (p, q) instance")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--theory", choices=THEORIES, default="group")
    p.add_argument("--wrap", action="store_true", help="wrap in formulas(...) lists")
    p.set_defaults(func=cmd_emit_prover9)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, ContractViolation, ResourceLimitError, OSError) as exc:
        print(f"semicomm {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
