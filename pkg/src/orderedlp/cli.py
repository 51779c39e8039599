"""Command line front end.

    orderedlp FILE [--mode extended|preferred|proper] [--dialect olp|lpod|cr|repair]
                   [--constraints FILE] [--max N] [--oracle] [--format text|json]

Exit status: 0 when at least one answer set is printed, 1 when there is none,
2 on input errors (syntax errors carry ``line:column``).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .core import (
    RESERVED_PREFIX,
    HeadKind,
    Interpretation,
    OrderedProgram,
    Program,
    ProgramKind,
    format_literals,
    validate_order,
)
from .oracle import OracleSizeError, brute_force_extended, brute_force_preferred
from .prefsolve import preferred_answer_sets
from .semantics import AnswerSetReport, ReportKind, enumerate_extended_answer_sets, is_proper, satisfied_rules
from .syntax import DIALECTS, ParseError, SourceDocument, parse, parse_constraints, parse_database
from .transforms import ConstraintClause, CrProgram, Database, cr_translate, db_repair_program, lpod_translate

MODES = ("extended", "preferred", "proper")
ORACLE_ATOMS = 14


@dataclass(frozen=True)
class RepairDocument:
    database: frozenset
    constraints: tuple
    dialect: str = "repair"


def _refs(doc: SourceDocument, ref: str) -> list:
    name, _, index = ref.partition(".")
    rules = doc.module(name).rules
    return [rules[int(index) - 1]] if index else list(rules)


def _edges(doc: SourceDocument, keep=lambda r: True, strict=False) -> list:
    edges = []
    for chain in doc.order_assertions:
        for lo, hi in zip(chain, chain[1:]):
            groups = []
            for ref in (lo, hi):
                rules = _refs(doc, ref)
                if strict and "." in ref and not all(keep(r) for r in rules):
                    raise ValueError(f"order assertion: {ref} is not a cr rule")
                groups.append([r.label for r in rules if keep(r)])
            edges.extend((x, y) for x in groups[0] for y in groups[1])
    return edges


def elaborate(doc) -> OrderedProgram:
    """Turn a parsed document into the ordered program that is solved."""
    if isinstance(doc, RepairDocument):
        return db_repair_program(Database(doc.database), [ConstraintClause(c) for c in doc.constraints])
    rules = doc.rules
    if doc.dialect == "lpod":
        return lpod_translate(Program(rules, ProgramKind.LPOD))
    if doc.dialect == "cr":
        is_cr = lambda r: r.kind is HeadKind.CR  # noqa: E731
        cr = [r for r in rules if is_cr(r)]
        pref = validate_order([r.label for r in cr], _edges(doc, is_cr, strict=True))
        return cr_translate(CrProgram([r for r in rules if not is_cr(r)], cr, pref))
    naf = any(e.naf for r in rules for e in r.head + tuple(r.body))
    prog = Program(rules, ProgramKind.ELP if naf else ProgramKind.SLP)
    return OrderedProgram(prog, validate_order(prog.labels, _edges(doc)))


def load(path: str, dialect: str, constraints: str | None = None):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if dialect == "repair":
        if constraints is None:
            raise ValueError("the repair dialect needs --constraints FILE")
        with open(constraints, encoding="utf-8") as fh:
            return RepairDocument(parse_database(text), parse_constraints(fh.read()))
    return parse(text, dialect)


def solve(op: OrderedProgram, mode: str, oracle: bool = False) -> list:
    """Answer sets of ``op`` for ``mode`` as reports, sorted by their literals."""
    if not oracle:
        if mode == "extended":
            sets = enumerate_extended_answer_sets(op.program)
        else:
            return preferred_answer_sets(op, proper=mode == "proper")
    elif mode == "extended":
        sets = brute_force_extended(op.program, ORACLE_ATOMS)
    else:
        sets = brute_force_preferred(op, ORACLE_ATOMS, proper=mode == "proper")
    reports = []
    for m in sets:
        labels = frozenset(r.label for r in satisfied_rules(op.program, m))
        if mode == "extended":
            kind = ReportKind.EXTENDED
        else:
            kind = ReportKind.PROPER_PREFERRED if is_proper(m, op) else ReportKind.PREFERRED
        reports.append(AnswerSetReport(Interpretation(m), labels, kind))
    reports.sort(key=lambda rep: sorted(str(x) for x in rep.interpretation))
    return reports


def _visible(doc, m) -> Interpretation:
    if getattr(doc, "dialect", None) == "lpod":
        return Interpretation(l for l in m if not l.atom.startswith(RESERVED_PREFIX))
    return Interpretation(m)


def record(doc, op: OrderedProgram, rep: AnswerSetReport) -> dict:
    """One JSON record; see the README for the field list."""
    order = op.program.labels
    out = {
        "literals": sorted(str(l) for l in _visible(doc, rep.interpretation)),
        "satisfied": [x for x in order if x in rep.reduct_labels],
        "defeated": [x for x in order if x not in rep.reduct_labels],
        "proper": is_proper(rep.interpretation, op),
    }
    if isinstance(doc, RepairDocument):
        out["added"] = sorted(str(l) for l in rep.interpretation - doc.database)
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orderedlp", description="Preferred answer sets of ordered logic programs.")
    ap.add_argument("file", help="program file (for --dialect repair: the database, one literal per line)")
    ap.add_argument("--mode", choices=MODES, default="proper")
    ap.add_argument("--dialect", choices=DIALECTS, default="olp")
    ap.add_argument("--constraints", help="constraint file for --dialect repair (disjuncts separated by ';')")
    ap.add_argument("--max", type=int, default=None, metavar="N", help="print at most N answer sets")
    ap.add_argument("--oracle", action="store_true", help="use exhaustive enumeration instead of the solver")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    return ap


def run(args, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    if not isinstance(args, argparse.Namespace):
        try:
            args = build_parser().parse_args(args)
        except SystemExit as exc:
            return 2 if exc.code else 0
    if args.max is not None and args.max < 0:
        print("orderedlp: error: --max must be nonnegative", file=err)
        return 2
    try:
        doc = load(args.file, args.dialect, args.constraints)
        op = elaborate(doc)
        reports = solve(op, args.mode, args.oracle)
    except ParseError as exc:
        where = f"{exc.line}:{exc.column}:" if exc.line else ""
        print(f"{args.file}:{where} error: {exc.message}", file=err)
        return 2
    except (OSError, ValueError, OracleSizeError) as exc:
        print(f"{args.file}: error: {exc}", file=err)
        return 2
    if args.max is not None:
        reports = reports[: args.max]
    if args.format == "json":
        doc_out = {
            "dialect": args.dialect,
            "mode": args.mode,
            "solver": "oracle" if args.oracle else "aset",
            "count": len(reports),
            "answer_sets": [record(doc, op, rep) for rep in reports],
        }
        print(json.dumps(doc_out, indent=2), file=out)
    else:
        for rep in reports:
            print(format_literals(_visible(doc, rep.interpretation)), file=out)
        if not reports:
            print("no answer sets", file=err)
    return 0 if reports else 1


def main(argv=None) -> int:
    return run(build_parser().parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
