"""Command-line interface.

Exit codes: 0 when a command completed (whatever the verdict), 2 when the
input was rejected, 3 when a resource budget refused the work.
"""

from __future__ import annotations

import argparse
import json
import sys

from .fragment import NotInFragment, Obs1Error, check_membership, obs1_transform, outer_positions_cnf
from .generate import GeneratorParams, QbfParams, generate_random_instance, generate_random_qbf
from .ground import DEFAULT_ORACLE_BUDGET, BudgetExceeded, oracle_solve
from .logic import Const
from .qbf import qbf_to_qealm, qbf_to_restricted
from .qdimacs import ParseError, parse_qdimacs, write_qdimacs
from .resolution import closure_check
from .scan import records_to_csv, scan_corpus
from .solver import solve_by_alternation
from .tptp import parse_tptp, write_tptp

EXIT_OK, EXIT_REJECTED, EXIT_BUDGET = 0, 2, 3


class Rejected(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise Rejected(str(e)) from e


def _problem(args):
    return parse_tptp(_read(args.file), args.include_dir)


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def cmd_check(args):
    problem = _problem(args)
    report = check_membership(problem)
    lines = [f"member: {'yes' if report.member else 'no'}"]
    for v in report.violations:
        lines.append(f"  {v.describe()}")
    if report.member:
        lines.append(f"fork indices: {sorted(report.fork_indices)}")
        lines.append(f"outer positions: {sorted(outer_positions_cnf(problem))}")
    payload = report.to_json()
    payload["outer_positions"] = sorted(outer_positions_cnf(problem))
    _emit(args, payload, "\n".join(lines))


def cmd_classify(args):
    problem = _problem(args)
    report = check_membership(problem)
    if not report.member:
        raise NotInFragment(report.violations)
    cls = report.classification
    _emit(args, {"fork_indices": sorted(report.fork_indices), "classification": cls.to_json() if cls else None},
          f"fork indices: {sorted(report.fork_indices)}\nclass: {cls if cls else 'n/a (no literals)'}")


def cmd_solve(args):
    result = solve_by_alternation(_problem(args))
    lines = [str(result.verdict)]
    for m in result.trace:
        if m.choices is None:
            lines.append(f"  {m.kind}: exhausted")
        else:
            lines.append(f"  {m.kind}: " + ", ".join(f"{k}={v}" for k, v in m.choices.items()))
    _emit(args, result.to_json(), "\n".join(lines))


def cmd_oracle(args):
    verdict = oracle_solve(_problem(args), budget=args.budget)
    _emit(args, {"verdict": str(verdict)}, str(verdict))


def cmd_translate(args):
    qbf = parse_qdimacs(_read(args.file))
    try:
        problem, meta = (qbf_to_restricted if args.restricted else qbf_to_qealm)(qbf)
    except ValueError as e:
        raise Rejected(str(e)) from e
    text = write_tptp(problem)
    if args.meta:
        with open(args.meta, "w", encoding="utf-8") as fh:
            json.dump(meta.to_json(), fh, indent=2)
    _emit(args, {"tptp": text, "meta": meta.to_json()}, text.rstrip("\n"))


def cmd_closure(args):
    report = closure_check(_problem(args), budget=args.budget)
    status = "saturated" if report.saturated else "step budget exhausted"
    lines = [f"derived: {report.derived} in {report.steps} steps ({status})",
             f"empty clause: {'yes' if report.empty_clause else 'no'}",
             f"violations: {len(report.violations)}"]
    for k, v in report.violations:
        lines.append(f"  derived clause {k}: {v.describe()}")
    _emit(args, report.to_json(with_derivations=args.derivations), "\n".join(lines))


def cmd_obs1(args):
    problem = _problem(args)
    try:
        out = obs1_transform(problem, Const(args.term))
    except Obs1Error as e:
        raise Rejected(str(e)) from e
    text = write_tptp(out)
    _emit(args, {"tptp": text}, text.rstrip("\n"))


def cmd_scan(args):
    records, summary = scan_corpus(args.directory, args.jobs, args.include_dir)
    if args.csv:
        sys.stdout.write(records_to_csv(records))
        return
    if args.json:
        print(json.dumps({"records": [r.to_json() for r in records], "summary": summary}, indent=2))
        return
    for r in records:
        forks = "" if r.fork_count is None else f" forks={r.fork_indices}"
        print(f"{r.path}: {r.status} epr={r.epr} member={r.member}{forks}")
    h = summary["fork_histogram"]
    print(f"total {summary['total']}, EPR {summary['epr']}, member {summary['member']}, "
          f"non-member {summary['non_member']}, errors {summary['errors']}, not CNF {summary['not_cnf']}")
    print(f"fork indices <=1: {h['<=1']}  =2: {h['=2']}  =3: {h['=3']}  >3: {h['>3']}")


def cmd_gen(args):
    if args.qbf:
        qbf = generate_random_qbf(QbfParams(args.seed, args.variables, args.clauses, args.max_literals))
        sys.stdout.write(write_qdimacs(qbf))
        return
    try:
        params = GeneratorParams(args.seed, args.constants, args.predicates, args.max_arity, args.clauses,
                                 args.max_literals)
    except ValueError as e:
        raise Rejected(str(e)) from e
    sys.stdout.write(write_tptp(generate_random_instance(params)))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--include-dir", default=None, help="root for TPTP include() (default: $TPTP)")

    p = argparse.ArgumentParser(prog="qealm", description="Analyse and solve QEALM-fragment EPR problems.")
    sub = p.add_subparsers(dest="command", required=True)

    def problem_cmd(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("file", help="TPTP CNF file, or - for stdin")
        sp.set_defaults(func=func)
        return sp

    problem_cmd("check", cmd_check, "membership report")
    problem_cmd("classify", cmd_classify, "fork indices and hierarchy class")
    problem_cmd("solve", cmd_solve, "decide by alternating search")
    sp = problem_cmd("oracle", cmd_oracle, "decide by full grounding")
    sp.add_argument("--budget", type=int, default=DEFAULT_ORACLE_BUDGET, help="max ground clause instances")
    sp = problem_cmd("closure-test", cmd_closure, "saturate under resolution, checking membership")
    sp.add_argument("--budget", type=int, default=10**4, help="max inference steps")
    sp.add_argument("--derivations", action="store_true", help="include derivations in JSON output")
    sp = problem_cmd("obs1", cmd_obs1, "fix the shared first argument to a constant")
    sp.add_argument("--term", required=True, help="constant to substitute")

    sp = sub.add_parser("translate-qbf", parents=[common], help="QDIMACS to TPTP")
    sp.add_argument("file")
    sp.add_argument("--restricted", action="store_true", help="Krom/Horn/implication-paired encoding")
    sp.add_argument("--meta", default=None, help="write translation metadata JSON here")
    sp.set_defaults(func=cmd_translate)

    sp = sub.add_parser("scan", parents=[common], help="scan a corpus directory")
    sp.add_argument("directory")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--csv", action="store_true")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("gen", parents=[common], help="seeded random member problem (or QBF)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--constants", type=int, default=3)
    sp.add_argument("--predicates", type=int, default=3)
    sp.add_argument("--max-arity", type=int, default=3)
    sp.add_argument("--clauses", type=int, default=6)
    sp.add_argument("--max-literals", type=int, default=3)
    sp.add_argument("--qbf", action="store_true", help="emit a random QDIMACS QBF instead")
    sp.add_argument("--variables", type=int, default=6, help="QBF variable count")
    sp.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ParseError as e:
        for d in e.diagnostics:
            print(d, file=sys.stderr)
        return EXIT_REJECTED
    except NotInFragment as e:
        print(e, file=sys.stderr)
        return EXIT_REJECTED
    except Rejected as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_REJECTED
    except BudgetExceeded as e:
        print(f"budget: {e}", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
