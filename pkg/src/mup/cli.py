"""Command-line entry point: run, repl, translate, selftest."""

import argparse
import os
import sys

from mup.builtins import IoPorts
from mup.engine import ERRORED, Engine, SolveConfig
from mup.errors import MupError
from mup.syntax import Program, parse_program
from mup.transpile import translate


def _engine_flags(parser):
    parser.add_argument(
        "--commit", choices=("soft", "first"), default="soft",
        help="committed-choice mode: keep the chosen disjunct's "
             "alternatives (soft) or only its first solution (first)",
    )
    parser.add_argument(
        "--occurs-check", action="store_true",
        help="enable the occurs check during unification",
    )
    parser.add_argument(
        "--depth-limit", type=int, metavar="N",
        default=_env_int("MUP_DEPTH_LIMIT"),
        help="bound on backchaining depth (default: $MUP_DEPTH_LIMIT)",
    )
    parser.add_argument(
        "--max-solutions", type=int, metavar="N", default=None,
        help="stop after N solutions",
    )
    parser.add_argument(
        "--trace", action="store_true",
        help="print one trace event per line on stderr",
    )
    parser.add_argument(
        "--unknown", choices=("error", "fail"), default="error",
        help="treat calls to undefined predicates as an error or as failure",
    )


def _env_int(name):
    value = os.environ.get(name)
    if not value:
        return None
    try:
        return int(value)
    except ValueError:
        return None


def _config(args):
    return SolveConfig(
        commit_mode=args.commit,
        occurs_check=args.occurs_check,
        depth_limit=args.depth_limit,
        max_solutions=args.max_solutions,
        unknown_predicate=args.unknown,
    )


def _tracer(args, err):
    if not args.trace:
        return None
    return lambda event: print(event.line(), file=err)


def _load_file(path, dialect="choice"):
    with open(path, encoding="utf-8") as handle:
        return parse_program(handle.read(), dialect=dialect)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mup",
        description="Logic programming with committed-choice disjunction "
                    "(G0 # G1 runs the first provable disjunct and discards "
                    "the other).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one query against a program file")
    p_run.add_argument("file", help="program file (.mpl)")
    p_run.add_argument("-q", "--query", required=True, metavar="GOAL.",
                       help="query text, terminated by '.'")
    _engine_flags(p_run)

    p_repl = sub.add_parser("repl", help="interactive query shell")
    p_repl.add_argument("files", nargs="*", help="program files to preload")
    _engine_flags(p_repl)

    p_tr = sub.add_parser("translate", help="compile to cut-based Prolog")
    p_tr.add_argument("file", help="program file (.mpl)")
    p_tr.add_argument("-o", "--output", required=True, metavar="OUT.pl")
    p_tr.add_argument("--mode", choices=("hard", "soft"), default="hard",
                      help="encoding of choice: (G,!);H or (G *-> true ; H)")

    p_st = sub.add_parser(
        "selftest",
        help="differential test of the engine against the brute-force oracles",
    )
    p_st.add_argument("--seed", type=int, default=0)
    p_st.add_argument("--cases", type=int, default=300)
    p_st.add_argument("--depth", type=int, default=10)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "repl":
            return _cmd_repl(args)
        if args.command == "translate":
            return _cmd_translate(args)
        return _cmd_selftest(args)
    except MupError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def _cmd_run(args, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    program = _load_file(args.file)
    last_char = ["\n"]

    def write(text):
        if text:
            last_char[0] = text[-1]
        out.write(text)

    io = IoPorts(write=write)
    engine = Engine(program, _config(args), io=io, trace=_tracer(args, err))
    result = engine.run_query(args.query)
    if last_char[0] != "\n":
        print(file=out)  # separate program output (write/1) from answers
    for solution in result.solutions:
        print("%s." % solution.render(), file=out)
    if result.outcome == ERRORED:
        print("error: %s" % result.error, file=err)
        return 2
    if result.outcome == "limited":
        print("% search was limited", file=err)
    if not result.solutions:
        print("false.", file=out)
        return 1
    return 0


def _cmd_translate(args):
    program = _load_file(args.file)
    mode = "hard_cut" if args.mode == "hard" else "soft_cut"
    text = translate(program, mode, source_name=os.path.basename(args.file))
    with open(args.output, "w", encoding="utf-8") as handle:
        handle.write(text)
    return 0


def _cmd_selftest(args):
    from mup.oracle import selftest

    report = selftest(seed=args.seed, cases=args.cases, depth=args.depth)
    print(report.summary())
    for case, mode in report.solution_mismatches:
        print("counterexample (mode %s):" % mode)
        print(case.describe())
    for case in report.success_mismatches:
        print("counterexample (angelic disagreement):")
        print(case.describe())
    if report.ok:
        print("selftest passed")
        return 0
    print("selftest FAILED")
    return 1


def _cmd_repl(args):
    clauses = []
    for path in args.files:
        clauses.extend(_load_file(path).clauses)
    repl_loop(Program(clauses), _config(args), trace_on=args.trace)
    return 0


def repl_loop(program, cfg, inp=None, out=None, trace_on=False):
    """Interactive prompt: query, then ';' for more answers, '.' to stop.

    Directives: ':load FILE.'  ':trace on|off.'  ':commit soft|first.'
    ':quit.'
    """
    inp = inp or sys.stdin
    out = out or sys.stdout
    clauses = list(program.clauses)
    last_char = ["\n"]

    def emit(text):
        if text:
            last_char[0] = text[-1]
        out.write(text)
        try:
            out.flush()
        except (AttributeError, ValueError):
            pass

    io = IoPorts(read_line=lambda: inp.readline() or None, write=emit)
    tracer = (lambda e: emit("%s\n" % e.line())) if trace_on else None

    emit("mup shell; ':quit.' leaves, '#' is committed choice\n")
    while True:
        emit("?- ")
        line = inp.readline()
        if not line:
            emit("\n")
            return
        line = line.strip()
        if not line:
            continue
        if line.startswith(":"):
            directive = line.rstrip(".").strip()
            parts = directive[1:].split()
            if not parts:
                emit("unknown directive\n")
                continue
            if parts[0] == "quit":
                return
            if parts[0] == "load" and len(parts) == 2:
                try:
                    loaded = _load_file(parts[1])
                except (MupError, OSError) as exc:
                    emit("error: %s\n" % exc)
                    continue
                clauses.extend(loaded.clauses)
                try:
                    program = Program(clauses)
                except MupError as exc:
                    clauses = list(program.clauses)
                    emit("error: %s\n" % exc)
                    continue
                emit("loaded %s\n" % parts[1])
                continue
            if parts[0] == "trace" and len(parts) == 2 and parts[1] in ("on", "off"):
                tracer = (
                    (lambda e: emit("%s\n" % e.line()))
                    if parts[1] == "on"
                    else None
                )
                emit("trace %s\n" % parts[1])
                continue
            if parts[0] == "commit" and len(parts) == 2 and parts[1] in ("soft", "first"):
                cfg = SolveConfig(
                    commit_mode=parts[1],
                    occurs_check=cfg.occurs_check,
                    depth_limit=cfg.depth_limit,
                    max_solutions=cfg.max_solutions,
                    unknown_predicate=cfg.unknown_predicate,
                )
                emit("commit mode: %s\n" % parts[1])
                continue
            emit("unknown directive: %s\n" % line)
            continue

        engine = Engine(program, cfg, io=io, trace=tracer)
        try:
            from mup.syntax import parse_query

            query = parse_query(line)
        except MupError as exc:
            emit("error: %s\n" % exc)
            continue
        stream = engine.solve(query.goal, query.answer_vars)
        _enumerate_answers(stream, inp, emit, last_char)


def _enumerate_answers(stream, inp, emit, last_char):
    while True:
        try:
            solution = next(stream)
        except StopIteration:
            if last_char[0] != "\n":
                emit("\n")
            emit("false.\n")
            return
        except MupError as exc:
            emit("error: %s\n" % exc)
            return
        if last_char[0] != "\n":
            emit("\n")  # separate program output (write/1) from the answer
        emit(solution.render())
        answer = inp.readline()
        if answer is None or answer == "":
            emit(".\n")
            return
        if answer.strip() == ";":
            emit(";\n")
            continue
        emit(".\n")
        return


if __name__ == "__main__":
    sys.exit(main())
