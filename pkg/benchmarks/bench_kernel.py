#!/usr/bin/env python3
"""Benchmark: compiled kernel vs pure-Python fallback.

The kernel backend is fixed at import time, so each measurement runs in a
subprocess with MUP_PURE_PYTHON set or cleared; this driver then prints a
comparison table.

    python benchmarks/bench_kernel.py            # compare both backends
    python benchmarks/bench_kernel.py --worker   # used internally

Workloads are engine-level (the kernel is exercised through real
solving): naive reverse, deterministic membership over a long list, and
a raw unification stress loop.
"""

import argparse
import json
import os
import subprocess
import sys
import time

NREV_LEN = 24
MEMBER_LEN = 300
UNIFY_REPS = 2000


def build_workloads():
    from mup.engine import Engine, SolveConfig
    from mup.syntax import parse_program, parse_query
    from mup.terms import Bindings, Compound, Const, Num, fresh_var, mk_list
    from mup.unify import unify

    nrev = parse_program(
        """
        app([], L, L).
        app([H|T], L, [H|R]) :- app(T, L, R).
        nrev([], []).
        nrev([H|T], R) :- nrev(T, RT), app(RT, [H], R).
        """
    )
    nrev_query = "nrev([%s], R)." % ", ".join(
        str(i) for i in range(NREV_LEN)
    )

    member = parse_program("member(X,[Y|L]) :- (Y = X) # member(X,L).")
    member_query = "member(%d, [%s])." % (
        MEMBER_LEN - 1,
        ", ".join(str(i) for i in range(MEMBER_LEN)),
    )

    def run_nrev():
        result = Engine(nrev).run_query(nrev_query)
        assert len(result.solutions) == 1

    def run_member():
        result = Engine(member).run_query(member_query)
        assert len(result.solutions) == 1

    def run_unify():
        def deep(n, leaf):
            term = leaf
            for _ in range(n):
                term = Compound("f", (term, Num(n)))
            return term

        for _ in range(UNIFY_REPS):
            b = Bindings()
            x = fresh_var("X")
            ok = unify(deep(40, x), deep(40, Const("a")), b)
            assert ok

    return [
        ("nrev(%d)" % NREV_LEN, run_nrev),
        ("member last of %d" % MEMBER_LEN, run_member),
        ("unify depth-40 x%d" % UNIFY_REPS, run_unify),
    ]


def worker():
    import mup

    results = {"impl": mup.kernel_impl, "times": {}}
    for name, fn in build_workloads():
        fn()  # warm-up
        best = min(_timed(fn) for _ in range(3))
        results["times"][name] = best
    print(json.dumps(results))


def _timed(fn):
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def spawn(pure):
    env = dict(os.environ)
    if pure:
        env["MUP_PURE_PYTHON"] = "1"
    else:
        env.pop("MUP_PURE_PYTHON", None)
    proc = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--worker"],
        capture_output=True,
        text=True,
        env=env,
    )
    if proc.returncode != 0:
        raise SystemExit("worker failed:\n%s" % proc.stderr)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--worker", action="store_true")
    args = parser.parse_args()
    if args.worker:
        worker()
        return

    pure = spawn(pure=True)
    fast = spawn(pure=False)
    if fast["impl"] == "python":
        print("note: compiled kernel unavailable; comparing python to itself")

    print("%-28s %12s %12s %8s" % ("workload", "python", fast["impl"], "speedup"))
    for name in pure["times"]:
        tp = pure["times"][name]
        tf = fast["times"][name]
        print(
            "%-28s %10.1f ms %10.1f ms %7.2fx"
            % (name, tp * 1000, tf * 1000, tp / tf if tf else float("inf"))
        )


if __name__ == "__main__":
    main()
