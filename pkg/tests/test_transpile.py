import random
import re

import pytest

from mup.engine import Engine, SolveConfig
from mup.errors import TranslateError
from mup.oracle import generate_case
from mup.syntax import format_program, parse_program, pretty_goal
from mup.transpile import translate

from conftest import collect_goal, multiset


def test_member_hard_cut_shape():
    program = parse_program("member(X,[Y|L]) :- (Y = X) # member(X,L).")
    out = translate(program, "hard_cut")
    lines = [l for l in out.splitlines() if l and not l.startswith("%")]
    assert lines[0] == "member(X, [Y|L]) :- '$choice_1'(X, Y, L)."
    assert lines[1] == "'$choice_1'(X, Y, L) :- Y = X, !."
    assert lines[2] == "'$choice_1'(X, Y, L) :- member(X, L)."


def test_member_soft_cut_shape():
    program = parse_program("member(X,[Y|L]) :- (Y = X) # member(X,L).")
    out = translate(program, "soft_cut")
    assert "*->" in out
    assert "'$choice_1'(X, Y, L)" in out


def test_identity_on_choice_free_programs():
    text = """
    p(a).
    p(X) :- q(X), r(X, [1, 2|T]).
    q(b) :- 1 < 2.
    """
    program = parse_program(text)
    out = translate(program, "hard_cut")
    emitted = [l for l in out.splitlines() if l and not l.startswith("%")]
    original = format_program(program).strip().splitlines()
    assert [_squash(l) for l in emitted] == [_squash(l) for l in original]


def _squash(line):
    return re.sub(r"\s+", "", line)


def test_collision_with_aux_namespace():
    program = parse_program("'$choice_1'(x).")
    with pytest.raises(TranslateError):
        translate(program, "hard_cut")
    program = parse_program("p :- '$choice_9'.")
    with pytest.raises(TranslateError):
        translate(program, "hard_cut")


def test_nested_choices_get_own_auxiliaries():
    program = parse_program("p(X) :- ((X = 1 # X = 2) # X = 3).")
    out = translate(program, "hard_cut")
    assert "'$choice_1'" in out and "'$choice_2'" in out
    reparsed = parse_program(out, dialect="prolog")
    assert len(reparsed.clauses) == 1 + 2 + 2


def test_output_reparses_in_prolog_dialect():
    program = parse_program(
        """
        max(X,Y,M) :- (X >= Y, M = X) # (X < Y, M = Y).
        p(X) :- (q(X) ; fail) # (X = 0 # true).
        q(1).
        """
    )
    for mode in ("hard_cut", "soft_cut"):
        out = translate(program, mode)
        reparsed = parse_program(out, dialect="prolog")
        assert len(reparsed.clauses) >= len(program.clauses)


def test_max_translation_behaviour(max_program=None):
    program = parse_program("max(X,Y,M) :- (X >= Y, M = X) # (X < Y, M = Y).")
    translated = parse_program(translate(program, "hard_cut"), dialect="prolog")
    from mup.syntax import parse_query

    query = parse_query("max(3,9,M).")
    direct = Engine(program, SolveConfig(commit_mode="first")).solve_collect(
        query.goal, query.answer_vars
    )
    via_cut = Engine(translated).solve_collect(query.goal, query.answer_vars)
    assert [s.render() for s in direct.solutions] == ["M = 9"]
    assert multiset(direct.solutions) == multiset(via_cut.solutions)


CURATED = [
    ("member(X,[Y|L]) :- (Y = X) # member(X,L).", "member(X,[a,b,c])."),
    ("member(X,[Y|L]) :- (Y = X) ; member(X,L).", "member(X,[a,b,c])."),
    (
        "f(X,Y) :- (X >= 2, Y = 3) # (X < 2, Y = 0).",
        "f(1,Y).",
    ),
    (
        """
        son(X,Y) :- (male(X), father(Y,X)) # (female(X), mother(Y,X)).
        male(tom). father(bob,tom). father(jim,tom).
        female(ann). mother(sue,ann).
        """,
        "son(tom,Y).",
    ),
    (
        "p(X) :- ((X = 1 ; X = 2) # X = 3). p(4).",
        "p(X).",
    ),
    (
        "p(X) :- ((fail # fail) # (X = 2 # X = 3)).",
        "p(X).",
    ),
]


@pytest.mark.parametrize("mode", ["hard_cut", "soft_cut"])
def test_conformance_curated(mode):
    from mup.syntax import parse_query

    engine_mode = "first" if mode == "hard_cut" else "soft"
    for program_text, query_text in CURATED:
        program = parse_program(program_text)
        translated = parse_program(translate(program, mode), dialect="prolog")
        query = parse_query(query_text)
        direct = Engine(
            program, SolveConfig(commit_mode=engine_mode)
        ).solve_collect(query.goal, query.answer_vars)
        via = Engine(translated).solve_collect(query.goal, query.answer_vars)
        assert multiset(direct.solutions) == multiset(via.solutions), (
            program_text,
            query_text,
            mode,
        )


@pytest.mark.parametrize("mode", ["hard_cut", "soft_cut"])
def test_conformance_generated_corpus(mode):
    # Each query is wrapped in a driver clause before translation, so
    # choices inside the query go through the translator as well; both
    # sides then run the same plain driver call.
    from mup.syntax import Call, Clause, Program
    from mup.terms import Compound, Const

    engine_mode = "first" if mode == "hard_cut" else "soft"
    rng = random.Random(314159)
    checked = 0
    for i in range(60):
        case = generate_case(rng.randint(0, 10**9))
        answer_vars = _answer_vars(case.goal)
        if answer_vars:
            head = Compound("query_entry", tuple(answer_vars))
        else:
            head = Const("query_entry")
        wrapped = Program(case.program.clauses + [Clause(head, case.goal)])
        driver_goal = Call(head)

        out = translate(wrapped, mode)
        translated = parse_program(out, dialect="prolog")
        cfg = SolveConfig(
            commit_mode=engine_mode, depth_limit=40, unknown_predicate="fail"
        )
        direct = Engine(wrapped, cfg).solve_collect(driver_goal, answer_vars)
        via = Engine(translated, cfg).solve_collect(driver_goal, answer_vars)
        assert direct.outcome == "exhausted", case.describe()
        assert via.outcome == "exhausted"
        assert multiset(direct.solutions) == multiset(via.solutions), (
            case.describe(),
            mode,
        )
        checked += 1
    assert checked == 60


def _answer_vars(goal):
    from mup.syntax import free_goal_vars

    return [v for v in free_goal_vars(goal) if v.name != "_"]
