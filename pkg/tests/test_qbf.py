import pytest
from hypothesis import given, settings, strategies as st

from qealm.fragment import check_membership, fork_indices, is_member
from qealm.generate import QbfParams, generate_random_qbf
from qealm.ground import BudgetExceeded, Verdict, oracle_solve
from qealm.logic import Clause, Const, Literal, Problem, Var
from qealm.qbf import pad_prefix, qbf_expand, qbf_to_qealm, qbf_to_restricted, restricted_shape_violations
from qealm.qdimacs import QbfProblem, QuantifierBlock

E = lambda *vs: QuantifierBlock("e", vs)  # noqa: E731
A = lambda *vs: QuantifierBlock("a", vs)  # noqa: E731
ZERO, ONE = Const("0"), Const("1")


def qbf(prefix, matrix):
    n = max([abs(l) for c in matrix for l in c] + [v for b in prefix for v in b.variables] + [0])
    return QbfProblem(tuple(prefix), tuple(tuple(c) for c in matrix), n)


def p(positive, *args):
    return Literal(positive, "p", tuple(args))


def test_expand_examples():
    assert qbf_expand(qbf([E(1)], [[1]])) is True
    assert qbf_expand(qbf([A(1)], [[1]])) is False
    assert qbf_expand(qbf([E(1), A(2)], [[1, 2], [-1, -2]])) is False


def test_expand_budget_and_closure():
    with pytest.raises(BudgetExceeded):
        qbf_expand(qbf([E(*range(1, 30))], [[1]]))
    with pytest.raises(ValueError):
        qbf_expand(QbfProblem((E(1),), ((1, 2),), 2))


def test_plain_translation_example():
    problem, meta = qbf_to_qealm(qbf([E(1), A(2), E(3)], [[1, 2, -3]]))
    assert problem.clauses == (Clause((Literal(True, "p1", ()), Literal(False, "p3", (ZERO,)))),)
    assert problem.constants == {ZERO, ONE}
    assert meta.predicates == {1: ("p1", 0), 3: ("p3", 1)}
    assert meta.universal_order == {2: 1}


def test_plain_translation_variable_argument():
    problem, _ = qbf_to_qealm(qbf([A(1), E(2)], [[2]]))
    assert problem.clauses == (Clause((Literal(True, "p2", (Var("U1"),)),)),)


def test_plain_translation_drops_tautologies_and_empties_universal_clauses():
    problem, _ = qbf_to_qealm(qbf([A(1), E(2)], [[1, -1, 2], [1]]))
    assert problem.clauses == (Clause(()),)


def test_plain_translation_rejects_open_qbf():
    with pytest.raises(ValueError):
        qbf_to_qealm(QbfProblem((E(1),), ((1, 2),), 2))
    with pytest.raises(ValueError):
        qbf_to_restricted(QbfProblem((E(1),), ((1, 2),), 2))


def test_restricted_translation_example():
    problem, meta = qbf_to_restricted(qbf([E(1), A(2)], [[1, 2], [-1, -2]]))
    y1, z1 = Var("Y1"), Var("Z1")
    expected = [
        Clause((p(False, ZERO, ZERO, ZERO), p(True, ZERO, ZERO, ONE))),
        Clause((p(False, ZERO, ZERO, ONE), p(True, ZERO, ZERO, ZERO))),
        Clause((p(False, ONE, ONE, ZERO), p(True, ONE, ONE, ONE))),
        Clause((p(False, ONE, ONE, ONE), p(True, ONE, ONE, ZERO))),
        Clause((p(False, ONE, y1, ZERO), p(True, ZERO, z1, ONE))),
        Clause((p(False, ZERO, z1, ONE), p(True, ONE, y1, ZERO))),
        Clause((p(True, ZERO, y1, ZERO),)),
        Clause((p(False, ONE, y1, ONE),)),
    ]
    assert list(problem.clauses) == expected
    assert problem.signature == {"p": 3}
    assert meta.padding == ()
    assert oracle_solve(problem) is Verdict.UNSAT


def test_padding():
    slots, padding = pad_prefix(qbf([A(1), E(2, 3)], [[1, 2, 3]]))
    assert slots == [4, 1, 2, 5, 3, 6] and padding == [4, 5, 6]
    assert pad_prefix(qbf([], [])) == ([], [])


def test_restricted_empty_prefix():
    problem, _ = qbf_to_restricted(qbf([], [[]]))
    assert problem.signature == {"p": 1}
    assert oracle_solve(problem) is Verdict.UNSAT
    problem, _ = qbf_to_restricted(qbf([], []))
    assert oracle_solve(problem) is Verdict.SAT


def test_shape_checker_flags_problems():
    bad = Problem.from_clauses([Clause((p(True, ZERO), p(True, ONE))), Clause((p(False, ZERO), p(True, ONE)))])
    found = restricted_shape_violations(bad)
    assert any("positive" in f for f in found) and any("converse" in f for f in found)


qbf_params = st.builds(QbfParams, st.integers(0, 10**6), st.integers(1, 6), st.integers(1, 6), st.integers(1, 3),
                       st.sampled_from(["e", "a", "random"]))


@settings(max_examples=120, deadline=None)
@given(qbf_params)
def test_translations_sound(params):
    q = generate_random_qbf(params)
    truth = qbf_expand(q)
    plain, _ = qbf_to_qealm(q)
    restricted, _ = qbf_to_restricted(q)
    assert check_membership(plain).member and is_member(restricted)
    assert restricted_shape_violations(restricted) == []
    assert (oracle_solve(plain) is Verdict.SAT) == truth
    assert (oracle_solve(restricted, budget=10**8) is Verdict.SAT) == truth


def test_fork_indices_of_translation():
    # E x1 A u1 u2 E x2: no literal is ground when x2's clause leaves the universals free
    problem, _ = qbf_to_qealm(qbf([E(1), A(2, 3), E(4)], [[1, 4], [-4]]))
    assert fork_indices(problem) == {0, 2}
