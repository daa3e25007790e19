import pytest
from hypothesis import given, settings, strategies as st

from corpora import example1, game, member_params
from qealm.fragment import NotInFragment
from qealm.generate import generate_random_instance
from qealm.ground import BudgetExceeded, Verdict, oracle_solve
from qealm.logic import Const, Literal, Problem, Substitution, Var, apply_substitution, lits
from qealm.resolution import closure_check, factor, mgu, rename_apart, resolve

X, Y = Var("X"), Var("Y")
C1, C2 = Const("c1"), Const("c2")


def atom(pred, *args):
    return Literal(True, pred, tuple(args))


def test_mgu_examples():
    u = mgu(atom("p", X, C1), atom("p", C2, Y))
    assert u.success and u.unifier == Substitution({X: C2, Y: C1})
    fail = mgu(atom("p", C1), atom("p", C2))
    assert not fail.success and fail.clash == (1, C1, C2)
    assert not mgu(atom("p", X, X), atom("p", C1, C2)).success


def test_mgu_prefers_least_variable():
    u = mgu(atom("p", Y, Y), atom("p", X, Var("Z")))
    assert u.unifier.bindings == {Y: X, Var("Z"): X}


def test_resolve_examples():
    assert resolve(lits(("+", "q", "c1", "c2"), ("+", "r", "c1")), lits(("-", "r", "c1")), 1, 0) == \
        lits(("+", "q", "c1", "c2"))
    assert resolve(lits(("-", "p", "c1")), lits(("+", "p", "c1")), 0, 0) == lits()
    assert resolve(lits(("+", "p", "X"), ("-", "q", "X", "c1")), lits(("+", "q", "c2", "c1")), 1, 0) == \
        lits(("+", "p", "c2"))


def test_resolve_failures():
    assert resolve(lits(("+", "p", "c1")), lits(("+", "p", "c1")), 0, 0) is None
    assert resolve(lits(("+", "p", "c1")), lits(("-", "q", "c1")), 0, 0) is None
    assert resolve(lits(("+", "p", "c1")), lits(("-", "p", "c2")), 0, 0) is None


def test_resolve_renames_apart():
    r = resolve(lits(("+", "p", "X"), ("+", "q", "X")), lits(("-", "p", "X"), ("+", "r", "X")), 0, 0)
    # the second clause's X becomes X', then unifies back onto X
    assert r == lits(("+", "q", "X"), ("+", "r", "X"))


def test_rename_apart_is_injective():
    c = lits(("+", "p", "U", "U'"))
    out = rename_apart(c, [Var("U'")])
    assert len(set(out[0].args)) == 2 and not set(out[0].args) & {Var("U'")}


def test_factor_examples():
    assert factor(lits(("+", "p", "X", "c"), ("+", "p", "d", "Y")), 0, 1) == lits(("+", "p", "d", "c"))
    assert factor(lits(("+", "p", "c1"), ("+", "p", "c2")), 0, 1) is None
    assert factor(lits(("+", "p", "X"), ("+", "p", "X")), 0, 1) == lits(("+", "p", "X"))


def test_closure_example1():
    r = closure_check(example1(), budget=10**4)
    assert r.violations == [] and r.empty_clause
    j = r.to_json(with_derivations=True)
    assert {"parents", "rule", "unifier", "clause"} <= set(j["derivations"][-1])


def test_closure_game():
    r = closure_check(game(), budget=2000)
    assert r.violations == []


def test_closure_rejects_non_member():
    p = Problem.from_clauses([lits(("+", "p", "X", "Y"), ("+", "q", "Y", "X")), lits(("+", "p", "c", "c"))])
    with pytest.raises(NotInFragment):
        closure_check(p)


def test_closure_budget_reported():
    r = closure_check(game(), budget=10)
    assert r.exhausted and not r.saturated and r.steps == 10


atoms = st.builds(lambda args: atom("p", *args), st.lists(st.sampled_from([X, Y, Var("Z"), C1, C2]),
                                                        min_size=2, max_size=2))


def _primed(a):
    return Literal(a.positive, a.predicate, tuple(Var(t.name + "'") if isinstance(t, Var) else t for t in a.args))


@given(atoms, atoms)
def test_mgu_symmetric_and_unifies(a, b):
    b = _primed(b)
    u, v = mgu(a, b), mgu(b, a)
    assert u.success == v.success
    if u.success:
        assert u.unifier.literal(a) == u.unifier.literal(b)
        assert v.unifier.literal(a) == v.unifier.literal(b)


@given(atoms, atoms, st.dictionaries(st.sampled_from([X, Y, Var("Z"), Var("X'"), Var("Y'"), Var("Z'")]),
                                      st.sampled_from([C1, C2]), min_size=6, max_size=6))
def test_mgu_most_general(a, b, ground):
    """Every ground unifier factors through the mgu."""
    b = _primed(b)
    tau = Substitution(ground)
    if tau.literal(a) != tau.literal(b):
        return
    u = mgu(a, b)
    assert u.success
    for v, t in u.unifier.bindings.items():
        assert tau.term(t) == tau.term(v)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_resolvents_preserve_satisfiability(seed):
    p = generate_random_instance(member_params(seed))
    r = closure_check(p, budget=60)
    assert r.violations == []
    try:
        before = oracle_solve(p)
    except BudgetExceeded:
        return
    for d in r.derivations[len(p.clauses):]:
        try:
            assert oracle_solve(p.with_clauses(p.clauses + (d.clause,))) is before
        except BudgetExceeded:
            pass


def test_derivation_replay():
    # each recorded resolvent can be recomputed from its parents
    r = closure_check(example1(), budget=200)
    for d in r.derivations:
        if d.rule == "resolve":
            a, b = (r.derivations[k].clause for k in d.parents)
            assert any(resolve(a, b, i, j) == d.clause or _dedup(resolve(a, b, i, j)) == d.clause
                       for i in range(len(a)) for j in range(len(b)))


def _dedup(c):
    if c is None:
        return None
    seen = []
    for l in c:
        if l not in seen:
            seen.append(l)
    return type(c)(tuple(seen))


def test_unifier_applied_to_clause():
    c = lits(("+", "p", "X"), ("-", "q", "X", "c1"))
    u = mgu(c[1], atom("q", C2, C1))
    assert apply_substitution(c, u.unifier) == lits(("+", "p", "c2"), ("-", "q", "c2", "c1"))
