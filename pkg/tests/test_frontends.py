import pytest
from hypothesis import given, settings, strategies as st

from corpora import example1, member_params
from qealm.generate import generate_random_instance
from qealm.logic import Const, Problem, isomorphic, lits
from qealm.qdimacs import ParseError, QuantifierBlock, parse_qdimacs, write_qdimacs
from qealm.tptp import parse_tptp, read_tptp, write_tptp


def test_parse_simple_clause():
    p = parse_tptp("cnf(c1, axiom, (p(X) | ~q(X, c1))).")
    assert p.signature == {"p": 1, "q": 2}
    assert p.constants == {Const("c1")}
    assert p.clauses == (lits(("+", "p", "X"), ("-", "q", "X", "c1")),)


def test_equality_rejected():
    with pytest.raises(ParseError) as e:
        parse_tptp("cnf(e, axiom, (a = b)).")
    assert any("equality forbidden" in d.message for d in e.value.diagnostics)


def test_inequality_rejected():
    with pytest.raises(ParseError):
        parse_tptp("cnf(e, axiom, (X != b | p(X))).")


def test_function_rejected():
    with pytest.raises(ParseError) as e:
        parse_tptp("cnf(f, axiom, (p(f(X)))).")
    assert any("function symbol f/1" in d.message for d in e.value.diagnostics)


def test_nullary_predicate():
    p = parse_tptp("cnf(g, axiom, (q)).")
    assert p.signature == {"q": 0}


def test_fof_rejected_and_not_cnf():
    f = read_tptp("fof(a, axiom, ![X]: p(X)).\ncnf(b, axiom, (p(c))).")
    assert not f.is_cnf
    assert [d.code for d in f.errors] == ["language"]
    with pytest.raises(ParseError):
        parse_tptp("fof(a, axiom, ![X]: p(X)).")


def test_syntax_error_has_location():
    f = read_tptp("cnf(a, axiom, (p(X) | )).")
    assert f.errors and isinstance(f.errors[0].location, tuple)


def test_arity_inconsistency():
    with pytest.raises(ParseError) as e:
        parse_tptp("cnf(a, axiom, (p(c))).\ncnf(b, axiom, (p(c, d))).")
    assert any(d.code == "arity" for d in e.value.diagnostics)


def test_false_literals_and_empty_clause():
    p = parse_tptp("cnf(a, axiom, (p(c) | $false)).\ncnf(b, axiom, ($false)).")
    assert p.clauses == (lits(("+", "p", "c")), lits())


def test_other_role_warns_but_is_kept():
    f = read_tptp("cnf(a, conjecture, (p(c))).")
    assert not f.errors and f.diagnostics and len(f.clauses) == 1


def test_quoted_constants_and_comments():
    p = parse_tptp("% comment\ncnf(a, axiom, (p('c') | q('Big one'))). /* block */")
    assert Const("c") in p.constants and Const("'Big one'") in p.constants
    assert isomorphic(parse_tptp(write_tptp(p)), p)


def test_include(tmp_path):
    (tmp_path / "Axioms").mkdir()
    (tmp_path / "Axioms" / "ax.ax").write_text("cnf(ax, axiom, (p(c))).\n")
    p = parse_tptp("include('Axioms/ax.ax').\ncnf(b, negated_conjecture, (~p(c))).", include_dir=tmp_path)
    assert len(p.clauses) == 2
    with pytest.raises(ParseError):
        parse_tptp("include('Axioms/missing.ax').", include_dir=tmp_path)


def test_write_examples():
    assert write_tptp(Problem.from_clauses([lits(("+", "p", "X"))])) == "cnf(c0, axiom, (p(X0))).\n"
    assert write_tptp(Problem.from_clauses([lits()])) == "cnf(c0, axiom, ($false)).\n"


def test_example1_round_trip():
    p = example1()
    assert isomorphic(parse_tptp(write_tptp(p)), p)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_round_trip_random(seed):
    p = generate_random_instance(member_params(seed))
    q = parse_tptp(write_tptp(p))
    assert isomorphic(q, p)


@given(st.text(alphabet="cnf(),.|~pqXYab '$%=\n", max_size=60))
def test_parser_totality(text):
    f = read_tptp(text)
    if f.errors:
        return
    # no errors means a problem can be built, possibly with validation findings
    f.problem()


def test_qdimacs_basic():
    q = parse_qdimacs("p cnf 2 2\ne 1 0\na 2 0\n1 2 0\n-1 -2 0\n")
    assert q.prefix == (QuantifierBlock("e", (1,)), QuantifierBlock("a", (2,)))
    assert q.matrix == ((1, 2), (-1, -2))


def test_qdimacs_free_variable_promoted():
    q = parse_qdimacs("p cnf 1 1\n1 0\n")
    assert q.prefix == (QuantifierBlock("e", (1,)),)
    assert q.matrix == ((1,),)


def test_qdimacs_empty_clause_accepted():
    q = parse_qdimacs("p cnf 1 1\n0 0\n")
    assert q.matrix == ((), ())


def test_qdimacs_blocks_merge():
    q = parse_qdimacs("p cnf 3 1\na 1 0\na 2 0\ne 3 0\n1 2 3 0\n")
    assert q.prefix == (QuantifierBlock("a", (1, 2)), QuantifierBlock("e", (3,)))


@pytest.mark.parametrize("text", [
    "p cnf x 1\n1 0\n",
    "p cnf 1 1\n1\n",
    "p cnf 1 1\ne 0 0\n1 0\n",
    "p cnf 1 1\ne 1\n1 0\n",
    "1 0\n",
])
def test_qdimacs_malformed(text):
    with pytest.raises(ParseError) as e:
        parse_qdimacs(text)
    assert e.value.diagnostics


def test_qdimacs_round_trip():
    q = parse_qdimacs("p cnf 3 2\ne 1 0\na 2 0\ne 3 0\n1 -2 3 0\n-3 0\n")
    assert parse_qdimacs(write_qdimacs(q)) == q
