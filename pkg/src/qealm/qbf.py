"""QBF evaluation by expansion and translations of QBF into the fragment."""

from __future__ import annotations

from dataclasses import dataclass, field

from .ground import BudgetExceeded
from .logic import Clause, Const, Literal, Problem, Var
from .qdimacs import QbfProblem, QuantifierBlock

ZERO = Const("0")
ONE = Const("1")
DEFAULT_EXPAND_BUDGET = 20


@dataclass(frozen=True)
class TranslationMeta:
    encoding: str  # "plain" or "restricted"
    predicates: dict  # existential variable -> (predicate, arity); restricted: "p" for all
    universal_order: dict  # universal variable -> 1-based index among universals
    positions: dict = field(default_factory=dict)  # restricted: variable -> argument position
    padding: tuple = ()  # restricted: fresh variables inserted into the prefix

    def to_json(self) -> dict:
        return {
            "encoding": self.encoding,
            "predicates": {str(v): {"predicate": p, "arity": a} for v, (p, a) in sorted(self.predicates.items())},
            "universal_order": {str(v): i for v, i in sorted(self.universal_order.items())},
            "positions": {str(v): i for v, i in sorted(self.positions.items())},
            "padding": list(self.padding),
        }


def _require_closed(qbf: QbfProblem):
    if not qbf.is_closed():
        free = sorted({abs(l) for c in qbf.matrix for l in c} - set(qbf.quantifier_of()))
        raise ValueError(f"QBF is not closed; free variables {free}")


def is_tautology(clause) -> bool:
    s = set(clause)
    return any(-l in s for l in s)


def qbf_expand(qbf: QbfProblem, budget: int = DEFAULT_EXPAND_BUDGET) -> bool:
    """Truth value by expanding each quantifier into a conjunction or disjunction."""
    _require_closed(qbf)
    order = qbf.order()
    if len(order) > budget:
        raise BudgetExceeded(f"{len(order)} variables exceed the expansion budget {budget}")
    kind = qbf.quantifier_of()

    def value(k, clauses):
        for c in clauses:
            if not c:
                return False
        if not clauses:
            return True
        v = order[k]
        branches = []
        for lit in (v, -v):
            # lit true under this branch
            branches.append([tuple(x for x in c if x != -lit) for c in clauses if lit not in c])
        if kind[v] == "a":
            return value(k + 1, branches[0]) and value(k + 1, branches[1])
        return value(k + 1, branches[0]) or value(k + 1, branches[1])

    return value(0, [tuple(c) for c in qbf.matrix])


def qbf_to_qealm(qbf: QbfProblem):
    """Existential e becomes a predicate over the universals left of it.

    Universal literals become constant arguments: ``0`` when ``u`` occurs
    positively in the clause, ``1`` when negatively, the variable ``U<u>``
    otherwise. Tautological clauses are dropped; clauses with no existential
    literal become the empty clause.
    """
    _require_closed(qbf)
    universal_order: dict[int, int] = {}
    predicates: dict[int, tuple] = {}
    left: list[int] = []
    for block in qbf.prefix:
        for v in block.variables:
            if block.existential:
                predicates[v] = (f"p{v}", len(left))
            else:
                left.append(v)
                universal_order[v] = len(left)
    clauses = []
    for c in qbf.matrix:
        if is_tautology(c):
            continue
        present = set(c)
        lits = []
        for l in c:
            v = abs(l)
            if v not in predicates:
                continue
            name, arity = predicates[v]
            args = []
            for u in left[:arity]:
                if u in present:
                    args.append(ZERO)
                elif -u in present:
                    args.append(ONE)
                else:
                    args.append(Var(f"U{u}"))
            lits.append(Literal(l > 0, name, tuple(args)))
        clauses.append(Clause(tuple(lits)))
    signature = {name: arity for name, arity in predicates.values()}
    meta = TranslationMeta("plain", predicates, universal_order)
    return Problem(signature, frozenset({ZERO, ONE}), tuple(clauses)), meta


def pad_prefix(qbf: QbfProblem):
    """Strict ``E x1 A y1 ... E xn A yn`` order, padding with unused variables.

    Returns ``(slots, padding)`` where ``slots`` lists the 2n variables
    in position order.
    """
    kind = qbf.quantifier_of()
    fresh = max([qbf.num_vars] + list(kind)) + 1
    slots: list[int] = []
    padding: list[int] = []
    for v in qbf.order():
        want = "e" if len(slots) % 2 == 0 else "a"
        if kind[v] != want:
            slots.append(fresh)
            padding.append(fresh)
            fresh += 1
        slots.append(v)
    if len(slots) % 2:
        slots.append(fresh)
        padding.append(fresh)
    return slots, padding


def qbf_to_restricted(qbf: QbfProblem):
    """Single ``(2n+1)``-ary predicate; every clause Krom and Horn, implications paired."""
    _require_closed(qbf)
    slots, padding = pad_prefix(qbf)
    n = len(slots) // 2
    pos = {v: i for i, v in enumerate(slots, 1)}
    xs = [Var(f"X{k}") for k in range(1, n + 1)]
    ys = [Var(f"Y{k}") for k in range(1, n + 1)]
    zs = [Var(f"Z{k}") for k in range(1, n + 1)]
    slot_var = []
    for k in range(n):
        slot_var += [xs[k], ys[k]]

    def p(positive, args):
        return Literal(positive, "p", tuple(args))

    def equivalence(a, b):
        return [Clause((p(False, a), p(True, b))), Clause((p(False, b), p(True, a)))]

    clauses: list[Clause] = []
    for c in qbf.matrix:
        if is_tautology(c):
            continue
        args = list(slot_var)
        for l in c:
            args[pos[abs(l)] - 1] = ZERO if l > 0 else ONE
        clauses += equivalence(args + [ZERO], args + [ONE])
    for k in range(1, n + 1):
        head = slot_var[: 2 * (k - 1)]
        lhs = list(head) + [ONE, ys[k - 1]]
        rhs = list(head) + [ZERO, zs[k - 1]]
        for j in range(k + 1, n + 1):
            lhs += [ZERO, ys[j - 1]]
            rhs += [ONE, zs[j - 1]]
        clauses += equivalence(lhs + [ZERO], rhs + [ONE])
    start, goal = [], []
    for k in range(n):
        start += [ZERO, ys[k]]
        goal += [ONE, ys[k]]
    clauses.append(Clause((p(True, start + [ZERO]),)))
    clauses.append(Clause((p(False, goal + [ONE]),)))
    kind = qbf.quantifier_of()
    meta = TranslationMeta(
        "restricted",
        {v: ("p", 2 * n + 1) for v in slots if kind.get(v, "e" if pos[v] % 2 else "a") == "e"},
        {v: i for i, v in enumerate((v for v in slots if pos[v] % 2 == 0), 1)},
        pos,
        tuple(padding),
    )
    return Problem({"p": 2 * n + 1}, frozenset({ZERO, ONE}), tuple(clauses)), meta


def restricted_shape_violations(problem: Problem) -> list[str]:
    """Empty iff every clause is Krom, Horn, and its implication is paired."""
    out = []
    present = {c.literals for c in problem.clauses}
    for k, c in enumerate(problem.clauses):
        if len(c) > 2:
            out.append(f"clause {k} has {len(c)} literals")
        if sum(1 for l in c if l.positive) > 1:
            out.append(f"clause {k} has more than one positive literal")
        if len(c) == 2:
            a, b = c.literals
            if a.positive == b.positive:
                out.append(f"clause {k} is not an implication")
                continue
            neg, pos_ = (a, b) if not a.positive else (b, a)
            # (~A | B) is A -> B; its partner B -> A is (~B | A)
            if (pos_.negate(), neg.negate()) not in present:
                out.append(f"clause {k} lacks its converse implication")
    return out
