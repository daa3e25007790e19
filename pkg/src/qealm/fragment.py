"""Membership in the QEALM fragment and its structural measures.

Positions are 1-based throughout; fork index 0 means "shares nothing".
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .logic import Clause, Const, Literal, Problem, Substitution, Var, apply_substitution


@dataclass(frozen=True)
class Violation:
    clause: int
    variable: str
    literals: tuple  # pair of literal indices within the clause
    positions: tuple  # first-occurrence positions (cond 1) or mismatching positions (cond 2)
    condition: int  # 1: first positions differ; 2: shared prefix differs

    def describe(self) -> str:
        i, j = self.literals
        if self.condition == 1:
            return (f"clause {self.clause}: {self.variable} first occurs at position {self.positions[0]} "
                    f"in literal {i} but at {self.positions[1]} in literal {j}")
        return (f"clause {self.clause}: literals {i} and {j} share {self.variable} but differ before it "
                f"at positions {list(self.positions)}")

    def to_json(self) -> dict:
        return {"clause": self.clause, "variable": self.variable, "literals": list(self.literals),
                "positions": list(self.positions), "condition": self.condition}


@dataclass(frozen=True)
class Classification:
    kind: str  # "SigmaP" or "PiP"
    level: int

    def __str__(self) -> str:
        return f"{self.kind}({self.level})"

    def to_json(self) -> dict:
        return {"kind": self.kind, "level": self.level}


@dataclass(frozen=True)
class FragmentReport:
    member: bool
    violations: tuple = ()
    fork_indices: frozenset = frozenset()
    classification: Optional[Classification] = None

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "violations": [v.to_json() for v in self.violations],
            "fork_indices": sorted(self.fork_indices),
            "classification": self.classification.to_json() if self.classification else None,
        }


@dataclass(frozen=True)
class PositionAnalysis:
    outer_variables: frozenset
    opos: frozenset
    npos: frozenset


class NotInFragment(ValueError):
    """An operation that needs a QEALM member was handed something else."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        first = self.violations[0].describe() if self.violations else "not a member"
        super().__init__(f"problem is not in the QEALM fragment ({first})")


def clause_violations(c: Clause, index: int = 0) -> list[Violation]:
    out = []
    occurs: dict[Var, list[int]] = {}
    for li, lit in enumerate(c):
        for v in set(lit.variables()):
            occurs.setdefault(v, []).append(li)
    for v in sorted(occurs, key=lambda v: v.name):
        hosts = occurs[v]
        if len(hosts) < 2:
            continue
        for a, b in combinations(hosts, 2):
            la, lb = c[a], c[b]
            pa, pb = la.first_position(v), lb.first_position(v)
            if pa != pb:
                out.append(Violation(index, v.name, (a, b), (pa, pb), 1))
                continue
            bad = tuple(j for j in range(1, pa) if la.args[j - 1] != lb.args[j - 1])
            if bad:
                out.append(Violation(index, v.name, (a, b), bad, 2))
    return out


def is_member_clause(c: Clause) -> bool:
    return not clause_violations(c)


def check_membership(problem: Problem) -> FragmentReport:
    violations = []
    for ci, c in enumerate(problem.clauses):
        violations.extend(clause_violations(c, ci))
    forks = fork_indices(problem)
    member = not violations
    cls = classify_forks(forks) if member and forks else None
    return FragmentReport(member, tuple(violations), forks, cls)


def is_member(problem: Problem) -> bool:
    return all(is_member_clause(c) for c in problem.clauses)


def require_member(problem: Problem) -> None:
    bad = [v for ci, c in enumerate(problem.clauses) for v in clause_violations(c, ci)]
    if bad:
        raise NotInFragment(bad)


def outer_variables(c: Clause) -> set:
    if not c.literals:
        return set()
    common = set(c[0].variables())
    for lit in c.literals[1:]:
        common &= set(lit.variables())
    return common


def position_analysis(c: Clause) -> PositionAnalysis:
    outer = outer_variables(c)
    opos = set()
    for v in outer:
        opos.add(min(lit.first_position(v) for lit in c))
    npos = set()
    if c.literals:
        width = min(lit.arity for lit in c)
        for i in range(1, width + 1):
            t = c[0].args[i - 1]
            if isinstance(t, Var) and t not in outer:
                continue
            if all(lit.args[i - 1] == t for lit in c.literals[1:]):
                npos.add(i)
    return PositionAnalysis(frozenset(outer), frozenset(opos), frozenset(npos))


def outer_positions_cnf(problem: Problem) -> frozenset:
    """Positions outer in some clause and neutral in every clause."""
    analyses = [position_analysis(c) for c in problem.clauses]
    candidates = set()
    for a in analyses:
        candidates |= a.opos
    for a in analyses:
        candidates &= a.npos
    return frozenset(candidates)


def components(c: Clause) -> list[list[int]]:
    """Variable-connected blocks of literal indices, ordered by first literal."""
    n = len(c)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner: dict[Var, int] = {}
    for li, lit in enumerate(c):
        for v in lit.variables():
            if v in owner:
                ra, rb = find(owner[v]), find(li)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
            else:
                owner[v] = li
    blocks: dict[int, list[int]] = {}
    for li in range(n):
        blocks.setdefault(find(li), []).append(li)
    return [blocks[k] for k in sorted(blocks)]


def is_inseparable(c: Clause) -> bool:
    return len(c) >= 1 and len(components(c)) == 1


def pair_fork_index(a: Literal, b: Literal) -> int:
    shared = set(a.variables()) & set(b.variables())
    if not shared:
        return 0
    last = 0
    for lit in (a, b):
        for i, t in enumerate(lit.args, 1):
            if t in shared and i > last:
                last = i
    return last


def clause_fork_indices(c: Clause) -> set:
    out = set()
    lits = c.literals
    for i in range(len(lits)):
        for j in range(i, len(lits)):
            out.add(pair_fork_index(lits[i], lits[j]))
    return out


def fork_indices(problem: Problem) -> frozenset:
    out: set = set()
    for c in problem.clauses:
        out |= clause_fork_indices(c)
    return frozenset(out)


def classify_forks(forks) -> Classification:
    k = len(forks)
    if k == 0:
        raise ValueError("classification needs at least one literal")
    if 0 in forks:
        return Classification("SigmaP", 2 * k - 1)
    return Classification("PiP", 2 * k)


def classify(problem: Problem) -> Classification:
    return classify_forks(fork_indices(problem))


class Obs1Error(ValueError):
    pass


def first_argument_term(c: Clause, index: int = 0):
    """The term every literal of ``c`` carries first, or raise Obs1Error."""
    terms = set()
    for lit in c:
        if lit.arity < 1:
            raise Obs1Error(f"clause {index}: nullary predicate {lit.predicate}")
        terms.add(lit.args[0])
    if len(terms) > 1:
        raise Obs1Error(f"clause {index}: first arguments differ ({', '.join(sorted(map(str, terms)))})")
    return next(iter(terms)) if terms else None


def satisfies_obs1(problem: Problem) -> bool:
    try:
        for ci, c in enumerate(problem.clauses):
            first_argument_term(c, ci)
    except Obs1Error:
        return False
    return all(a >= 1 for p, a in problem.signature.items()
               if any(l.predicate == p for c in problem.clauses for l in c))


def obs1_transform(problem: Problem, t: Const) -> Problem:
    """Fix the shared first argument to ``t``: instantiate or prune each clause."""
    kept = []
    for ci, c in enumerate(problem.clauses):
        head = first_argument_term(c, ci)
        if head is None or head == t:
            kept.append(c)
        elif isinstance(head, Var):
            kept.append(apply_substitution(c, Substitution({head: t})))
        # a different constant cannot unify with t: drop the clause
    return Problem(problem.signature, problem.constants | {t}, tuple(kept))
