"""Robinson resolution for function-free clauses: mgu, resolvents, factors.

Also the closure experiment: saturate a member problem breadth-first and
check that everything derived stays inside the fragment.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .fragment import NotInFragment, clause_violations, require_member
from .logic import Clause, Const, Literal, Problem, Substitution, Var, apply_substitution, canonical_clause


@dataclass(frozen=True)
class UnificationResult:
    success: bool
    unifier: Optional[Substitution] = None
    clash: Optional[tuple] = None  # (position, term, term)


def mgu(a: Literal, b: Literal) -> UnificationResult:
    """Most general unifier of two atoms, polarity ignored."""
    if a.predicate != b.predicate or a.arity != b.arity:
        return UnificationResult(False, clash=(0, a.predicate, b.predicate))
    parent: dict = {}

    def find(t):
        parent.setdefault(t, t)
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    def better(s, t):
        # constants win; otherwise the lexicographically least variable
        if isinstance(s, Const) != isinstance(t, Const):
            return isinstance(s, Const)
        return s.name < t.name

    for pos, (s, t) in enumerate(zip(a.args, b.args), 1):
        rs, rt = find(s), find(t)
        if rs == rt:
            continue
        if isinstance(rs, Const) and isinstance(rt, Const):
            return UnificationResult(False, clash=(pos, rs, rt))
        if better(rs, rt):
            parent[rt] = rs
        else:
            parent[rs] = rt
    return UnificationResult(True, Substitution({t: find(t) for t in parent if isinstance(t, Var) and find(t) != t}))


def rename_apart(c: Clause, avoid) -> Clause:
    """Prime every variable of ``c`` until it is clear of ``avoid``."""
    avoid = {v.name for v in avoid}
    mapping = {}
    for v in c.variables():
        name = v.name + "'"
        while name in avoid:
            name += "'"
        avoid.add(name)
        mapping[v] = Var(name)
    return apply_substitution(c, Substitution(mapping))


def resolve(c1: Clause, c2: Clause, i: int, j: int) -> Optional[Clause]:
    a, b = c1[i], c2[j]
    if a.positive == b.positive or a.predicate != b.predicate or a.arity != b.arity:
        return None
    r = resolve_with_unifier(c1, c2, i, j)
    return r[0] if r else None


def resolve_with_unifier(c1: Clause, c2: Clause, i: int, j: int):
    a = c1[i]
    c2 = rename_apart(c2, c1.variables())
    b = c2[j]
    if a.positive == b.positive:
        return None
    u = mgu(a, b)
    if not u.success:
        return None
    rest = [l for k, l in enumerate(c1) if k != i] + [l for k, l in enumerate(c2) if k != j]
    return apply_substitution(Clause(tuple(rest)), u.unifier), u.unifier


def factor(c: Clause, i: int, j: int) -> Optional[Clause]:
    r = factor_with_unifier(c, i, j)
    return r[0] if r else None


def factor_with_unifier(c: Clause, i: int, j: int):
    a, b = c[i], c[j]
    if i == j or a.positive != b.positive:
        return None
    u = mgu(a, b)
    if not u.success:
        return None
    out = apply_substitution(c, u.unifier)
    return Clause(tuple(l for k, l in enumerate(out) if k != j)), u.unifier


@dataclass
class Derivation:
    parents: tuple  # indices into the clause list
    rule: str  # "input", "resolve", "factor"
    unifier: Optional[Substitution]
    clause: Clause

    def to_json(self) -> dict:
        return {
            "parents": list(self.parents),
            "rule": self.rule,
            "unifier": self.unifier.to_json() if self.unifier is not None else None,
            "clause": str(self.clause),
        }


@dataclass
class ClosureReport:
    derived: int = 0  # distinct clauses added beyond the input
    steps: int = 0  # inference steps taken, duplicates included
    violations: list = field(default_factory=list)  # (derivation index, Violation)
    empty_clause: bool = False
    exhausted: bool = False  # step budget ran out
    saturated: bool = False  # nothing new is derivable
    derivations: list = field(default_factory=list)

    def to_json(self, with_derivations: bool = False) -> dict:
        out = {
            "derived": self.derived,
            "steps": self.steps,
            "violations": [{"clause": k, **v.to_json()} for k, v in self.violations],
            "empty_clause": self.empty_clause,
            "exhausted": self.exhausted,
            "saturated": self.saturated,
        }
        if with_derivations:
            out["derivations"] = [d.to_json() for d in self.derivations]
        return out


def _normalise(c: Clause) -> Clause:
    # drop duplicate literals, which is factoring with the identity unifier
    seen = {}
    for l in c:
        seen.setdefault(l, None)
    return Clause(tuple(seen))


def closure_check(problem: Problem, budget: int = 10**4, stop_at_empty: bool = False) -> ClosureReport:
    """Breadth-first saturation under resolution and factoring.

    Each new clause (up to variable renaming) is checked for membership.
    ``budget`` caps the number of inference steps.
    """
    require_member(problem)
    report = ClosureReport()
    clauses: list[Clause] = []
    seen: set = set()
    by_atom: dict = {}  # (predicate, polarity) -> [(clause index, literal index)]

    def add(c, parents, rule, unifier):
        key = canonical_clause(c)
        if key in seen:
            return False
        seen.add(key)
        k = len(clauses)
        clauses.append(c)
        report.derivations.append(Derivation(parents, rule, unifier, c))
        for li, lit in enumerate(c):
            by_atom.setdefault((lit.predicate, lit.positive), []).append((k, li))
        if rule != "input":
            report.derived += 1
            for v in clause_violations(c, k):
                report.violations.append((k, v))
        if not c.literals:
            report.empty_clause = True
        return True

    def inferences(k):
        c = clauses[k]
        for i in range(len(c)):
            for j in range(i + 1, len(c)):
                yield (k,), "factor", factor_with_unifier(c, i, j)
        # partners are clauses already taken off the queue, and c itself
        for i, lit in enumerate(c):
            for m, j in by_atom.get((lit.predicate, not lit.positive), ()):
                if m > k:
                    break
                yield (k, m), "resolve", resolve_with_unifier(c, clauses[m], i, j)

    for c in problem.clauses:
        add(c, (), "input", None)
    queue = deque(range(len(clauses)))
    while queue:
        k = queue.popleft()
        for parents, rule, r in inferences(k):
            if report.steps >= budget:
                report.exhausted = True
                return report
            report.steps += 1
            if r and add(_normalise(r[0]), parents, rule, r[1]):
                queue.append(len(clauses) - 1)
                if stop_at_empty and report.empty_clause:
                    return report
    report.saturated = True
    return report


__all__ = [
    "UnificationResult", "mgu", "rename_apart", "resolve", "factor", "Derivation", "ClosureReport",
    "closure_check", "NotInFragment",
]
