"""Alternating universal/existential search for QEALM problems.

The recursion mirrors a two-player game. When every clause is inseparable
the universal player fixes the terms at the CNF's outer positions; when
some clause splits into components the existential player keeps one
component per clause. Ground problems go to DPLL.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .fragment import (
    NotInFragment,
    clause_violations,
    components,
    position_analysis,
)
from .ground import GroundResult, Verdict, sat_ground
from .logic import Clause, Const, Problem, Substitution, Var, apply_substitution, herbrand_universe


class InvariantError(AssertionError):
    """The search produced a state the theory rules out."""


@dataclass(frozen=True)
class Move:
    kind: str  # "universal" or "existential"
    choices: Optional[dict]  # None: every branch was explored and none decided the game

    def to_json(self) -> dict:
        if self.choices is None:
            return {"kind": self.kind, "choices": None}
        return {"kind": self.kind, "choices": {str(k): str(v) for k, v in self.choices.items()}}


@dataclass
class SolveResult:
    verdict: Verdict
    trace: list = field(default_factory=list)
    model: Optional[dict] = None
    max_depth: int = 0
    calls: int = 0

    def to_json(self) -> dict:
        out = {"verdict": str(self.verdict), "trace": [m.to_json() for m in self.trace]}
        if self.model is not None:
            out["model"] = {_atom_str(a): v for a, v in self.model.items()}
        return out


def _atom_str(atom) -> str:
    pred, args = atom
    return f"{pred}({','.join(map(str, args))})" if args else pred


def universal_positions(problem: Problem) -> list[int]:
    """Positions the universal player assigns, ascending.

    A position qualifies when it is outer in some clause and neutral in
    every clause that contains a variable. Ground clauses are skipped: at
    this point they are units, and a ground unit too short to have the
    position uses a predicate that no variable-bearing clause can mention.
    """
    analyses = [position_analysis(c) for c in problem.clauses if not c.is_ground()]
    candidates = set()
    for a in analyses:
        candidates |= a.opos
    for a in analyses:
        candidates &= a.npos
    return sorted(candidates)


def assignment_substitution(c: Clause, assignment: dict) -> Substitution:
    """Map each variable to the constant of its least assigned position."""
    bindings = {}
    for lit in c:
        for i, t in enumerate(lit.args, 1):
            if isinstance(t, Var) and i in assignment:
                prev = bindings.get(t)
                if prev is None or i < prev[0]:
                    bindings[t] = (i, assignment[i])
    return Substitution({v: c for v, (_, c) in bindings.items()})


def instantiate(problem: Problem, assignment: dict) -> Problem:
    return problem.with_clauses(apply_substitution(c, assignment_substitution(c, assignment))
                                for c in problem.clauses)


def universal_assignments(problem: Problem, universe=None) -> Iterator[dict]:
    """Every map from the universal positions to constants, lexicographically."""
    if any(len(c) and len(components(c)) > 1 for c in problem.clauses):
        raise ValueError("universal assignments need every clause inseparable")
    consts = sorted(universe if universe is not None else herbrand_universe(problem), key=lambda c: c.name)
    positions = universal_positions(problem)
    for combo in itertools.product(consts, repeat=len(positions)):
        yield dict(zip(positions, combo))


def component_selections(problem: Problem) -> Iterator[tuple]:
    """Yield ``(choice, subproblem)``; ``choice[k]`` indexes clause k's components."""
    blocks = [components(c) for c in problem.clauses]
    for choice in itertools.product(*(range(len(b)) for b in blocks)):
        picked = []
        for c, b, k in zip(problem.clauses, blocks, choice):
            picked.append(Clause(tuple(c[i] for i in b[k])))
        yield choice, problem.with_clauses(picked)


class _Search:
    def __init__(self, universe, depth_bound: int, verify: bool):
        self.universe = sorted(universe, key=lambda c: c.name)
        self.depth_bound = depth_bound
        self.verify = verify
        self.max_depth = 0
        self.calls = 0

    def check(self, problem: Problem):
        if not self.verify:
            return
        for ci, c in enumerate(problem.clauses):
            bad = clause_violations(c, ci)
            if bad:
                raise InvariantError(f"sub-problem left the fragment: {bad[0].describe()}")

    def run(self, problem: Problem, depth: int):
        self.calls += 1
        if depth > self.max_depth:
            self.max_depth = depth
            if depth > self.depth_bound:
                raise InvariantError(f"recursion depth {depth} exceeds bound {self.depth_bound}")
        if problem.has_empty_clause():
            return Verdict.UNSAT, [], None
        if problem.is_ground():
            res: GroundResult = sat_ground(problem)
            return res.verdict, [], res.model
        separable = any(len(components(c)) > 1 for c in problem.clauses)
        if not separable:
            positions = universal_positions(problem)
            if not positions:
                raise InvariantError("no universal position in a non-ground inseparable problem")
            for combo in itertools.product(self.universe, repeat=len(positions)):
                assignment = dict(zip(positions, combo))
                sub = instantiate(problem, assignment)
                self.check(sub)
                verdict, trace, _ = self.run(sub, depth + 1)
                if verdict is Verdict.UNSAT:
                    return Verdict.UNSAT, [Move("universal", assignment)] + trace, None
            return Verdict.SAT, [Move("universal", None)], None
        for choice, sub in component_selections(problem):
            self.check(sub)
            verdict, trace, model = self.run(sub, depth + 1)
            if verdict is Verdict.SAT:
                return Verdict.SAT, [Move("existential", dict(enumerate(choice)))] + trace, model
        return Verdict.UNSAT, [Move("existential", None)], None


def solve_by_alternation(problem: Problem, verify: bool = True) -> SolveResult:
    """Decide a member problem by alternating universal and existential search.

    With ``verify`` every generated sub-problem is re-checked for membership.
    """
    bad = [v for ci, c in enumerate(problem.clauses) for v in clause_violations(c, ci)]
    if bad:
        raise NotInFragment(bad)
    bound = problem.variable_count() + problem.literal_count()
    search = _Search(herbrand_universe(problem), bound, verify)
    verdict, trace, model = search.run(problem, 0)
    if any(m.kind == "universal" or m.choices is None for m in trace):
        model = None
    return SolveResult(verdict, trace, model, search.max_depth, search.calls)
