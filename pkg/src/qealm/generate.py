"""Seeded random instances: QEALM members and closed prenex CNF QBFs.

Member problems are grown clause by clause as a trie of argument terms.
Literals that stay on the same branch share every term so far; when the
branch forks, each side continues with its own constants, fresh variables,
or repeats of variables already on its path. A variable is therefore
introduced at one trie node and first occurs at that node's depth in every
literal below it, which is exactly the membership condition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .logic import Clause, Const, Literal, Problem, Var
from .qdimacs import QbfProblem, QuantifierBlock


@dataclass(frozen=True)
class GeneratorParams:
    seed: int = 0
    constants: int = 2
    predicates: int = 2
    max_arity: int = 2
    clauses: int = 3
    max_literals: int = 3
    first_argument_shared: bool = False  # every clause keeps one term at position 1

    def __post_init__(self):
        for name in ("constants", "predicates", "clauses", "max_literals"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_arity < 0:
            raise ValueError("max_arity must be non-negative")
        if self.first_argument_shared and self.max_arity < 1:
            raise ValueError("a shared first argument needs max_arity >= 1")


class _ClauseBuilder:
    def __init__(self, rng: random.Random, consts: list, split: float = 0.45, fresh: float = 0.55):
        self.rng = rng
        self.consts = consts
        self.split = split
        self.fresh = fresh
        self.counter = 0

    def new_var(self) -> Var:
        v = Var(f"X{self.counter}")
        self.counter += 1
        return v

    def term(self, path: list) -> object:
        rng = self.rng
        path_vars = [t for t in path if isinstance(t, Var)]
        r = rng.random()
        if r < self.fresh:
            return self.new_var()
        if path_vars and r < self.fresh + 0.15:
            return rng.choice(path_vars)
        return rng.choice(self.consts)

    def grow(self, group: list, path: list, out: dict):
        """``group`` holds (slot, arity); fills ``out[slot]`` with argument tuples."""
        depth = len(path)
        pending = []
        for slot, arity in group:
            if arity == depth:
                out[slot] = tuple(path)
            else:
                pending.append((slot, arity))
        if not pending:
            return
        parts: list[list] = []
        for item in pending:
            if parts and self.rng.random() >= self.split:
                self.rng.choice(parts).append(item)
            else:
                parts.append([item])
        for part in parts:
            self.grow(part, path + [self.term(path)], out)


def generate_random_instance(params: GeneratorParams) -> Problem:
    rng = random.Random(params.seed)
    consts = [Const(f"c{k}") for k in range(1, params.constants + 1)]
    low = 1 if params.first_argument_shared else 0
    signature = {f"p{k}": rng.randint(low, params.max_arity) for k in range(params.predicates)}
    preds = sorted(signature)
    clauses = []
    for _ in range(params.clauses):
        width = rng.randint(1, params.max_literals)
        chosen = [rng.choice(preds) for _ in range(width)]
        builder = _ClauseBuilder(rng, consts)
        args: dict[int, tuple] = {}
        group = [(k, signature[p]) for k, p in enumerate(chosen)]
        if params.first_argument_shared:
            head = builder.term([])
            builder.grow(group, [head], args)
        else:
            builder.grow(group, [], args)
        lits = tuple(Literal(rng.random() < 0.5, p, args[k]) for k, p in enumerate(chosen))
        clauses.append(Clause(lits))
    return Problem(signature, frozenset(consts), tuple(clauses))


@dataclass(frozen=True)
class QbfParams:
    seed: int = 0
    variables: int = 4
    clauses: int = 4
    max_clause_width: int = 3
    leading: str = "random"  # "e", "a", or "random"


def generate_random_qbf(params: QbfParams) -> QbfProblem:
    """A closed prenex CNF QBF; every variable is quantified, not all need occur."""
    rng = random.Random(params.seed)
    n = params.variables
    kinds = [rng.choice("ea") for _ in range(n)]
    if params.leading in ("e", "a") and n:
        kinds[0] = params.leading
    blocks: list[list] = []
    for v, q in enumerate(kinds, 1):
        if blocks and blocks[-1][0] == q:
            blocks[-1][1].append(v)
        else:
            blocks.append([q, [v]])
    prefix = tuple(QuantifierBlock(q, tuple(vs)) for q, vs in blocks)
    matrix = []
    for _ in range(params.clauses):
        width = rng.randint(1, max(1, params.max_clause_width)) if n else 0
        matrix.append(tuple(rng.choice((-1, 1)) * rng.randint(1, n) for _ in range(width)))
    return QbfProblem(prefix, tuple(matrix), n)
