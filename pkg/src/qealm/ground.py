"""Ground satisfiability and the brute-force grounding oracle."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from . import _kernel
from .logic import Const, Problem, Var, herbrand_universe

DEFAULT_ORACLE_BUDGET = 10**6
DENSE_ATOM_LIMIT = 1 << 26


class Verdict(str, Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"

    def __str__(self) -> str:
        return self.value


class BudgetExceeded(RuntimeError):
    """A brute-force procedure refused to run past its configured budget."""


@dataclass(frozen=True)
class GroundResult:
    verdict: Verdict
    model: Optional[dict] = None  # atom (predicate, args) -> bool

    @property
    def sat(self) -> bool:
        return self.verdict is Verdict.SAT


def _csr(clauses):
    indptr = np.zeros(len(clauses) + 1, dtype=np.int64)
    flat = []
    for k, c in enumerate(clauses):
        flat.extend(c)
        indptr[k + 1] = len(flat)
    return indptr, np.asarray(flat, dtype=np.int32)


def sat_ground(problem: Problem) -> GroundResult:
    """Decide a variable-free problem by DPLL over its ground atoms."""
    index: dict = {}
    atoms = []
    int_clauses = []
    for ci, c in enumerate(problem.clauses):
        row = []
        for lit in c:
            if not lit.is_ground():
                raise ValueError(f"clause {ci} is not ground: {c}")
            key = lit.atom()
            a = index.get(key)
            if a is None:
                a = index[key] = len(atoms)
                atoms.append(key)
            row.append(a + 1 if lit.positive else -(a + 1))
        int_clauses.append(row)
    indptr, flat = _csr(int_clauses)
    values = _kernel.solve_csr(len(atoms), indptr, flat)
    if values is None:
        return GroundResult(Verdict.UNSAT)
    return GroundResult(Verdict.SAT, {atoms[a]: bool(values[a]) for a in range(len(atoms))})


def grounding_size(problem: Problem, universe=None) -> int:
    h = len(universe if universe is not None else herbrand_universe(problem))
    return sum(h ** len(c.variables()) for c in problem.clauses)


def ground_clauses(problem: Problem, universe=None):
    """All ground instances as CSR arrays over compact atom ids.

    Atoms are numbered in first-occurrence order of the instance stream:
    clauses in order, and for each clause the assignments in lexicographic
    order of the constants (sorted by name) over its variables in
    first-occurrence order.
    """
    consts = sorted(universe if universe is not None else herbrand_universe(problem), key=lambda c: c.name)
    h = len(consts)
    cidx = {c: i for i, c in enumerate(consts)}
    offsets: dict[str, int] = {}
    total = 0
    for c in problem.clauses:
        for lit in c:
            if lit.predicate not in offsets:
                offsets[lit.predicate] = total
                total += h ** lit.arity
    if total >= 2**62:
        raise BudgetExceeded("ground atom space does not fit in 64-bit ids")

    blocks = []
    counts = []
    for c in problem.clauses:
        vs = c.variables()
        m = len(vs)
        n_inst = h**m
        width = len(c)
        counts.append(np.full(n_inst, width, dtype=np.int64))
        if width == 0:
            continue
        vpos = {v: k for k, v in enumerate(vs)}
        if m:
            assign = np.indices((h,) * m, dtype=np.int64).reshape(m, -1)
        else:
            assign = np.zeros((0, 1), dtype=np.int64)
        cols = []
        for lit in c:
            ids = np.full(n_inst, offsets[lit.predicate], dtype=np.int64)
            a = lit.arity
            for k, t in enumerate(lit.args):
                weight = h ** (a - 1 - k)
                if isinstance(t, Var):
                    ids += assign[vpos[t]] * weight
                else:
                    ids += cidx[t] * weight
            cols.append(ids + 1 if lit.positive else -(ids + 1))
        blocks.append(np.stack(cols, axis=1).reshape(-1))

    lens = np.concatenate(counts) if counts else np.zeros(0, dtype=np.int64)
    indptr = np.zeros(len(lens) + 1, dtype=np.int64)
    np.cumsum(lens, out=indptr[1:])
    signed = np.concatenate(blocks) if blocks else np.zeros(0, dtype=np.int64)
    if signed.size == 0:
        return 0, indptr, signed.astype(np.int32)
    raw = np.abs(signed) - 1
    if total <= max(DENSE_ATOM_LIMIT, 4 * raw.size):
        # dense table of first occurrences; much cheaper than sorting
        first = np.full(total, raw.size, dtype=np.int64)
        np.minimum.at(first, raw, np.arange(raw.size, dtype=np.int64))
        used = np.flatnonzero(first < raw.size)
        n_atoms = used.size
        rank = np.empty(total, dtype=np.int64)
        rank[used[np.argsort(first[used], kind="stable")]] = np.arange(n_atoms)
        compact = rank[raw] + 1
    else:
        uniq, first, inverse = np.unique(raw, return_index=True, return_inverse=True)
        n_atoms = len(uniq)
        rank = np.empty(n_atoms, dtype=np.int64)
        rank[np.argsort(first, kind="stable")] = np.arange(n_atoms)
        compact = rank[inverse.reshape(-1)] + 1
    lits = np.where(signed > 0, compact, -compact).astype(np.int32)
    return n_atoms, indptr, lits


def oracle_solve(problem: Problem, budget: int = DEFAULT_ORACLE_BUDGET) -> Verdict:
    """Ground every clause over the Herbrand universe and run DPLL on the union.

    Works for any function-free problem, member of the fragment or not.
    """
    universe = herbrand_universe(problem)
    size = grounding_size(problem, universe)
    if size > budget:
        raise BudgetExceeded(f"grounding needs {size} clause instances, budget is {budget}")
    n, indptr, lits = ground_clauses(problem, universe)
    values = _kernel.solve_csr(n, indptr, lits)
    return Verdict.UNSAT if values is None else Verdict.SAT
