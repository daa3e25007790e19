"""Function-free first-order CNF: terms, literals, clauses, problems.

Everything here is immutable. Variable identity is clause-local: ``X`` in
two different clauses denotes two unrelated variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence, Union

EQUALITY = "="


@dataclass(frozen=True, order=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, order=True)
class Const:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Apply:
    """A function application.

    Never legal inside a Problem; it exists so that frontends which admit
    compound terms can hand them to :func:`validate_problem` for rejection.
    """

    functor: str
    args: tuple

    def __str__(self) -> str:
        return f"{self.functor}({', '.join(map(str, self.args))})"


Term = Union[Var, Const, Apply]


@dataclass(frozen=True)
class Literal:
    positive: bool
    predicate: str
    args: tuple = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    def variables(self) -> Iterator[Var]:
        for t in self.args:
            if isinstance(t, Var):
                yield t

    def is_ground(self) -> bool:
        return not any(isinstance(t, Var) for t in self.args)

    def first_position(self, v: Var) -> int:
        """1-based position of the first occurrence of ``v``, or 0."""
        for i, t in enumerate(self.args, 1):
            if t == v:
                return i
        return 0

    def negate(self) -> "Literal":
        return Literal(not self.positive, self.predicate, self.args)

    def atom(self) -> tuple:
        return (self.predicate, self.args)

    def __str__(self) -> str:
        sign = "" if self.positive else "~"
        if not self.args:
            return f"{sign}{self.predicate}"
        return f"{sign}{self.predicate}({','.join(map(str, self.args))})"


@dataclass(frozen=True)
class Clause:
    literals: tuple = ()

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __getitem__(self, i: int) -> Literal:
        return self.literals[i]

    def variables(self) -> list[Var]:
        """Distinct variables in first-occurrence order."""
        seen: dict[Var, None] = {}
        for lit in self.literals:
            for v in lit.variables():
                seen.setdefault(v, None)
        return list(seen)

    def is_ground(self) -> bool:
        return all(lit.is_ground() for lit in self.literals)

    def __str__(self) -> str:
        if not self.literals:
            return "$false"
        return " | ".join(map(str, self.literals))


def clause(*literals: Literal) -> Clause:
    return Clause(tuple(literals))


@dataclass(frozen=True)
class Problem:
    signature: Mapping[str, int]
    constants: frozenset
    clauses: tuple = ()

    def __post_init__(self):
        # normalise containers so equal problems compare equal
        object.__setattr__(self, "signature", dict(self.signature))
        object.__setattr__(self, "constants", frozenset(self.constants))
        object.__setattr__(self, "clauses", tuple(self.clauses))

    def __hash__(self):
        return hash((tuple(sorted(self.signature.items())), self.constants, self.clauses))

    @classmethod
    def from_clauses(cls, clauses: Iterable[Clause], constants: Iterable[Const] = ()) -> "Problem":
        """Build a problem, inferring the signature and constant set from use."""
        clauses = tuple(clauses)
        signature: dict[str, int] = {}
        consts = set(constants)
        for c in clauses:
            for lit in c:
                signature.setdefault(lit.predicate, lit.arity)
                consts.update(t for t in lit.args if isinstance(t, Const))
        return cls(signature, frozenset(consts), clauses)

    def with_clauses(self, clauses: Iterable[Clause]) -> "Problem":
        """Same signature and constants, different clause list."""
        return Problem(self.signature, self.constants, tuple(clauses))

    def literal_count(self) -> int:
        return sum(len(c) for c in self.clauses)

    def variable_count(self) -> int:
        """Number of (clause, variable) pairs, since variables are clause-local."""
        return sum(len(c.variables()) for c in self.clauses)

    def is_ground(self) -> bool:
        return all(c.is_ground() for c in self.clauses)

    def has_empty_clause(self) -> bool:
        return any(len(c) == 0 for c in self.clauses)

    def __str__(self) -> str:
        return "\n".join(str(c) for c in self.clauses)


class Substitution:
    """A finite map from variables to terms, applied simultaneously."""

    __slots__ = ("bindings",)

    def __init__(self, bindings: Mapping[Var, Term] | None = None):
        self.bindings: dict[Var, Term] = dict(bindings or {})

    def __eq__(self, other):
        return isinstance(other, Substitution) and self.bindings == other.bindings

    def __repr__(self):
        inner = ", ".join(f"{k}->{v}" for k, v in sorted(self.bindings.items(), key=lambda kv: kv[0].name))
        return "{" + inner + "}"

    def __len__(self):
        return len(self.bindings)

    def is_idempotent(self) -> bool:
        rng = set()
        for t in self.bindings.values():
            if isinstance(t, Var):
                rng.add(t)
        return not (rng & self.bindings.keys())

    def term(self, t: Term) -> Term:
        if isinstance(t, Var):
            return self.bindings.get(t, t)
        if isinstance(t, Apply):
            return Apply(t.functor, tuple(self.term(a) for a in t.args))
        return t

    def literal(self, lit: Literal) -> Literal:
        if not self.bindings:
            return lit
        return Literal(lit.positive, lit.predicate, tuple(self.term(t) for t in lit.args))

    def then(self, other: "Substitution") -> "Substitution":
        """Composition: applying the result equals applying ``self`` then ``other``."""
        out = {v: other.term(t) for v, t in self.bindings.items()}
        for v, t in other.bindings.items():
            out.setdefault(v, t)
        return Substitution({v: t for v, t in out.items() if t != v})

    def to_json(self) -> dict:
        return {k.name: str(v) for k, v in sorted(self.bindings.items(), key=lambda kv: kv[0].name)}


def apply_substitution(c: Clause, sigma: Substitution) -> Clause:
    if not sigma.bindings:
        return c
    return Clause(tuple(sigma.literal(lit) for lit in c.literals))


FRESH_CONSTANT = "u0"


def herbrand_universe(problem: Problem) -> frozenset:
    """The problem's constants, or one fresh constant when there are none."""
    if problem.constants:
        return problem.constants
    taken = set(problem.signature)
    for c in problem.clauses:
        taken.update(v.name for v in c.variables())
    name, k = FRESH_CONSTANT, 0
    while name in taken:
        k += 1
        name = f"u{k}"
    return frozenset({Const(name)})


@dataclass(frozen=True)
class Diagnostic:
    message: str
    location: object = None  # clause index, (line, column), or a path
    severity: str = "error"
    code: str = "invalid"

    def __post_init__(self):
        if not self.message:
            raise ValueError("diagnostic message must be non-empty")

    def __str__(self) -> str:
        where = ""
        if isinstance(self.location, tuple):
            where = f"{self.location[0]}:{self.location[1]}: "
        elif isinstance(self.location, int):
            where = f"clause {self.location}: "
        elif self.location is not None:
            where = f"{self.location}: "
        return f"{where}{self.severity}: {self.message}"

    def to_json(self) -> dict:
        loc = self.location
        if isinstance(loc, tuple):
            loc = list(loc)
        elif loc is not None and not isinstance(loc, int):
            loc = str(loc)
        return {"location": loc, "message": self.message, "severity": self.severity, "code": self.code}


def validate_problem(problem: Problem) -> list[Diagnostic]:
    """One diagnostic per violated invariant; empty iff the problem is legal EPR."""
    out: list[Diagnostic] = []
    for ci, c in enumerate(problem.clauses):
        for lit in c:
            if lit.predicate in (EQUALITY, "!="):
                out.append(Diagnostic(f"equality forbidden: {lit}", ci, code="equality"))
                continue
            declared = problem.signature.get(lit.predicate)
            if declared is None:
                out.append(Diagnostic(f"undeclared predicate {lit.predicate}", ci, code="signature"))
            elif declared != lit.arity:
                out.append(Diagnostic(
                    f"arity mismatch: {lit.predicate} declared /{declared}, used /{lit.arity}", ci, code="arity"))
            for t in lit.args:
                if isinstance(t, Apply):
                    out.append(Diagnostic(f"function symbol {t.functor}/{len(t.args)} in {lit}", ci, code="function"))
                elif isinstance(t, Const) and t not in problem.constants:
                    out.append(Diagnostic(f"undeclared constant {t}", ci, code="signature"))
    for name, arity in problem.signature.items():
        if arity < 0:
            out.append(Diagnostic(f"negative arity for {name}", None, code="arity"))
    return out


def canonical_clause(c: Clause) -> tuple:
    """Hashable form of a clause modulo variable renaming (first-occurrence order)."""
    names: dict[Var, int] = {}
    lits = []
    for lit in c:
        args = []
        for t in lit.args:
            if isinstance(t, Var):
                args.append(("v", names.setdefault(t, len(names))))
            else:
                args.append(("c", t.name))
        lits.append((lit.positive, lit.predicate, tuple(args)))
    return tuple(lits)


def rename_clause(c: Clause, pattern: str = "X{}") -> Clause:
    """Rename variables to ``pattern.format(k)`` in first-occurrence order."""
    sigma = Substitution({v: Var(pattern.format(k)) for k, v in enumerate(c.variables())})
    return Clause(tuple(Literal(l.positive, l.predicate, tuple(sigma.bindings.get(t, t) for t in l.args))
                        for l in c))


def isomorphic(a: Problem, b: Problem) -> bool:
    """Equality up to clause-local variable names (clause order respected)."""
    if len(a.clauses) != len(b.clauses):
        return False
    return all(canonical_clause(x) == canonical_clause(y) for x, y in zip(a.clauses, b.clauses))


def lits(*specs: Sequence) -> Clause:
    """Small builder used by tests and samples.

    Each spec is ``(sign, predicate, *args)`` where ``sign`` is ``"+"`` or
    ``"-"`` and string args starting with an uppercase letter are variables.
    """
    out = []
    for sign, pred, *args in specs:
        terms = tuple(Var(a) if a[:1].isupper() else Const(a) for a in args)
        out.append(Literal(sign == "+", pred, terms))
    return Clause(tuple(out))
