"""Reader and writer for the clause-normal-form part of TPTP.

Only ``cnf`` annotated formulas over function-free atoms are accepted.
Equality atoms and compound terms are parsed far enough to be reported,
then rejected.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .logic import EQUALITY, Apply, Clause, Const, Diagnostic, Literal, Problem, Var, rename_clause, validate_problem
from .qdimacs import ParseError

TPTP_ENV = "TPTP"
CLAUSE_ROLES = {"axiom", "hypothesis", "negated_conjecture"}
LANGUAGES = {"cnf", "fof", "tff", "thf", "tcf", "tpi"}

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*|/\*.*?\*/)
  | (?P<dollar>\$\$?[a-z][A-Za-z0-9_]*)
  | (?P<upper>[A-Z][A-Za-z0-9_]*)
  | (?P<lower>[a-z][A-Za-z0-9_]*)
  | (?P<squote>'(?:\\.|[^'\\])*')
  | (?P<dquote>"(?:\\.|[^"\\])*")
  | (?P<number>[+-]?[0-9]+(?:/[0-9]+|\.[0-9]+(?:[eE][+-]?[0-9]+)?|[eE][+-]?[0-9]+)?)
  | (?P<op>!=|=>|<=>|<=|<~>|~\||~&|[()\[\],.|&~=:!?*+<>@^-])
    """,
    re.VERBOSE | re.DOTALL,
)
_LOWER_WORD = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
_INTEGER = re.compile(r"[+-]?[0-9]+\Z")


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError([Diagnostic(f"unexpected character {text[pos]!r}", (line, pos - line_start + 1),
                                         code="syntax")])
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            out.append(Token(kind, chunk, line, pos - line_start + 1))
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    return out


def _symbol(tok: Token) -> str:
    if tok.kind == "squote":
        inner = tok.text[1:-1]
        if _LOWER_WORD.match(inner):
            return inner
    return tok.text


@dataclass
class TptpFile:
    """Everything read from one top-level file, before EPR validation."""

    clauses: list = field(default_factory=list)
    names: list = field(default_factory=list)
    roles: list = field(default_factory=list)
    languages: set = field(default_factory=set)
    diagnostics: list = field(default_factory=list)
    signature: dict = field(default_factory=dict)
    constants: set = field(default_factory=set)

    @property
    def errors(self) -> list:
        return [d for d in self.diagnostics if d.severity == "error"]

    @property
    def is_cnf(self) -> bool:
        return self.languages <= {"cnf"}

    def problem(self) -> Problem:
        sig = {p: a for p, a in self.signature.items() if p not in (EQUALITY, "!=")}
        return Problem(sig, frozenset(self.constants), tuple(self.clauses))


class _Reader:
    def __init__(self, tokens, out: TptpFile, include_dir, seen_files, origin=""):
        self.toks = tokens
        self.i = 0
        self.out = out
        self.include_dir = include_dir
        self.seen_files = seen_files
        self.origin = origin

    def peek(self, k=0) -> Optional[Token]:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def fail(self, msg, tok=None):
        tok = tok or self.peek() or (self.toks[-1] if self.toks else Token("eof", "", 1, 1))
        raise _Syntax(Diagnostic(msg, (tok.line, tok.col), code="syntax"))

    def take(self, text=None, kind=None) -> Token:
        tok = self.peek()
        if tok is None:
            self.fail(f"unexpected end of input, expected {text or kind}")
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            self.fail(f"expected {text or kind}, found {tok.text!r}", tok)
        self.i += 1
        return tok

    def at(self, text) -> bool:
        tok = self.peek()
        return tok is not None and tok.text == text and tok.kind in ("op",)

    def skip_balanced_to_end(self):
        """Skip to the ``)`` closing the current annotated formula and its ``.``."""
        depth = 0
        while True:
            tok = self.peek()
            if tok is None:
                self.fail("unterminated annotated formula")
            self.i += 1
            if tok.kind == "op" and tok.text in "([":
                depth += 1
            elif tok.kind == "op" and tok.text in ")]":
                if depth == 0:
                    self.take(".")
                    return
                depth -= 1

    def run(self):
        while self.peek() is not None:
            start = self.i
            try:
                self.unit()
            except _Syntax as e:
                self.out.diagnostics.append(e.diagnostic)
                # resynchronise after the next "." that ends a unit
                self.i = max(self.i, start + 1)
                while self.peek() is not None:
                    tok = self.take()
                    if tok.text == "." and tok.kind == "op":
                        break

    def unit(self):
        head = self.take(kind="lower")
        if head.text == "include":
            return self.include(head)
        if head.text not in LANGUAGES:
            self.fail(f"unknown annotated formula kind {head.text!r}", head)
        self.out.languages.add(head.text)
        self.take("(")
        if head.text != "cnf":
            self.out.diagnostics.append(Diagnostic(f"unsupported language {head.text}", (head.line, head.col),
                                                   code="language"))
            self.skip_balanced_to_end()
            return
        name_tok = self.take()
        if name_tok.kind not in ("lower", "squote", "number"):
            self.fail(f"bad formula name {name_tok.text!r}", name_tok)
        self.take(",")
        role = self.take(kind="lower")
        if role.text not in CLAUSE_ROLES:
            self.out.diagnostics.append(Diagnostic(f"role {role.text} treated as a clause", (role.line, role.col),
                                                   severity="warning", code="role"))
        self.take(",")
        lits, trivially_true = self.disjunction()
        if self.at(","):
            self.skip_balanced_to_end()
        else:
            self.take(")")
            self.take(".")
        if trivially_true:
            self.out.diagnostics.append(Diagnostic(f"clause {_symbol(name_tok)} contains $true; dropped",
                                                   (name_tok.line, name_tok.col), severity="warning", code="true"))
            return
        self.add_clause(_symbol(name_tok), role.text, lits, name_tok)

    def add_clause(self, name, role, lits, tok):
        ci = len(self.out.clauses)
        for lit in lits:
            prev = self.out.signature.setdefault(lit.predicate, lit.arity)
            if prev != lit.arity:
                self.out.diagnostics.append(Diagnostic(
                    f"{lit.predicate} used with arity {lit.arity} and {prev}", (tok.line, tok.col), code="arity"))
            for t in lit.args:
                self._collect_constants(t)
        self.out.clauses.append(Clause(tuple(lits)))
        self.out.names.append(name)
        self.out.roles.append(role)
        return ci

    def _collect_constants(self, t):
        if isinstance(t, Const):
            self.out.constants.add(t)
        elif isinstance(t, Apply):
            for a in t.args:
                self._collect_constants(a)

    def include(self, head):
        self.take("(")
        target = self.take(kind="squote")
        selection = None
        if self.at(","):
            self.take(",")
            self.take("[")
            selection = set()
            while not self.at("]"):
                selection.add(_symbol(self.take()))
                if self.at(","):
                    self.take(",")
            self.take("]")
        self.take(")")
        self.take(".")
        rel = target.text[1:-1]
        base = self.include_dir or os.environ.get(TPTP_ENV) or "."
        path = Path(base) / rel
        if path in self.seen_files:
            self.fail(f"include cycle through {rel}", target)
        try:
            text = path.read_text(encoding="latin-1")
        except OSError as e:
            self.out.diagnostics.append(Diagnostic(f"cannot include {rel}: {e.strerror or e}",
                                                   (target.line, target.col), code="include"))
            return
        sub = TptpFile()
        _Reader(tokenize(text), sub, self.include_dir, self.seen_files | {path}, str(path)).run()
        self.out.languages |= sub.languages
        for d in sub.diagnostics:
            self.out.diagnostics.append(Diagnostic(f"in {rel}: {d.message}", d.location, d.severity, d.code))
        for c, name, role in zip(sub.clauses, sub.names, sub.roles):
            if selection is None or name in selection:
                self.add_clause(name, role, list(c), target)

    def disjunction(self):
        lits: list = []
        trivially_true = False
        while True:
            if self.at("("):
                self.take("(")
                inner, t = self.disjunction()
                self.take(")")
                lits.extend(inner)
                trivially_true |= t
            else:
                lit = self.literal()
                if lit is True:
                    trivially_true = True
                elif lit is not False:
                    lits.append(lit)
            if self.at("|"):
                self.take("|")
                continue
            return lits, trivially_true

    def literal(self):
        positive = True
        while self.at("~"):
            self.take("~")
            positive = not positive
        if self.at("("):
            # a parenthesised single literal under negation
            self.take("(")
            lit = self.literal()
            self.take(")")
        else:
            lit = self.atom()
        if isinstance(lit, bool):
            return lit if positive else not lit
        return lit if positive else lit.negate()

    def atom(self):
        tok = self.peek()
        if tok is None:
            self.fail("expected a literal")
        if tok.kind == "dollar" and tok.text in ("$false", "$true"):
            self.i += 1
            return tok.text == "$true"
        left = self.term(as_atom=True)
        if self.at("=") or self.at("!="):
            op = self.take().text
            right = self.term()
            return Literal(op == "=", EQUALITY, (left, right))
        if isinstance(left, Var):
            self.fail(f"variable {left} used as an atom", tok)
        if isinstance(left, Apply):
            return Literal(True, left.functor, tuple(left.args))
        return Literal(True, left.name, ())

    def term(self, as_atom=False):
        tok = self.take()
        if tok.kind == "upper":
            return Var(tok.text)
        if tok.kind in ("lower", "squote", "number", "dquote", "dollar"):
            name = _symbol(tok)
            if self.at("("):
                self.take("(")
                args = [self.term()]
                while self.at(","):
                    self.take(",")
                    args.append(self.term())
                self.take(")")
                return Apply(name, tuple(args))
            return Const(name)
        self.fail(f"expected a term, found {tok.text!r}", tok)


class _Syntax(Exception):
    def __init__(self, diagnostic):
        self.diagnostic = diagnostic


def read_tptp(text: str, include_dir=None) -> TptpFile:
    """Tokenise and read everything; diagnostics are collected, never raised."""
    out = TptpFile()
    try:
        toks = tokenize(text)
    except ParseError as e:
        out.diagnostics.extend(e.diagnostics)
        return out
    _Reader(toks, out, include_dir, frozenset()).run()
    return out


def parse_tptp(text: str, include_dir=None) -> Problem:
    """Parse a CNF problem; raise :class:`ParseError` on any error diagnostic."""
    f = read_tptp(text, include_dir)
    errors = list(f.errors)
    if not errors:
        problem = f.problem()
        errors = [d for d in validate_problem(problem) if d.severity == "error"]
        if not errors:
            return problem
    raise ParseError(errors)


def _name(s: str) -> str:
    if _LOWER_WORD.match(s) or _INTEGER.match(s) or (len(s) >= 2 and s[0] == s[-1] == "'"):
        return s
    return "'" + s.replace("\\", "\\\\").replace("'", "\\'") + "'"


def _literal_text(lit: Literal) -> str:
    sign = "" if lit.positive else "~"
    if not lit.args:
        return sign + _name(lit.predicate)
    return f"{sign}{_name(lit.predicate)}({','.join(t.name if isinstance(t, Var) else _name(t.name) for t in lit.args)})"


def write_tptp(problem: Problem, names=None) -> str:
    """One ``cnf`` line per clause, role ``axiom``, variables renamed ``X0, X1, ...``."""
    lines = []
    for k, c in enumerate(problem.clauses):
        c = rename_clause(c, "X{}")
        body = " | ".join(_literal_text(l) for l in c) if len(c) else "$false"
        name = names[k] if names else f"c{k}"
        lines.append(f"cnf({name}, axiom, ({body})).")
    return "\n".join(lines) + ("\n" if lines else "")
