"""QDIMACS reading and writing."""

from __future__ import annotations

from dataclasses import dataclass

from .logic import Diagnostic


class ParseError(ValueError):
    """Input rejected; ``diagnostics`` holds every error found."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics) or "parse error")


@dataclass(frozen=True)
class QuantifierBlock:
    quantifier: str  # "e" or "a"
    variables: tuple

    @property
    def existential(self) -> bool:
        return self.quantifier == "e"


@dataclass(frozen=True)
class QbfProblem:
    prefix: tuple
    matrix: tuple
    num_vars: int = 0

    def quantifier_of(self) -> dict:
        return {v: b.quantifier for b in self.prefix for v in b.variables}

    def order(self) -> list:
        """Variables in prefix order."""
        return [v for b in self.prefix for v in b.variables]

    def is_closed(self) -> bool:
        q = self.quantifier_of()
        return all(abs(l) in q for c in self.matrix for l in c)


def _merge_blocks(blocks):
    out = []
    for q, vs in blocks:
        if not vs:
            continue
        if out and out[-1][0] == q:
            out[-1][1].extend(vs)
        else:
            out.append([q, list(vs)])
    return tuple(QuantifierBlock(q, tuple(vs)) for q, vs in out)


def parse_qdimacs(text: str) -> QbfProblem:
    errors: list[Diagnostic] = []
    header = None
    blocks: list = []
    quantified: dict[int, int] = {}
    matrix: list[tuple] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        toks = line.split()
        if toks[0] == "p":
            if header is not None:
                errors.append(Diagnostic("duplicate header", (lineno, 1), code="syntax"))
                continue
            if len(toks) != 4 or toks[1] != "cnf" or not all(t.isdigit() for t in toks[2:]):
                errors.append(Diagnostic(f"malformed header {line!r}", (lineno, 1), code="syntax"))
                header = (0, 0)
                continue
            header = (int(toks[2]), int(toks[3]))
            continue
        if header is None:
            errors.append(Diagnostic("missing 'p cnf' header before content", (lineno, 1), code="syntax"))
            header = (0, 0)
        if toks[0] in ("a", "e"):
            if matrix:
                errors.append(Diagnostic("quantifier line after clauses", (lineno, 1), code="syntax"))
            try:
                nums = [int(t) for t in toks[1:]]
            except ValueError:
                errors.append(Diagnostic(f"non-integer token in {line!r}", (lineno, 1), code="syntax"))
                continue
            if not nums or nums[-1] != 0:
                errors.append(Diagnostic("unterminated quantifier line", (lineno, len(raw)), code="syntax"))
                continue
            body = nums[:-1]
            if not body:
                errors.append(Diagnostic("empty quantifier block", (lineno, 1), code="syntax"))
            for v in body:
                if v <= 0:
                    errors.append(Diagnostic(f"variable {v} cannot be quantified", (lineno, 1), code="syntax"))
                elif v in quantified:
                    errors.append(Diagnostic(f"variable {v} quantified twice (first on line {quantified[v]})",
                                             (lineno, 1), code="syntax"))
                else:
                    quantified[v] = lineno
            blocks.append((toks[0], [v for v in body if v > 0]))
            continue
        try:
            nums = [int(t) for t in toks]
        except ValueError:
            errors.append(Diagnostic(f"non-integer token in {line!r}", (lineno, 1), code="syntax"))
            continue
        if nums[-1] != 0:
            errors.append(Diagnostic("unterminated clause line", (lineno, len(raw)), code="syntax"))
            continue
        current: list[int] = []
        for x in nums:
            if x == 0:
                matrix.append(tuple(current))
                current = []
            else:
                current.append(x)
    if header is None and not errors:
        errors.append(Diagnostic("missing 'p cnf' header", (1, 1), code="syntax"))
    if errors:
        raise ParseError(errors)
    used = sorted({abs(l) for c in matrix for l in c})
    free = [v for v in used if v not in quantified]
    if free:
        blocks.insert(0, ("e", free))
    n = max([header[0]] + used + list(quantified)) if (used or quantified) else header[0]
    return QbfProblem(_merge_blocks(blocks), tuple(matrix), n)


def write_qdimacs(qbf: QbfProblem) -> str:
    lines = [f"p cnf {qbf.num_vars} {len(qbf.matrix)}"]
    for b in qbf.prefix:
        lines.append(f"{b.quantifier} {' '.join(map(str, b.variables))} 0")
    for c in qbf.matrix:
        lines.append(" ".join(map(str, list(c) + [0])))
    return "\n".join(lines) + "\n"
