"""Analysis and decision procedures for the QEALM fragment of EPR."""

from ._kernel import KERNEL
from .fragment import (
    Classification,
    FragmentReport,
    NotInFragment,
    check_membership,
    classify,
    fork_indices,
    is_member,
    obs1_transform,
    outer_positions_cnf,
)
from .generate import GeneratorParams, QbfParams, generate_random_instance, generate_random_qbf
from .ground import BudgetExceeded, Verdict, oracle_solve, sat_ground
from .logic import Clause, Const, Diagnostic, Literal, Problem, Substitution, Var, apply_substitution, lits
from .qbf import TranslationMeta, qbf_expand, qbf_to_qealm, qbf_to_restricted
from .qdimacs import ParseError, QbfProblem, QuantifierBlock, parse_qdimacs, write_qdimacs
from .resolution import closure_check, factor, mgu, resolve
from .scan import ScanRecord, scan_corpus
from .solver import SolveResult, solve_by_alternation
from .tptp import parse_tptp, read_tptp, write_tptp

__version__ = "0.1.0"

__all__ = [
    "KERNEL", "Classification", "FragmentReport", "NotInFragment", "check_membership", "classify",
    "fork_indices", "is_member", "obs1_transform", "outer_positions_cnf", "GeneratorParams", "QbfParams",
    "generate_random_instance", "generate_random_qbf", "BudgetExceeded", "Verdict", "oracle_solve",
    "sat_ground", "Clause", "Const", "Diagnostic", "Literal", "Problem", "Substitution", "Var",
    "apply_substitution", "lits", "TranslationMeta", "qbf_expand", "qbf_to_qealm", "qbf_to_restricted",
    "ParseError", "QbfProblem", "QuantifierBlock", "parse_qdimacs", "write_qdimacs", "closure_check",
    "factor", "mgu", "resolve", "ScanRecord", "scan_corpus", "SolveResult", "solve_by_alternation",
    "parse_tptp", "read_tptp", "write_tptp",
]
