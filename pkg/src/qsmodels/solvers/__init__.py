from ..atoms import UNSAT, AnswerSet, GroundAtom, ParseError, Term, parse_answer_set, parse_atom
from .deepening import (
    Backend,
    DeepeningResult,
    ExternalBackend,
    HorizonAttempt,
    NoPlan,
    OracleBackend,
    plan_with_deepening,
)
from .external import (
    DEFAULT_TIMEOUT_S,
    BackendConfig,
    backend_from_spec,
    backend_override,
    discover_backend,
    solve_external,
)
from .oracle import solve_oracle
from .result import Sat, SolveResult, SolverFailure, Unsat

__all__ = [
    "UNSAT",
    "AnswerSet",
    "Backend",
    "BackendConfig",
    "DEFAULT_TIMEOUT_S",
    "DeepeningResult",
    "ExternalBackend",
    "GroundAtom",
    "HorizonAttempt",
    "NoPlan",
    "OracleBackend",
    "ParseError",
    "Sat",
    "SolveResult",
    "SolverFailure",
    "Term",
    "Unsat",
    "backend_from_spec",
    "backend_override",
    "discover_backend",
    "parse_answer_set",
    "parse_atom",
    "plan_with_deepening",
    "solve_external",
    "solve_oracle",
]
