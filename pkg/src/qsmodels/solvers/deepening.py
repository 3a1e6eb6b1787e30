"""Iterative-deepening driver: plan at the first satisfiable horizon."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Protocol

from ..perception import Fluent
from ..planning.decoder import decode_plan, decode_preemption, decode_trajectory
from ..planning.encoder import encode
from ..planning.problem import Plan, PlanningProblem, PreemptionTable
from .external import DEFAULT_TIMEOUT_S, BackendConfig, solve_external
from .oracle import solve_oracle
from .result import Sat, SolveResult, SolverFailure, Unsat


class Backend(Protocol):
    name: str

    def solve(self, problem: PlanningProblem) -> SolveResult: ...


class OracleBackend:
    name = "oracle"

    def solve(self, problem: PlanningProblem) -> SolveResult:
        return solve_oracle(problem)


class ExternalBackend:
    def __init__(self, config: BackendConfig | None = None, timeout_s: float = DEFAULT_TIMEOUT_S):
        self.config = config
        self.timeout_s = timeout_s
        self.name = f"external:{config.name}" if config else "external"

    def solve(self, problem: PlanningProblem) -> SolveResult:
        return solve_external(encode(problem), self.timeout_s, self.config)


@dataclass(frozen=True)
class HorizonAttempt:
    horizon: int
    outcome: str  # "sat" | "unsat" | "failure"
    latency_s: float


@dataclass(frozen=True)
class DeepeningResult:
    plan: Plan
    preemption: PreemptionTable
    trajectory: tuple[frozenset[Fluent], ...]
    horizon: int
    attempts: tuple[HorizonAttempt, ...]


@dataclass(frozen=True)
class NoPlan:
    diagnostic: str
    attempts: tuple[HorizonAttempt, ...] = field(default_factory=tuple)


def plan_with_deepening(
    problem: PlanningProblem,
    n_max: int,
    backend: Backend,
    clock: Callable[[], float] = time.monotonic,
) -> DeepeningResult | NoPlan:
    """Try horizons 1..n_max in order; decode the first Sat.

    SolverFailure becomes NoPlan with its diagnostic; a decode failure
    (encoder/solver mismatch) propagates as MalformedAnswerSet.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    attempts: list[HorizonAttempt] = []
    for horizon in range(1, n_max + 1):
        sized = problem.with_horizon(horizon)
        started = clock()
        result = backend.solve(sized)
        elapsed = clock() - started
        if isinstance(result, Sat):
            attempts.append(HorizonAttempt(horizon, "sat", elapsed))
            return DeepeningResult(
                plan=decode_plan(result.answer),
                preemption=decode_preemption(result.answer, horizon, problem.emergencies),
                trajectory=decode_trajectory(result.answer, horizon),
                horizon=horizon,
                attempts=tuple(attempts),
            )
        if isinstance(result, SolverFailure):
            attempts.append(HorizonAttempt(horizon, "failure", elapsed))
            return NoPlan(
                diagnostic=f"solver failure at horizon {horizon}: {result.diagnostic}",
                attempts=tuple(attempts),
            )
        assert isinstance(result, Unsat)
        attempts.append(HorizonAttempt(horizon, "unsat", elapsed))
    return NoPlan(diagnostic=f"no plan at any horizon 1..{n_max}", attempts=tuple(attempts))
