"""Solve outcomes shared by every backend."""

from __future__ import annotations

from dataclasses import dataclass

from ..atoms import AnswerSet


@dataclass(frozen=True)
class Sat:
    answer: AnswerSet


@dataclass(frozen=True)
class Unsat:
    pass


@dataclass(frozen=True)
class SolverFailure:
    diagnostic: str


SolveResult = Sat | Unsat | SolverFailure
