"""Adapter for external grounder/solver pipelines run as OS processes.

Backends are configured as command templates: an optional grounder stage
and a solver stage, each reading standard input and writing standard
output. The QSM_SOLVER environment variable overrides the configured
pipeline; its value is either `oracle`, a single solver command
(clingo-style, grounds internally), or `grounder_cmd | solver_cmd`.
"""

from __future__ import annotations

import os
import shlex
import shutil
import subprocess
from dataclasses import dataclass

from ..atoms import UNSAT, ParseError, parse_answer_set
from .result import Sat, SolveResult, SolverFailure, Unsat

DEFAULT_TIMEOUT_S = 8.0  # same order of magnitude as the multi-second solves this tolerates


@dataclass(frozen=True)
class BackendConfig:
    name: str
    grounder: tuple[str, ...] | None
    solver: tuple[str, ...]


# Known pipelines, probed in order when no explicit configuration is given.
KNOWN_PIPELINES: tuple[BackendConfig, ...] = (
    BackendConfig("clingo", None, ("clingo", "--models=1", "--verbose=1", "-")),
    BackendConfig("gringo-clasp", ("gringo", "-"), ("clasp", "1")),
    BackendConfig("lparse-smodels", ("lparse",), ("smodels", "1")),
)


def discover_backend() -> BackendConfig | None:
    for config in KNOWN_PIPELINES:
        first = config.grounder[0] if config.grounder else config.solver[0]
        rest = config.solver[0]
        if shutil.which(first) and shutil.which(rest):
            return config
    return None


def backend_from_spec(spec: str) -> BackendConfig:
    """Parse `solver_cmd` or `grounder_cmd | solver_cmd`."""
    parts = [shlex.split(p) for p in spec.split("|")]
    if any(not p for p in parts) or len(parts) > 2:
        raise ValueError(f"bad solver pipeline spec {spec!r}")
    if len(parts) == 1:
        return BackendConfig(parts[0][0], None, tuple(parts[0]))
    return BackendConfig(f"{parts[0][0]}-{parts[1][0]}", tuple(parts[0]), tuple(parts[1]))


def backend_override() -> str | None:
    return os.environ.get("QSM_SOLVER") or None


def _run_stage(cmd: tuple[str, ...], stdin_text: str, timeout: float) -> tuple[str, str, int]:
    proc = subprocess.run(
        cmd,
        input=stdin_text,
        capture_output=True,
        text=True,
        timeout=timeout,  # run() kills and reaps the child on expiry
    )
    return proc.stdout, proc.stderr, proc.returncode


def solve_external(
    program: str,
    timeout_s: float = DEFAULT_TIMEOUT_S,
    config: BackendConfig | None = None,
) -> SolveResult:
    """Pipe the program through the configured pipeline; never raises."""
    if config is None:
        config = discover_backend()
    if config is None:
        return SolverFailure("no external solver pipeline found on PATH")
    text = program
    try:
        if config.grounder is not None:
            text, err, code = _run_stage(config.grounder, text, timeout_s)
            if code != 0 and not text.strip():
                return SolverFailure(
                    f"grounder {config.grounder[0]} exited {code}: {err.strip()[:200]}"
                )
        out, err, code = _run_stage(config.solver, text, timeout_s)
    except FileNotFoundError as exc:
        return SolverFailure(f"spawn failed: {exc}")
    except subprocess.TimeoutExpired:
        return SolverFailure(f"timeout after {timeout_s}s in {config.name}")
    except OSError as exc:
        return SolverFailure(f"spawn failed: {exc}")
    try:
        parsed = parse_answer_set(out)
    except ParseError as exc:
        return SolverFailure(
            f"unparseable solver output (exit {code}): {exc}; stderr: {err.strip()[:200]}"
        )
    if parsed is UNSAT:
        return Unsat()
    return Sat(parsed)
