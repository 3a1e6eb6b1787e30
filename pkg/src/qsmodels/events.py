"""Structured match event log (newline-delimited JSON) and report rebuild."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO


@dataclass
class EventLog:
    records: list[dict] = field(default_factory=list)
    stream: IO[str] | None = None

    def append(self, record: dict) -> None:
        self.records.append(record)
        if self.stream is not None:
            self.stream.write(json.dumps(record, sort_keys=True) + "\n")
            self.stream.flush()

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.records)


def parse_jsonl(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


@dataclass(frozen=True)
class MatchReport:
    outcome: str  # "bot_win" | "enemy_win" | "timeout"
    ticks: int
    replans: int
    invalidations: int
    preemptions: int
    plan_latencies_ms: tuple[float, ...]
    horizon_histogram: dict[int, int]

    def as_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "ticks": self.ticks,
            "replans": self.replans,
            "invalidations": self.invalidations,
            "preemptions": self.preemptions,
            "plan_latencies_ms": list(self.plan_latencies_ms),
            "horizon_histogram": {str(k): v for k, v in sorted(self.horizon_histogram.items())},
        }


def rebuild_report(records: list[dict], outcome: str, ticks: int) -> MatchReport:
    """Reconstruct every report counter from the event log alone."""
    latencies: list[float] = []
    histogram: dict[int, int] = {}
    replans = invalidations = preemptions = 0
    for r in records:
        kind = r.get("event")
        if kind == "plan_requested":
            replans += 1
        elif kind == "plan_invalidated":
            invalidations += 1
        elif kind == "preemption_fired":
            preemptions += 1
        elif kind == "plan_ready":
            latencies.append(r["latency_ms"])
            histogram[r["horizon"]] = histogram.get(r["horizon"], 0) + 1
    return MatchReport(
        outcome=outcome,
        ticks=ticks,
        replans=replans,
        invalidations=invalidations,
        preemptions=preemptions,
        plan_latencies_ms=tuple(latencies),
        horizon_histogram=histogram,
    )
