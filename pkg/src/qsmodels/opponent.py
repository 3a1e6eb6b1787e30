"""Frequency-count model of enemy movement between waypoints."""

from __future__ import annotations

from dataclasses import dataclass, field

STALENESS_WINDOW_TICKS = 30  # 3 s at 10 Hz; larger gaps don't fabricate routes


@dataclass
class OpponentModel:
    """Counts observed waypoint-to-waypoint transitions; predicts the argmax.

    Counts never decrease (no decay). Owned by the tick flow; the planner
    request builder reads an immutable copy.
    """

    counts: dict[tuple[str, str], int] = field(default_factory=dict)
    last_seen: tuple[str, int] | None = None
    staleness_window: int = STALENESS_WINDOW_TICKS

    def observe(self, waypoint: str, tick: int) -> None:
        if self.last_seen is not None:
            prev_wp, prev_tick = self.last_seen
            if waypoint != prev_wp and tick - prev_tick <= self.staleness_window:
                key = (prev_wp, waypoint)
                self.counts[key] = self.counts.get(key, 0) + 1
        self.last_seen = (waypoint, tick)

    def predict_next(self, waypoint: str) -> str:
        """Argmax outgoing count; ties to the smallest id; no data = stay put."""
        best: tuple[int, str] | None = None
        for (src, dst), n in self.counts.items():
            if src != waypoint or n <= 0:
                continue
            if best is None or (-n, dst) < best:
                best = (-n, dst)
        return best[1] if best else waypoint

    def copy(self) -> OpponentModel:
        return OpponentModel(
            counts=dict(self.counts),
            last_seen=self.last_seen,
            staleness_window=self.staleness_window,
        )

    def to_record(self) -> dict:
        """Serializable counts for the metrics log (record type opponent_counts)."""
        return {
            "counts": {f"{a}->{b}": n for (a, b), n in sorted(self.counts.items())},
            "last_seen": list(self.last_seen) if self.last_seen else None,
        }
