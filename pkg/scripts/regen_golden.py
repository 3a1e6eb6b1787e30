#!/usr/bin/env python3
"""Regenerate the frozen golden duel trace after a deliberate behavior change."""

import hashlib
import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "tests"))

from conftest import T1_MAP  # noqa: E402

from qsmodels.events import EventLog  # noqa: E402
from qsmodels.match import MatchConfig, run_match  # noqa: E402


def main() -> None:
    log = EventLog()
    report = run_match(
        MatchConfig(map_text=T1_MAP, seed=42, enemy="patrol", duration_ticks=200),
        event_log=log,
    )
    jsonl = log.to_jsonl()
    golden = {
        "_comment": (
            "frozen 200-tick duel trace: T1 map, seed 42, patrol enemy, oracle "
            "backend, fast mode; regenerate deliberately with "
            "scripts/regen_golden.py when behavior changes on purpose"
        ),
        "log_sha256": hashlib.sha256(jsonl.encode()).hexdigest(),
        "report": report.as_dict(),
        "attack_execution_reached": any(
            r["event"] == "action_started" and r["action"] == "attack"
            for r in log.records
        ),
        "n_events": len(log.records),
    }
    out = pathlib.Path(__file__).resolve().parents[1] / "tests" / "data" / "golden_t1.json"
    out.write_text(json.dumps(golden, indent=2, sort_keys=True) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
