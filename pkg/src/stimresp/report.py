"""Check reports: a stable JSON projection and a human-readable rendering.

The JSON layout is
``{version, model_sha256, verdicts: [{name, kind, status, states_checked,
trace?: [{step, env, state}]}], elapsed}`` with all keys and map entries in
deterministic order, so identical inputs produce byte-identical output
except for the elapsed field.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .ast import Model
from .results import Status, Trace, Verdict

GREEN = "\x1b[32m"
RED = "\x1b[31m"
MAGENTA = "\x1b[35m"
RESET = "\x1b[0m"

_STATUS_COLOR = {Status.PASS: GREEN, Status.FAIL: RED, Status.CRASH: MAGENTA}


@dataclass(frozen=True)
class VerdictRecord:
    name: str
    kind: str
    status: str
    states_checked: int
    trace: tuple[dict, ...] | None = None


@dataclass(frozen=True)
class Report:
    version: str
    model_sha256: str
    verdicts: tuple[VerdictRecord, ...]
    elapsed: float = 0.0


def model_digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def trace_entries(trace: Trace, model: Model) -> tuple[dict, ...]:
    """Trace as JSON-ready entries; step 0 is the window's start state."""
    order = model.var_order
    env_order = [v.name for v in model.monitored]

    def state_map(state: dict) -> dict:
        return {name: state[name] for name in order}

    entries = [{"step": 0, "env": {}, "state": state_map(trace.start)}]
    for i, ts in enumerate(trace.steps, start=1):
        entries.append({
            "step": i,
            "env": {name: ts.env[name] for name in env_order},
            "state": state_map(ts.state),
        })
    return tuple(entries)


def build_report(version: str, model_bytes: bytes, verdicts: list[Verdict],
                 model: Model, elapsed: float) -> Report:
    records = []
    for v in verdicts:
        trace = trace_entries(v.trace, model) if v.trace is not None else None
        records.append(VerdictRecord(v.name, v.kind.value, v.status.value,
                                     v.states_checked, trace))
    return Report(version, model_digest(model_bytes), tuple(records), elapsed)


def to_json(report: Report) -> str:
    payload: dict = {
        "version": report.version,
        "model_sha256": report.model_sha256,
        "verdicts": [],
    }
    for rec in report.verdicts:
        entry: dict = {
            "name": rec.name,
            "kind": rec.kind,
            "status": rec.status,
            "states_checked": rec.states_checked,
        }
        if rec.trace is not None:
            entry["trace"] = list(rec.trace)
        payload["verdicts"].append(entry)
    payload["elapsed"] = report.elapsed
    return json.dumps(payload, indent=2) + "\n"


def from_json(text: str) -> Report:
    raw = json.loads(text)
    records = []
    for entry in raw["verdicts"]:
        trace = entry.get("trace")
        records.append(VerdictRecord(
            entry["name"], entry["kind"], entry["status"],
            entry["states_checked"],
            tuple(trace) if trace is not None else None))
    return Report(raw["version"], raw["model_sha256"], tuple(records),
                  raw["elapsed"])


# ---------------------------------------------------------------------------
# Text rendering

def format_state_inline(state: dict, order) -> str:
    return " ".join(f"{name}={state[name]}" for name in order)


def format_trace_lines(trace: Trace, model: Model, indent: str = "  ") -> list[str]:
    order = model.var_order
    env_order = [v.name for v in model.monitored]
    lines = [f"{indent}step 0 | env: | state: {format_state_inline(trace.start, order)}"]
    for i, ts in enumerate(trace.steps, start=1):
        env = format_state_inline(ts.env, env_order)
        lines.append(f"{indent}step {i} | env: {env} | "
                     f"state: {format_state_inline(ts.state, order)}")
    return lines


def format_verdicts_text(verdicts: list[Verdict], model: Model,
                         color: bool = False) -> str:
    lines: list[str] = []
    counts = {Status.PASS: 0, Status.FAIL: 0, Status.CRASH: 0}
    for v in verdicts:
        counts[v.status] += 1
        label = v.status.value
        if color:
            label = f"{_STATUS_COLOR[v.status]}{label}{RESET}"
        lines.append(f"{label} {v.name} ({v.kind.value}) states_checked={v.states_checked}")
        if v.trace is not None:
            if v.trace.crash is not None:
                lines.append(f"  crash: {v.trace.crash}")
            lines.append(f"  assertion violated: {v.trace.failed_assertion}")
            lines.extend(format_trace_lines(v.trace, model))
    summary = f"{len(verdicts)} requirements: {counts[Status.PASS]} passed"
    if counts[Status.FAIL]:
        summary += f", {counts[Status.FAIL]} failed"
    if counts[Status.CRASH]:
        summary += f", {counts[Status.CRASH]} crashed"
    lines.append(summary)
    return "\n".join(lines) + "\n"
