"""Verdicts and counterexample traces."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .ast import EnvInput, ReqKind, State
from .errors import InternalError


class Status(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    CRASH = "CRASH"


@dataclass(frozen=True)
class TraceStep:
    """One executed step: the environment input chosen and the state after
    the step. For a crashing step, `state` is the pre-state with the input
    already applied (the state the machine saw when it crashed)."""
    env: EnvInput
    state: State


@dataclass(frozen=True)
class Trace:
    """A replayable counterexample: the state the check window started from,
    the steps taken, and the assertion that failed at the end."""
    start: State
    steps: tuple[TraceStep, ...]
    failed_assertion: str
    requirement: str | None = None
    crash: str | None = None  # conflict message when the final step crashed

    def __len__(self) -> int:
        return len(self.steps)

    def states(self) -> list[State]:
        return [self.start] + [s.state for s in self.steps]

    @property
    def final_state(self) -> State:
        return self.steps[-1].state if self.steps else self.start


@dataclass(frozen=True)
class Verdict:
    name: str
    kind: ReqKind
    status: Status
    states_checked: int
    trace: Trace | None = None
    elapsed: float = 0.0

    def __post_init__(self) -> None:
        if self.status is Status.PASS and self.trace is not None:
            raise InternalError("PASS verdicts carry no trace")
        if self.status is not Status.PASS and self.trace is None:
            raise InternalError(f"{self.status.value} verdicts need a trace")
