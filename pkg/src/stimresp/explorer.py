"""Reachable-state exploration and whole-model checking.

`reach` computes the breadth-first closure of the initial states under every
environment input, keeping predecessor links so any state (or crash) can be
explained by a trace from an initial state. `check_all` then runs each
requirement's pattern check from every reachable state and reports one
verdict per requirement, carrying the globally shortest counterexample.

Everything iterates in declaration order, so two runs over the same inputs
produce identical output.
"""
from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, replace

from .ast import EnvInput, Model, ReqKind, Requirement, State
from .errors import CrashError, InternalError
from .patterns import EnvProvider, PatternInstance, check_requirement
from .results import Status, Trace, TraceStep, Verdict
from .semantics import all_env_inputs, all_states, check_state, state_key, step

_Key = tuple[str, ...]


@dataclass
class ReachSet:
    """States reachable from the initial states, in BFS discovery order."""
    model: Model
    states: tuple[State, ...]
    _index: dict[_Key, int]
    _preds: dict[_Key, tuple[_Key, EnvInput] | None]

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __contains__(self, state: State) -> bool:
        return state_key(self.model, state) in self._index

    def path_to(self, state: State) -> tuple[State, list[TraceStep]]:
        """The BFS path from an initial state: (init state, steps taken)."""
        key = state_key(self.model, state)
        if key not in self._index:
            raise InternalError("state is not reachable")
        rev: list[TraceStep] = []
        while True:
            pred = self._preds[key]
            if pred is None:
                break
            parent_key, env = pred
            rev.append(TraceStep(env, self.states[self._index[key]]))
            key = parent_key
        rev.reverse()
        return self.states[self._index[key]], rev


def reach(model: Model, envs: EnvProvider | None = None) -> ReachSet:
    """BFS fixpoint over all environment inputs.

    Raises CrashError (with a reaching trace attached) if any reachable
    state crashes under some input.
    """
    envs = all_env_inputs(model) if envs is None else envs
    states: list[State] = []
    index: dict[_Key, int] = {}
    preds: dict[_Key, tuple[_Key, EnvInput] | None] = {}

    for init in model.init:
        key = state_key(model, init)
        if key not in index:
            index[key] = len(states)
            states.append(dict(init))
            preds[key] = None

    queue = deque(states)
    while queue:
        state = queue.popleft()
        key = state_key(model, state)
        for env in envs:
            try:
                nxt = step(model, state, env)
            except CrashError as e:
                partial = ReachSet(model, tuple(states), index, preds)
                init, steps = partial.path_to(state)
                crashed = dict(state)
                crashed.update(env)
                e.trace = Trace(init, tuple(steps) + (TraceStep(env, crashed),),
                                "no parallel update conflict", None, crash=str(e))
                raise
            nkey = state_key(model, nxt)
            if nkey not in index:
                index[nkey] = len(states)
                states.append(nxt)
                preds[nkey] = (key, env)
                queue.append(nxt)

    return ReachSet(model, tuple(states), index, preds)


def check_all(model: Model, reqs: list[Requirement], *,
              all_start_states: bool = False,
              envs: EnvProvider | None = None) -> list[Verdict]:
    """Check every requirement from every reachable state (or from every
    type-consistent state with `all_start_states`). One verdict per
    requirement, in input order; a FAIL carries the shortest counterexample,
    ties broken by start-state discovery order then input order."""
    envs = all_env_inputs(model) if envs is None else envs

    try:
        starts: list[State] = all_states(model) if all_start_states \
            else list(reach(model, envs))
        crash: CrashError | None = None
    except CrashError as e:
        crash = e

    verdicts: list[Verdict] = []
    for req in reqs:
        t0 = time.perf_counter()
        if crash is not None:
            trace = replace(crash.trace, requirement=req.name)
            verdicts.append(Verdict(req.name, req.kind, Status.CRASH, 0,
                                    trace, time.perf_counter() - t0))
            continue
        inst = PatternInstance(req, model)
        best: Trace | None = None
        for start in starts:
            verdict = check_requirement(inst, start, envs)
            if verdict.status is Status.FAIL:
                assert verdict.trace is not None
                if best is None or len(verdict.trace) < len(best):
                    best = verdict.trace
        elapsed = time.perf_counter() - t0
        if best is None:
            verdicts.append(Verdict(req.name, req.kind, Status.PASS,
                                    len(starts), None, elapsed))
        else:
            verdicts.append(Verdict(req.name, req.kind, Status.FAIL,
                                    len(starts), best, elapsed))
    return verdicts


def minimize(trace: Trace, model: Model, req: Requirement,
             envs: EnvProvider | None = None) -> Trace:
    """Re-verify a failing trace and shrink it to a shortest failing window
    from the same start state.

    Raises InternalError when the trace does not replay or the requirement
    does not actually fail from its start state.
    """
    envs = all_env_inputs(model) if envs is None else envs
    _replay(trace, model)

    verdict = check_requirement(PatternInstance(req, model), trace.start, envs)
    if verdict.status is not Status.FAIL:
        raise InternalError(
            f"re-verification disagrees: '{req.name}' passes from the trace's start state")
    assert verdict.trace is not None
    if len(verdict.trace) < len(trace):
        return verdict.trace
    return trace


def _replay(trace: Trace, model: Model) -> None:
    """Check that every recorded step follows from its predecessor."""
    check_state(model, trace.start)
    state = trace.start
    for i, ts in enumerate(trace.steps):
        last = i == len(trace.steps) - 1
        if last and trace.crash is not None:
            expected = dict(state)
            expected.update(ts.env)
            if ts.state != expected:
                raise InternalError(f"crash step {i + 1} records a wrong state")
            try:
                step(model, state, ts.env)
            except CrashError:
                return
            raise InternalError(f"step {i + 1} was recorded as a crash but does not crash")
        nxt = step(model, state, ts.env)
        if nxt != ts.state:
            raise InternalError(f"step {i + 1} does not replay to the recorded state")
        state = nxt
