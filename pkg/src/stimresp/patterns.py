"""Executable semantics of the three requirement patterns.

Each check simulates the bounded driver loop

    if stimulus then
        from steps := 0 until <exit> loop main; steps := steps + 1 end
        check <assertion> end
    end

from one start state, quantifying over every environment-input sequence:

- max distance:   exit on `response or steps = k`, assert `response`;
- exact distance: same exit, assert `response and steps = k`;
- stability:      guard `stimulus and response`, one step, assert
                  `stimulus implies response`.

A crash inside the window counts as a failure of the requirement. FAIL
verdicts carry a shortest failing window; among equally short ones, the
first in environment-input enumeration order.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

from .ast import EnvInput, Model, ReqKind, Requirement, State
from .errors import CrashError, InternalError
from .pretty import format_expr
from .results import Status, Trace, TraceStep, Verdict
from .semantics import all_env_inputs, eval_bool, state_key, step

# The environment universe a check quantifies over: every input a step may
# receive. Defaults to all combinations of monitored values.
EnvProvider = list[EnvInput]


@dataclass(frozen=True)
class PatternInstance:
    requirement: Requirement
    model: Model


def check_requirement(inst: PatternInstance, start: State,
                      envs: EnvProvider | None = None) -> Verdict:
    """Dispatch to the matching pattern check."""
    kind = inst.requirement.kind
    if kind is ReqKind.MAX_DISTANCE:
        return check_max_distance(inst, start, envs)
    if kind is ReqKind.EXACT_DISTANCE:
        return check_exact_distance(inst, start, envs)
    return check_stability(inst, start, envs)


def check_max_distance(inst: PatternInstance, start: State,
                       envs: EnvProvider | None = None) -> Verdict:
    """PASS iff on every input sequence the response holds when the loop
    exits; vacuous PASS when the stimulus fails at the start state."""
    req = inst.requirement
    if req.kind is not ReqKind.MAX_DISTANCE:
        raise InternalError(f"'{req.name}' is not a max-distance requirement")
    t0 = time.perf_counter()
    envs = all_env_inputs(inst.model) if envs is None else envs
    assertion = format_expr(req.response)

    def exit_fail(state: State, taken: int) -> bool | None:
        # None: loop keeps running; True: loop exits failing; False: passes.
        if eval_bool(req.response, state):
            return False
        if taken == req.k:
            return True
        return None

    trace = _bounded_search(inst.model, req, start, envs, exit_fail, assertion)
    return _verdict(req, trace, t0)


def check_exact_distance(inst: PatternInstance, start: State,
                         envs: EnvProvider | None = None) -> Verdict:
    """PASS iff on every input sequence the loop exits with the response
    first holding exactly at step k."""
    req = inst.requirement
    if req.kind is not ReqKind.EXACT_DISTANCE:
        raise InternalError(f"'{req.name}' is not an exact-distance requirement")
    t0 = time.perf_counter()
    envs = all_env_inputs(inst.model) if envs is None else envs
    assertion = f"({format_expr(req.response)}) and (steps = {req.k})"

    def exit_fail(state: State, taken: int) -> bool | None:
        if eval_bool(req.response, state):
            return taken != req.k
        if taken == req.k:
            return True
        return None

    trace = _bounded_search(inst.model, req, start, envs, exit_fail, assertion)
    return _verdict(req, trace, t0)


def check_stability(inst: PatternInstance, start: State,
                    envs: EnvProvider | None = None) -> Verdict:
    """PASS iff whenever stimulus and response hold, one step under any
    input preserves `stimulus implies response`."""
    req = inst.requirement
    if req.kind is not ReqKind.RESPONSE_STABILITY:
        raise InternalError(f"'{req.name}' is not a stability requirement")
    t0 = time.perf_counter()
    envs = all_env_inputs(inst.model) if envs is None else envs
    assertion = (f"({format_expr(req.stimulus)}) implies "
                 f"({format_expr(req.response)})")

    trace: Trace | None = None
    if eval_bool(req.stimulus, start) and eval_bool(req.response, start):
        for env in envs:
            try:
                nxt = step(inst.model, start, env)
            except CrashError as e:
                crashed = dict(start)
                crashed.update(env)
                trace = Trace(start, (TraceStep(env, crashed),), assertion,
                              req.name, crash=str(e))
                break
            if eval_bool(req.stimulus, nxt) and not eval_bool(req.response, nxt):
                trace = Trace(start, (TraceStep(env, nxt),), assertion, req.name)
                break
    return _verdict(req, trace, t0)


def _verdict(req: Requirement, trace: Trace | None, t0: float) -> Verdict:
    elapsed = time.perf_counter() - t0
    if trace is None:
        return Verdict(req.name, req.kind, Status.PASS, 1, None, elapsed)
    return Verdict(req.name, req.kind, Status.FAIL, 1, trace, elapsed)


# ---------------------------------------------------------------------------
# Bounded search over input sequences

def _bounded_search(model: Model, req: Requirement, start: State,
                    envs: EnvProvider, exit_fail, assertion: str) -> Trace | None:
    """Find the shortest failing window of the driver loop from `start`,
    first in input enumeration order among equals, or None when every
    sequence passes.

    `exit_fail(state, taken)` encodes the loop-exit/assertion discipline:
    None to keep looping, else whether exiting now violates the assertion.
    """
    if not eval_bool(req.stimulus, start):
        return None

    memo: dict[tuple, int | None] = {}

    def min_fail(state: State, taken: int) -> int | None:
        """Fewest further steps needed to exhibit a failure, or None."""
        verdict = exit_fail(state, taken)
        if verdict is not None:
            return 0 if verdict else None
        key = (state_key(model, state), taken)
        if key in memo:
            return memo[key]
        best: int | None = None
        for env in envs:
            try:
                nxt = step(model, state, env)
            except CrashError:
                best = 1  # a crash ends the run immediately; nothing shorter
                break
            sub = min_fail(nxt, taken + 1)
            if sub is not None and (best is None or sub + 1 < best):
                best = sub + 1
                if best == 1:
                    break
        memo[key] = best
        return best

    total = min_fail(start, 0)
    if total is None:
        return None

    # Greedy reconstruction: at each level take the first input that still
    # allows finishing in exactly the remaining number of steps.
    steps: list[TraceStep] = []
    state, taken, remaining = start, 0, total
    while remaining > 0:
        for env in envs:
            try:
                nxt = step(model, state, env)
            except CrashError as e:
                if remaining == 1:
                    crashed = dict(state)
                    crashed.update(env)
                    steps.append(TraceStep(env, crashed))
                    return Trace(start, tuple(steps), assertion, req.name,
                                 crash=str(e))
                continue
            sub = min_fail(nxt, taken + 1)
            if sub is not None and sub + 1 == remaining:
                steps.append(TraceStep(env, nxt))
                state, taken, remaining = nxt, taken + 1, remaining - 1
                break
        else:
            raise InternalError("failing trace reconstruction diverged from search")
    return Trace(start, tuple(steps), assertion, req.name)
