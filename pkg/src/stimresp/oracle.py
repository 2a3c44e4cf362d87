"""Naive reference checker used to cross-validate the bounded search.

Where the pattern checks prune with memoization and reconstruct shortest
counterexamples, this module enumerates every environment-input sequence of
length k outright and runs the driver-loop routine on each, one sequence at
a time. It is deliberately brute force: at desk scale it is fast enough,
and its verdicts are an independent yardstick for the real checker.
"""
from __future__ import annotations

import itertools

from .ast import Model, ReqKind, Requirement, State
from .errors import CrashError
from .results import Status
from .semantics import all_env_inputs, eval_bool, state_key, step


def oracle_check_from(model: Model, req: Requirement, start: State,
                      envs: list | None = None) -> Status:
    """PASS/FAIL for one requirement from one start state, by running the
    loop routine on every input sequence."""
    envs = all_env_inputs(model) if envs is None else envs

    if req.kind is ReqKind.RESPONSE_STABILITY:
        if not (eval_bool(req.stimulus, start) and eval_bool(req.response, start)):
            return Status.PASS
        for env in envs:
            try:
                nxt = step(model, start, env)
            except CrashError:
                return Status.FAIL
            if not ((not eval_bool(req.stimulus, nxt)) or eval_bool(req.response, nxt)):
                return Status.FAIL
        return Status.PASS

    if not eval_bool(req.stimulus, start):
        return Status.PASS
    k = req.k
    assert k is not None
    for seq in itertools.product(envs, repeat=k):
        state = start
        steps = 0
        crashed = False
        while not (eval_bool(req.response, state) or steps == k):
            try:
                state = step(model, state, seq[steps])
            except CrashError:
                crashed = True
                break
            steps += 1
        if crashed:
            return Status.FAIL
        if req.kind is ReqKind.MAX_DISTANCE:
            if not eval_bool(req.response, state):
                return Status.FAIL
        else:
            if not (eval_bool(req.response, state) and steps == k):
                return Status.FAIL
    return Status.PASS


def oracle_reachable(model: Model) -> list[State]:
    """Reachable states by plain fixpoint iteration (no frontier tricks).

    Raises CrashError when any reachable state crashes under some input.
    """
    envs = all_env_inputs(model)
    seen: dict[tuple, State] = {}
    for init in model.init:
        seen.setdefault(state_key(model, init), dict(init))
    changed = True
    while changed:
        changed = False
        for state in list(seen.values()):
            for env in envs:
                nxt = step(model, state, env)
                key = state_key(model, nxt)
                if key not in seen:
                    seen[key] = nxt
                    changed = True
    return list(seen.values())


def oracle_check_all(model: Model, reqs: list[Requirement]) -> list[Status]:
    """Status per requirement, quantified over every reachable start."""
    try:
        starts = oracle_reachable(model)
    except CrashError:
        return [Status.CRASH for _ in reqs]
    statuses: list[Status] = []
    for req in reqs:
        status = Status.PASS
        for start in starts:
            if oracle_check_from(model, req, start) is Status.FAIL:
                status = Status.FAIL
                break
        statuses.append(status)
    return statuses
