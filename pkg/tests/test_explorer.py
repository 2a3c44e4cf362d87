from __future__ import annotations

import random

import pytest

from modelgen import random_model, random_requirement
from stimresp import (
    Assign, Cond, Const, CrashError, EnumDomain, Eq, InternalError, Model,
    Par, PatternInstance, ReqKind, Requirement, Skip, Status, Trace,
    TraceStep, VarDecl, VarKind, VarRef, check_all, check_requirement,
    eval_bool, lgs_requirements, minimize, oracle_check_all, reach, step,
)

AB = EnumDomain("AB", ("a", "b"))
M = EnumDomain("M", ("m0", "m1"))


def skip_model() -> Model:
    return Model(
        (AB, M),
        (VarDecl("x", AB, VarKind.CONTROLLED), VarDecl("e", M, VarKind.MONITORED)),
        ({"x": "a", "e": "m0"},),
        Skip(),
    )


def test_reach_skip_model_crosses_monitored_values():
    rs = reach(skip_model())
    assert len(rs) == 2
    assert list(rs) == [{"x": "a", "e": "m0"}, {"x": "a", "e": "m1"}]


def test_reach_lgs_fixed_bounds(fixed_model):
    rs = reach(fixed_model)
    assert len(rs) <= 32
    assert {"handle": "down", "door": "closed", "gear": "extended"} in rs
    # BFS order starts from the init state.
    assert rs.states[0] == {"handle": "down", "door": "closed", "gear": "extended"}


def test_reach_lgs_original_contains_stall_state(original_model):
    rs = reach(original_model)
    stall = {"handle": "down", "door": "opening", "gear": "retracted"}
    assert stall in rs
    assert step(original_model, stall, {"handle": "down"}) == stall


def test_reach_is_monotone_in_init():
    rng = random.Random(31)
    import dataclasses
    for _ in range(100):
        model = random_model(rng)
        try:
            base = reach(model)
        except CrashError:
            continue
        extra = {v.name: rng.choice(v.domain.values) for v in model.vars}
        widened_model = dataclasses.replace(model, init=model.init + (extra,))
        try:
            widened = reach(widened_model)
        except CrashError:
            continue
        for state in base:
            assert state in widened


def test_reach_crash_carries_reaching_trace():
    crash_main = Cond(
        Eq(VarRef("x"), Const("b", "AB")),
        Par((Assign("x", Const("a", "AB")), Assign("x", Const("a", "AB")))),
        Assign("x", Const("b", "AB")),
    )
    model = Model((AB,), (VarDecl("x", AB, VarKind.CONTROLLED),),
                  ({"x": "a"},), crash_main)
    with pytest.raises(CrashError) as err:
        reach(model)
    trace = err.value.trace
    assert trace is not None
    assert trace.crash is not None
    assert trace.start == {"x": "a"}
    # The recorded steps replay up to the crash.
    assert step(model, trace.start, trace.steps[0].env) == trace.steps[0].state
    with pytest.raises(CrashError):
        step(model, trace.steps[0].state, trace.steps[1].env)


def test_check_all_empty_requirements(fixed_model):
    assert check_all(fixed_model, []) == []


def test_check_all_lgs_fixed_all_pass(fixed_model, lgs_reqs):
    verdicts = check_all(fixed_model, lgs_reqs)
    assert [v.status for v in verdicts] == [Status.PASS] * 6
    assert all(v.trace is None for v in verdicts)
    assert all(v.states_checked == len(reach(fixed_model)) for v in verdicts)


def test_check_all_lgs_original_fails_r11_bis(original_model):
    reqs = lgs_requirements(original_model)
    verdicts = {v.name: v for v in check_all(original_model, reqs)}
    assert verdicts["r11_bis"].status is Status.FAIL
    assert verdicts["r21"].status is Status.PASS
    assert verdicts["r22"].status is Status.PASS
    trace = verdicts["r11_bis"].trace
    assert len(trace) <= 10
    assert trace.final_state["door"] == "opening"
    assert trace.final_state["gear"] != "extended"


def test_check_all_propagates_crash_as_crash_verdicts():
    model = Model((AB,), (VarDecl("x", AB, VarKind.CONTROLLED),), ({"x": "a"},),
                  Par((Assign("x", Const("a", "AB")), Assign("x", Const("a", "AB")))))
    req = Requirement("r", ReqKind.MAX_DISTANCE,
                      Eq(VarRef("x"), Const("a", "AB")),
                      Eq(VarRef("x"), Const("b", "AB")), k=2)
    verdicts = check_all(model, [req])
    assert verdicts[0].status is Status.CRASH
    assert verdicts[0].trace is not None
    assert verdicts[0].trace.requirement == "r"


def test_counterexamples_replay_and_fail(original_model):
    """Soundness: every emitted trace replays under step and ends in a
    state violating the assertion."""
    reqs = lgs_requirements(original_model)
    for verdict in check_all(original_model, reqs):
        if verdict.trace is None:
            continue
        trace = verdict.trace
        req = next(r for r in reqs if r.name == verdict.name)
        state = trace.start
        for ts in trace.steps:
            state = step(original_model, state, ts.env)
            assert state == ts.state
        assert not eval_bool(req.response, state)


def test_all_start_states_widens(fixed_model, lgs_reqs):
    verdicts = {v.name: v for v in
                check_all(fixed_model, lgs_reqs, all_start_states=True)}
    assert all(v.states_checked == 32 for v in verdicts.values())
    # The generous budgets still pass from every type-consistent state...
    for name in ("r11_bis", "r12_bis", "r11_rs", "r12_rs"):
        assert verdicts[name].status is Status.PASS
    # ...but the one-step requirements fail spuriously from unreachable
    # mid-motion states (why checking is restricted to reachable ones).
    assert verdicts["r21"].status is Status.FAIL
    assert verdicts["r21"].trace.start == \
        {"handle": "down", "door": "closed", "gear": "retracting"}
    assert verdicts["r22"].status is Status.FAIL


def test_check_all_matches_oracle_at_desk_scale():
    rng = random.Random(37)
    for _ in range(40):
        model = random_model(rng)
        reqs = [random_requirement(rng, model, f"r{i}")
                for i in range(rng.randint(1, 2))]
        got = [v.status for v in check_all(model, reqs)]
        assert got == oracle_check_all(model, reqs)


def test_check_all_is_reproducible(original_model):
    reqs = lgs_requirements(original_model)
    first = check_all(original_model, reqs)
    second = check_all(original_model, reqs)
    for a, b in zip(first, second):
        assert (a.name, a.kind, a.status, a.states_checked) == \
            (b.name, b.kind, b.status, b.states_checked)
        assert a.trace == b.trace


# ---------------------------------------------------------------------------
# minimize

def flip_model() -> Model:
    # x alternates between a and b; from x=a with response x=b and k=1 the
    # requirement passes, but response (x=a) fails instantly.
    return Model((AB,), (VarDecl("x", AB, VarKind.CONTROLLED),), ({"x": "a"},),
                 Cond(Eq(VarRef("x"), Const("a", "AB")),
                      Assign("x", Const("b", "AB")),
                      Assign("x", Const("a", "AB"))))


def test_minimize_keeps_minimal_stability_trace(fixed_model):
    # An open door under an extended gear starts closing, so "door stays
    # open" is an unstable response: a genuine one-step counterexample.
    req = Requirement("decay", ReqKind.RESPONSE_STABILITY,
                      Eq(VarRef("handle"), Const("down", "HandlePosition")),
                      Eq(VarRef("door"), Const("open", "DoorStatus")))
    start = {"handle": "down", "door": "open", "gear": "extended"}
    verdict = check_requirement(PatternInstance(req, fixed_model), start)
    assert verdict.status is Status.FAIL
    assert len(verdict.trace) == 1
    assert minimize(verdict.trace, fixed_model, req) == verdict.trace


def test_minimize_shrinks_padded_trace():
    model = skip_model()  # stuttering controlled state
    req = Requirement("r", ReqKind.MAX_DISTANCE,
                      Eq(VarRef("x"), Const("a", "AB")),
                      Eq(VarRef("x"), Const("b", "AB")), k=1)
    start = {"x": "a", "e": "m0"}
    # A self-loop prefix padding a failing one-step window.
    padded = Trace(
        start=start,
        steps=(TraceStep({"e": "m0"}, {"x": "a", "e": "m0"}),
               TraceStep({"e": "m0"}, {"x": "a", "e": "m0"})),
        failed_assertion="x = b",
        requirement="r",
    )
    shrunk = minimize(padded, model, req)
    assert len(shrunk) == 1
    assert shrunk.start == start


def test_minimize_rejects_passing_requirement():
    model = flip_model()
    req = Requirement("r", ReqKind.MAX_DISTANCE,
                      Eq(VarRef("x"), Const("a", "AB")),
                      Eq(VarRef("x"), Const("b", "AB")), k=1)
    bogus = Trace(
        start={"x": "a"},
        steps=(TraceStep({}, {"x": "b"}),),
        failed_assertion="x = b",
        requirement="r",
    )
    with pytest.raises(InternalError, match="re-verification disagrees"):
        minimize(bogus, model, req)


def test_minimize_rejects_non_replaying_trace():
    model = flip_model()
    req = Requirement("r", ReqKind.MAX_DISTANCE,
                      Eq(VarRef("x"), Const("a", "AB")),
                      Eq(VarRef("x"), Const("a", "AB")), k=1)
    broken = Trace(
        start={"x": "a"},
        steps=(TraceStep({}, {"x": "a"}),),  # actual step flips x to b
        failed_assertion="x = a",
        requirement="r",
    )
    with pytest.raises(InternalError, match="replay"):
        minimize(broken, model, req)


def test_minimize_self_consistent_on_check_all_traces(original_model):
    reqs = lgs_requirements(original_model)
    for verdict in check_all(original_model, reqs):
        if verdict.trace is None:
            continue
        req = next(r for r in reqs if r.name == verdict.name)
        assert minimize(verdict.trace, original_model, req) == verdict.trace
