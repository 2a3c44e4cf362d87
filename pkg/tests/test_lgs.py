from __future__ import annotations

import json
from pathlib import Path

from stimresp import (
    Cond, Par, ReqKind, Status, check_all, corpus_path, corpus_text,
    lgs_requirements, parse_model, parse_requirements, reach, step,
)

GOLDEN = Path(__file__).parent / "golden" / "lgs_verdicts.json"


def hold_handle(model, state, position, n):
    states = [state]
    for _ in range(n):
        states.append(step(model, states[-1], {"handle": position}))
    return states


def test_corpus_files_exist_and_parse(fixed_model, original_model):
    for name in ("lgs_fixed.asm", "lgs_original.asm", "lgs.reqs"):
        assert corpus_path(name).is_file()
    assert parse_model(corpus_text("lgs_fixed.asm")) == fixed_model
    assert parse_model(corpus_text("lgs_original.asm")) == original_model
    assert parse_requirements(corpus_text("lgs.reqs"), fixed_model) == lgs_requirements()


def test_variants_share_layout(fixed_model, original_model):
    assert fixed_model.domains == original_model.domains
    assert fixed_model.vars == original_model.vars
    assert fixed_model.init == original_model.init


def test_variants_differ_in_exactly_one_branch(fixed_model, original_model):
    # main = if handle=down then (if gear /= extended then par{...} else close)
    #        else <retraction>; only the extension par differs.
    fixed_main, orig_main = fixed_model.main, original_model.main
    assert isinstance(fixed_main, Cond) and isinstance(orig_main, Cond)
    assert fixed_main.guard == orig_main.guard
    assert fixed_main.orelse == orig_main.orelse  # retraction identical

    fixed_ext, orig_ext = fixed_main.then, orig_main.then
    assert isinstance(fixed_ext, Cond) and isinstance(orig_ext, Cond)
    assert fixed_ext.guard == orig_ext.guard
    assert fixed_ext.orelse == orig_ext.orelse  # door-closing identical

    fixed_par, orig_par = fixed_ext.then, orig_ext.then
    assert isinstance(fixed_par, Par) and isinstance(orig_par, Par)
    assert len(fixed_par.rules) == len(orig_par.rules) + 1
    missing = [r for r in fixed_par.rules if r not in orig_par.rules]
    assert len(missing) == 1
    # The absent branch is the one advancing an opening door.
    branch = missing[0]
    assert isinstance(branch, Cond)
    assert "opening" in repr(branch.guard)
    assert [r for r in fixed_par.rules if r != branch] == list(orig_par.rules)


def test_requirement_set_shape(lgs_reqs):
    kinds = {r.name: (r.kind, r.k) for r in lgs_reqs}
    assert kinds == {
        "r11_bis": (ReqKind.MAX_DISTANCE, 10),
        "r12_bis": (ReqKind.MAX_DISTANCE, 10),
        "r21": (ReqKind.MAX_DISTANCE, 1),
        "r22": (ReqKind.MAX_DISTANCE, 1),
        "r11_rs": (ReqKind.RESPONSE_STABILITY, None),
        "r12_rs": (ReqKind.RESPONSE_STABILITY, None),
    }


def test_requirements_typecheck_against_both_variants(original_model):
    assert len(lgs_requirements(original_model)) == 6


def test_golden_verdict_table(fixed_model, original_model):
    golden = json.loads(GOLDEN.read_text())
    for label, model in (("lgs_fixed", fixed_model), ("lgs_original", original_model)):
        expected = golden[label]
        assert len(reach(model)) == expected["reachable_states"]
        verdicts = check_all(model, lgs_requirements(model))
        assert len(verdicts) == len(expected["verdicts"])
        for v in verdicts:
            want = expected["verdicts"][v.name]
            assert v.status.value == want["status"]
            if want["trace_length"] is None:
                assert v.trace is None
            else:
                assert len(v.trace) == want["trace_length"]
                assert v.trace.start == want["trace_start"]
                assert v.trace.final_state == want["trace_final"]


def test_extension_sequence_completes_in_six_steps(fixed_model):
    start = {"handle": "down", "door": "closed", "gear": "retracted"}
    states = hold_handle(fixed_model, start, "down", 6)
    doors = [s["door"] for s in states]
    gears = [s["gear"] for s in states]
    assert doors == ["closed", "opening", "open", "open", "open", "closing", "closed"]
    assert gears == ["retracted", "retracted", "retracted", "extending",
                     "extended", "extended", "extended"]


def test_handle_flip_during_closing_reopens_door(fixed_model):
    # Retraction is closing the door; pushing the handle down reopens it.
    state = {"handle": "up", "door": "closing", "gear": "retracted"}
    nxt = step(fixed_model, state, {"handle": "down"})
    assert nxt["door"] == "opening"


def test_original_stalls_on_opening_door(original_model):
    stall = {"handle": "down", "door": "opening", "gear": "retracted"}
    assert step(original_model, stall, {"handle": "down"}) == stall


def test_fixed_converges_to_extended_closed_within_ten_steps(fixed_model):
    target = {"door": "closed", "gear": "extended"}
    for start in reach(fixed_model):
        state = start
        for _ in range(10):
            if state["door"] == target["door"] and state["gear"] == target["gear"]:
                break
            state = step(fixed_model, state, {"handle": "down"})
        else:
            raise AssertionError(f"no convergence from {start}")


def test_fixed_passes_under_constant_handle(fixed_model, lgs_reqs):
    # Sanity companion to the verdict table: all six PASS.
    assert all(v.status is Status.PASS for v in check_all(fixed_model, lgs_reqs))
