"""Naive reference semantics for differential tests.

Runs a rule the way a sequential translation would: walk the tree, store
each fired assignment's value in a fresh temporary computed against the
untouched pre-state, then write all temporaries back. A variable assigned
twice has two temporaries for one location, which is a crash.
"""
from __future__ import annotations

from collections import Counter

from stimresp import Assign, Cond, Par, Rule, Skip, eval_bool, eval_expr
from stimresp.errors import CrashError


def run_two_phase(rule: Rule, state: dict[str, str]) -> dict[str, str]:
    """Full post-state of one rule execution; raises CrashError like the
    primary evaluator (smallest conflicted variable)."""
    temps: list[tuple[str, str]] = []

    def walk(r: Rule) -> None:
        if isinstance(r, Assign):
            temps.append((r.target, eval_expr(r.value, state)))
        elif isinstance(r, Cond):
            if eval_bool(r.guard, state):
                walk(r.then)
            elif r.orelse is not None:
                walk(r.orelse)
        elif isinstance(r, Par):
            for child in r.rules:
                walk(child)
        elif isinstance(r, Skip):
            pass
        else:
            raise AssertionError(f"unknown rule {r!r}")

    walk(rule)

    counts = Counter(name for name, _ in temps)
    duplicated = [name for name, n in counts.items() if n > 1]
    if duplicated:
        raise CrashError(min(duplicated))

    post = dict(state)
    for name, value in temps:
        post[name] = value
    return post
