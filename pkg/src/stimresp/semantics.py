"""Single-step execution semantics.

A step takes the current state, overwrites the monitored variables from an
environment input, evaluates `main` to an update set against that pre-state,
and applies the set atomically. All right-hand sides and guards read the
pre-state only; a parallel block whose children update the same variable
crashes, even when the written values agree.
"""
from __future__ import annotations

import itertools

from .ast import (
    And, Assign, Cond, Const, EnvInput, Eq, Expr, Implies, Model, Neq, Not,
    Or, Par, Rule, Skip, State, VarRef,
)
from .errors import CrashError, EvalError

# An update set maps variable names to their new values. Conflicts are
# detected while merging parallel branches, so a produced dict is
# conflict-free by construction.
UpdateSet = dict[str, str]


def eval_expr(expr: Expr, state: State):
    """Evaluate an expression: enum-typed nodes yield a value name,
    boolean nodes yield a bool."""
    if isinstance(expr, VarRef):
        try:
            return state[expr.name]
        except KeyError:
            raise EvalError(f"variable '{expr.name}' unbound in state") from None
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Eq):
        return eval_expr(expr.left, state) == eval_expr(expr.right, state)
    if isinstance(expr, Neq):
        return eval_expr(expr.left, state) != eval_expr(expr.right, state)
    if isinstance(expr, Not):
        return not eval_expr(expr.operand, state)
    if isinstance(expr, And):
        return eval_expr(expr.left, state) and eval_expr(expr.right, state)
    if isinstance(expr, Or):
        return eval_expr(expr.left, state) or eval_expr(expr.right, state)
    if isinstance(expr, Implies):
        return (not eval_expr(expr.left, state)) or eval_expr(expr.right, state)
    raise EvalError(f"cannot evaluate expression node {expr!r}")


def eval_bool(expr: Expr, state: State) -> bool:
    value = eval_expr(expr, state)
    if not isinstance(value, bool):
        raise EvalError("expected a boolean expression")
    return value


def eval_rule(rule: Rule, state: State) -> UpdateSet:
    """Evaluate a rule against `state` and return its update set.

    Raises CrashError when parallel branches update the same variable.
    All conflicts are collected before raising and the alphabetically
    smallest conflicted variable is reported, so the error does not depend
    on the order of parallel children.
    """
    updates, conflicts = _collect_updates(rule, state)
    if conflicts:
        raise CrashError(min(conflicts))
    return updates


def _collect_updates(rule: Rule, state: State) -> tuple[UpdateSet, set[str]]:
    if isinstance(rule, Assign):
        return {rule.target: eval_expr(rule.value, state)}, set()
    if isinstance(rule, Cond):
        if eval_bool(rule.guard, state):
            return _collect_updates(rule.then, state)
        if rule.orelse is not None:
            return _collect_updates(rule.orelse, state)
        return {}, set()
    if isinstance(rule, Par):
        merged: UpdateSet = {}
        conflicts: set[str] = set()
        for child in rule.rules:
            child_updates, child_conflicts = _collect_updates(child, state)
            conflicts |= child_conflicts
            for name, value in child_updates.items():
                if name in merged:
                    conflicts.add(name)
                else:
                    merged[name] = value
        return merged, conflicts
    if isinstance(rule, Skip):
        return {}, set()
    raise EvalError(f"cannot evaluate rule node {rule!r}")


def apply_updates(state: State, updates: UpdateSet) -> State:
    """Apply a conflict-free update set, leaving `state` unmodified."""
    new_state = dict(state)
    new_state.update(updates)
    return new_state


def step(model: Model, state: State, env: EnvInput) -> State:
    """One machine step: set monitored variables from `env`, then run main.

    `state` must be total and type-correct, `env` must cover exactly the
    monitored variables; neither input is modified.
    """
    pre = dict(state)
    pre.update(env)
    return apply_updates(pre, eval_rule(model.main, pre))


def all_env_inputs(model: Model) -> list[EnvInput]:
    """Every environment input, ordered by variable declaration order and
    domain value declaration order. A model with no monitored variables has
    exactly one (empty) input."""
    monitored = model.monitored
    names = [v.name for v in monitored]
    combos = itertools.product(*(v.domain.values for v in monitored))
    return [dict(zip(names, combo)) for combo in combos]


def all_states(model: Model) -> list[State]:
    """Every type-consistent state, in declaration order."""
    names = list(model.var_order)
    combos = itertools.product(*(v.domain.values for v in model.vars))
    return [dict(zip(names, combo)) for combo in combos]


def state_key(model: Model, state: State) -> tuple[str, ...]:
    """Hashable identity of a state; deterministic across runs."""
    return tuple(state[name] for name in model.var_order)


def check_state(model: Model, state: State) -> None:
    """Validate totality and domain membership; raises EvalError."""
    for v in model.vars:
        if v.name not in state:
            raise EvalError(f"state leaves variable '{v.name}' unbound")
        if state[v.name] not in v.domain:
            raise EvalError(
                f"'{state[v.name]}' is not a value of domain {v.domain.name}")
    extra = set(state) - set(model.var_order)
    if extra:
        raise EvalError(f"state binds undeclared variables: {sorted(extra)}")
