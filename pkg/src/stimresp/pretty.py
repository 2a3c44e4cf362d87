"""Pretty-printers whose output reparses to a structurally identical AST."""
from __future__ import annotations

from .ast import (
    And, Assign, Cond, Const, Eq, Expr, Implies, Model, Neq, Not, Or, Par,
    ReqKind, Requirement, Rule, Skip, VarRef,
)
from .errors import InternalError

# Precedence levels, weakest first. A child is parenthesized when its level
# drops below what its position requires.
_LEVEL_IMPLIES = 0
_LEVEL_OR = 1
_LEVEL_AND = 2
_LEVEL_NOT = 3
_LEVEL_CMP = 4
_LEVEL_ATOM = 5


def _expr_level(e: Expr) -> int:
    if isinstance(e, Implies):
        return _LEVEL_IMPLIES
    if isinstance(e, Or):
        return _LEVEL_OR
    if isinstance(e, And):
        return _LEVEL_AND
    if isinstance(e, Not):
        return _LEVEL_NOT
    if isinstance(e, (Eq, Neq)):
        return _LEVEL_CMP
    return _LEVEL_ATOM


def format_expr(e: Expr, min_level: int = _LEVEL_IMPLIES) -> str:
    if isinstance(e, VarRef):
        text = e.name
    elif isinstance(e, Const):
        text = e.value
    elif isinstance(e, (Eq, Neq)):
        op = "=" if isinstance(e, Eq) else "/="
        text = f"{format_expr(e.left, _LEVEL_ATOM)} {op} {format_expr(e.right, _LEVEL_ATOM)}"
    elif isinstance(e, Not):
        text = f"not {format_expr(e.operand, _LEVEL_NOT)}"
    elif isinstance(e, And):
        text = f"{format_expr(e.left, _LEVEL_AND)} and {format_expr(e.right, _LEVEL_NOT)}"
    elif isinstance(e, Or):
        text = f"{format_expr(e.left, _LEVEL_OR)} or {format_expr(e.right, _LEVEL_AND)}"
    elif isinstance(e, Implies):
        # Right-associative: the left side needs strictly higher precedence.
        text = f"{format_expr(e.left, _LEVEL_OR)} implies {format_expr(e.right, _LEVEL_IMPLIES)}"
    else:
        raise InternalError(f"cannot print expression node {e!r}")
    if _expr_level(e) < min_level:
        return f"({text})"
    return text


def format_rule(rule: Rule, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(rule, Assign):
        return f"{pad}{rule.target} := {format_expr(rule.value)}"
    if isinstance(rule, Par):
        body = "\n".join(format_rule(r, indent + 1) for r in rule.rules)
        return f"{pad}par {{\n{body}\n{pad}}}"
    if isinstance(rule, Cond):
        lines = [f"{pad}if {format_expr(rule.guard)} then",
                 format_rule(rule.then, indent + 1)]
        if rule.orelse is not None:
            lines.append(f"{pad}else")
            lines.append(format_rule(rule.orelse, indent + 1))
        lines.append(f"{pad}end")
        return "\n".join(lines)
    if isinstance(rule, Skip):
        raise InternalError("skip rules have no source form")
    raise InternalError(f"cannot print rule node {rule!r}")


def format_model(model: Model) -> str:
    lines: list[str] = []
    for d in model.domains:
        lines.append(f"domain {d.name} {{{' '.join(d.values)}}}")
    lines.append("")
    for v in model.vars:
        lines.append(f"var {v.name}: {v.domain.name} {v.kind.value}")
    lines.append("")
    inits = " | ".join(
        "{" + " ".join(f"{name}={state[name]}" for name in model.var_order) + "}"
        for state in model.init)
    lines.append(f"init {inits}")
    lines.append("")
    lines.append("main {")
    lines.append(format_rule(model.main, 1))
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_requirement(req: Requirement) -> str:
    parts = [f"req {req.name} {req.kind.value}"]
    if req.kind is not ReqKind.RESPONSE_STABILITY:
        parts.append(f"k={req.k}")
    parts.append(f"stimulus ({format_expr(req.stimulus)})")
    parts.append(f"response ({format_expr(req.response)})")
    return " ".join(parts)


def format_requirements(reqs: list[Requirement]) -> str:
    return "\n".join(format_requirement(r) for r in reqs) + "\n"
