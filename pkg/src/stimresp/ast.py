"""AST types for models and requirements.

A model is a set of enum domains, variables over those domains, one or more
full initial states, and a single `main` rule built from assignments,
parallel blocks, and conditionals. Requirements pair a stimulus and a
response expression with one of three check disciplines.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import SemanticError

# A state binds every declared variable (controlled and monitored) to a
# value of its domain. Environment inputs bind exactly the monitored ones.
State = dict[str, str]
EnvInput = dict[str, str]


@dataclass(frozen=True)
class EnumDomain:
    name: str
    values: tuple[str, ...]

    def __contains__(self, value: str) -> bool:
        return value in self.values


class VarKind(enum.Enum):
    CONTROLLED = "controlled"
    MONITORED = "monitored"


@dataclass(frozen=True)
class VarDecl:
    name: str
    domain: EnumDomain
    kind: VarKind

    @property
    def is_monitored(self) -> bool:
        return self.kind is VarKind.MONITORED


# ---------------------------------------------------------------------------
# Expressions

class Expr:
    """Base class for expression nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class VarRef(Expr):
    name: str


@dataclass(frozen=True)
class Const(Expr):
    value: str
    domain: str  # name of the enum domain the value belongs to


@dataclass(frozen=True)
class Eq(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Neq(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Not(Expr):
    operand: Expr


@dataclass(frozen=True)
class And(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Or(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Implies(Expr):
    left: Expr
    right: Expr


# ---------------------------------------------------------------------------
# Rules

class Rule:
    """Base class for rule nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Assign(Rule):
    target: str  # controlled variable name
    value: Expr  # enum-typed, same domain as the target


@dataclass(frozen=True)
class Par(Rule):
    rules: tuple[Rule, ...]


@dataclass(frozen=True)
class Cond(Rule):
    guard: Expr
    then: Rule
    orelse: Rule | None = None


@dataclass(frozen=True)
class Skip(Rule):
    """Empty update set. Not expressible in source; the evaluator's unit."""


# ---------------------------------------------------------------------------
# Model and requirements

@dataclass(frozen=True)
class Model:
    domains: tuple[EnumDomain, ...]
    vars: tuple[VarDecl, ...]
    init: tuple[State, ...]
    main: Rule

    def __post_init__(self) -> None:
        object.__setattr__(self, "_var_map", {v.name: v for v in self.vars})

    def var(self, name: str) -> VarDecl:
        try:
            return self._var_map[name]  # type: ignore[attr-defined]
        except KeyError:
            raise SemanticError(f"unknown variable '{name}'") from None

    def has_var(self, name: str) -> bool:
        return name in self._var_map  # type: ignore[attr-defined]

    def domain_named(self, name: str) -> EnumDomain:
        for d in self.domains:
            if d.name == name:
                return d
        raise SemanticError(f"unknown domain '{name}'")

    @property
    def var_order(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.vars)

    @property
    def monitored(self) -> tuple[VarDecl, ...]:
        return tuple(v for v in self.vars if v.kind is VarKind.MONITORED)

    @property
    def controlled(self) -> tuple[VarDecl, ...]:
        return tuple(v for v in self.vars if v.kind is VarKind.CONTROLLED)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Model):
            return NotImplemented
        return (self.domains, self.vars, self.init, self.main) == (
            other.domains, other.vars, other.init, other.main)

    def __hash__(self) -> int:
        return hash((self.domains, self.vars, self.main))


class ReqKind(enum.Enum):
    MAX_DISTANCE = "max_distance"
    EXACT_DISTANCE = "exact_distance"
    RESPONSE_STABILITY = "stability"


@dataclass(frozen=True)
class Requirement:
    name: str
    kind: ReqKind
    stimulus: Expr
    response: Expr
    k: int | None = None  # step bound; None for stability requirements

    def __post_init__(self) -> None:
        if self.kind is ReqKind.RESPONSE_STABILITY:
            if self.k is not None:
                raise SemanticError(
                    f"requirement '{self.name}': stability requirements take no step bound")
        else:
            if self.k is None:
                raise SemanticError(
                    f"requirement '{self.name}': {self.kind.value} requires a step bound k")
            if self.k < 1:
                raise SemanticError(
                    f"requirement '{self.name}': step bound must be >= 1, got {self.k}")
