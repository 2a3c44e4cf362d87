"""Exception types shared across the package."""
from __future__ import annotations


class StimRespError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(StimRespError):
    """Syntax error in a model, requirement, or script source."""

    def __init__(self, message: str, line: int, col: int) -> None:
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class SemanticError(StimRespError):
    """Well-formed syntax with an invalid meaning (unknown variable,
    domain mismatch, assignment to a monitored variable, ...)."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None) -> None:
        if line is not None:
            super().__init__(f"{line}:{col}: {message}")
        else:
            super().__init__(message)
        self.message = message
        self.line = line
        self.col = col


class CrashError(StimRespError):
    """A parallel block produced two updates for the same variable.

    Conflict detection is strict: two updates to one variable crash even
    when the written values agree.
    """

    def __init__(self, variable: str, trace: object | None = None) -> None:
        super().__init__(f"parallel update conflict on variable '{variable}'")
        self.variable = variable
        # Filled in by callers that know how the crashing state was reached.
        self.trace = trace


class EvalError(StimRespError):
    """Evaluation over a state that violates the evaluator's preconditions.

    Unreachable for type-checked input; kept as a defensive signal.
    """


class InternalError(StimRespError):
    """Self-check failure inside the checker (signals a bug, not bad input)."""
