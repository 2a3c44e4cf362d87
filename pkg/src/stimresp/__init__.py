"""Exhaustive bounded checking of stimulus-response requirements over
abstract state machine models of reactive controllers.

Parse a model and its requirements, then check each requirement from every
reachable state under all environment inputs:

    from stimresp import parse_model, parse_requirements, check_all

    model = parse_model(source)
    reqs = parse_requirements(req_source, model)
    verdicts = check_all(model, reqs)
"""
from __future__ import annotations

__version__ = "0.1.0"

from .ast import (
    And, Assign, Cond, Const, EnumDomain, EnvInput, Eq, Expr, Implies, Model,
    Neq, Not, Or, Par, ReqKind, Requirement, Rule, Skip, State, VarDecl,
    VarKind, VarRef,
)
from .errors import (
    CrashError, EvalError, InternalError, ParseError, SemanticError,
    StimRespError,
)
from .explorer import ReachSet, check_all, minimize, reach
from .lgs import corpus_path, corpus_text, lgs_fixed, lgs_original, lgs_requirements
from .oracle import oracle_check_all, oracle_check_from, oracle_reachable
from .parser import parse_model, parse_requirements
from .patterns import (
    PatternInstance, check_exact_distance, check_max_distance,
    check_requirement, check_stability,
)
from .pretty import format_expr, format_model, format_requirement, format_requirements
from .results import Status, Trace, TraceStep, Verdict
from .semantics import (
    all_env_inputs, all_states, apply_updates, eval_bool, eval_expr,
    eval_rule, state_key, step,
)

__all__ = [
    "__version__",
    # ast
    "And", "Assign", "Cond", "Const", "EnumDomain", "EnvInput", "Eq", "Expr",
    "Implies", "Model", "Neq", "Not", "Or", "Par", "ReqKind", "Requirement",
    "Rule", "Skip", "State", "VarDecl", "VarKind", "VarRef",
    # errors
    "CrashError", "EvalError", "InternalError", "ParseError", "SemanticError",
    "StimRespError",
    # parsing / printing
    "parse_model", "parse_requirements", "format_expr", "format_model",
    "format_requirement", "format_requirements",
    # semantics
    "all_env_inputs", "all_states", "apply_updates", "eval_bool", "eval_expr",
    "eval_rule", "state_key", "step",
    # patterns
    "PatternInstance", "check_exact_distance", "check_max_distance",
    "check_requirement", "check_stability",
    # explorer
    "ReachSet", "check_all", "minimize", "reach",
    # oracle
    "oracle_check_all", "oracle_check_from", "oracle_reachable",
    # results
    "Status", "Trace", "TraceStep", "Verdict",
    # corpus
    "corpus_path", "corpus_text", "lgs_fixed", "lgs_original", "lgs_requirements",
]
