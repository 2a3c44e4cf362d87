"""Parser and type checker for the model and requirement languages.

Model files::

    domain DoorStatus {closed opening open closing}
    var door: DoorStatus controlled
    init {door=closed} | {door=open}
    main { if door = closed then door := opening end }

Requirement files::

    req r1 max_distance k=10 stimulus (door = closed) response (door = open)

Comments run from ``--`` to end of line. ``and`` binds tighter than ``or``;
``implies`` is weakest and right-associative; ``not`` applies to a whole
comparison. Rejected input raises :class:`ParseError` or
:class:`SemanticError` and never yields a partial result.
"""
from __future__ import annotations

from dataclasses import dataclass

from .ast import (
    And, Assign, Cond, Const, EnumDomain, Eq, Expr, Implies, Model, Neq, Not,
    Or, Par, ReqKind, Requirement, Rule, Skip, State, VarDecl, VarKind, VarRef,
)
from .errors import ParseError, SemanticError

KEYWORDS = frozenset({
    "domain", "var", "init", "main", "par", "if", "then", "else", "end",
    "not", "and", "or", "implies", "controlled", "monitored",
    "req", "stimulus", "response", "max_distance", "exact_distance", "stability",
})

BOOL = "<bool>"  # pseudo-domain for boolean-typed expressions


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, SYM, EOF
    value: str
    line: int
    col: int


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if source.startswith("--", i):
            while i < n and source[i] != "\n":
                i += 1
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (source[i].isalnum() or source[i] == "_"):
                i += 1
            text = source[start:i]
            tokens.append(Token("NAME", text, line, col))
            col += i - start
            continue
        if ch.isdigit():
            start = i
            while i < n and source[i].isdigit():
                i += 1
            tokens.append(Token("INT", source[start:i], line, col))
            col += i - start
            continue
        if source.startswith(":=", i):
            tokens.append(Token("SYM", ":=", line, col))
            i += 2
            col += 2
            continue
        if source.startswith("/=", i):
            tokens.append(Token("SYM", "/=", line, col))
            i += 2
            col += 2
            continue
        if ch in "{}()=|:,":
            tokens.append(Token("SYM", ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Raw expression tree: names are left unresolved until the type checker
# can tell variables from domain values.

@dataclass(frozen=True)
class _RawName:
    name: str
    line: int
    col: int


class _Parser:
    def __init__(self, source: str) -> None:
        self.tokens = tokenize(source)
        self.pos = 0

    # -- token helpers ------------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at_name(self, value: str | None = None) -> bool:
        tok = self.peek()
        return tok.kind == "NAME" and (value is None or tok.value == value)

    def at_sym(self, value: str) -> bool:
        tok = self.peek()
        return tok.kind == "SYM" and tok.value == value

    def expect_sym(self, value: str) -> Token:
        tok = self.next()
        if tok.kind != "SYM" or tok.value != value:
            raise ParseError(f"expected '{value}', got {tok.value or 'end of input'!r}",
                             tok.line, tok.col)
        return tok

    def expect_keyword(self, value: str) -> Token:
        tok = self.next()
        if tok.kind != "NAME" or tok.value != value:
            raise ParseError(f"expected '{value}', got {tok.value or 'end of input'!r}",
                             tok.line, tok.col)
        return tok

    def expect_ident(self) -> Token:
        tok = self.next()
        if tok.kind != "NAME":
            raise ParseError(f"expected identifier, got {tok.value or 'end of input'!r}",
                             tok.line, tok.col)
        if tok.value in KEYWORDS:
            raise ParseError(f"keyword '{tok.value}' cannot be used as a name",
                             tok.line, tok.col)
        return tok

    def expect_int(self) -> Token:
        tok = self.next()
        if tok.kind != "INT":
            raise ParseError(f"expected integer, got {tok.value or 'end of input'!r}",
                             tok.line, tok.col)
        return tok

    # -- expressions --------------------------------------------------------
    # Precedence, weakest first: implies (right-assoc), or, and, not,
    # comparison. Comparison operands are plain names or parenthesized
    # expressions.

    def parse_expr(self):
        left = self.parse_or()
        if self.at_name("implies"):
            self.next()
            right = self.parse_expr()  # right-associative
            return ("implies", left, right)
        return left

    def parse_or(self):
        node = self.parse_and()
        while self.at_name("or"):
            self.next()
            node = ("or", node, self.parse_and())
        return node

    def parse_and(self):
        node = self.parse_unary()
        while self.at_name("and"):
            self.next()
            node = ("and", node, self.parse_unary())
        return node

    def parse_unary(self):
        if self.at_name("not"):
            self.next()
            return ("not", self.parse_unary())
        return self.parse_comparison()

    def parse_comparison(self):
        left = self.parse_primary()
        if self.at_sym("=") or self.at_sym("/="):
            op = self.next().value
            right = self.parse_primary()
            return ("=" if op == "=" else "/=", left, right)
        return left

    def parse_primary(self):
        if self.at_sym("("):
            self.next()
            node = self.parse_expr()
            self.expect_sym(")")
            return node
        tok = self.expect_ident()
        return _RawName(tok.value, tok.line, tok.col)

    # -- rules --------------------------------------------------------------

    def parse_rule(self):
        if self.at_name("par"):
            tok = self.next()
            self.expect_sym("{")
            rules = [self.parse_rule()]
            while not self.at_sym("}"):
                rules.append(self.parse_rule())
            self.expect_sym("}")
            if len(rules) < 2:
                raise ParseError("'par' needs at least two rules", tok.line, tok.col)
            return ("par", tuple(rules))
        if self.at_name("if"):
            self.next()
            guard = self.parse_expr()
            self.expect_keyword("then")
            then = self.parse_rule()
            orelse = None
            if self.at_name("else"):
                self.next()
                orelse = self.parse_rule()
            self.expect_keyword("end")
            return ("if", guard, then, orelse)
        tok = self.expect_ident()
        self.expect_sym(":=")
        value = self.parse_expr()
        return (":=", tok, value)


# ---------------------------------------------------------------------------
# Name resolution and type checking

class _Resolver:
    """Turns raw parse trees into typed ASTs against a model's declarations."""

    def __init__(self, model: Model) -> None:
        self.model = model

    def value_domain(self, name: str) -> EnumDomain | None:
        """The unique domain owning `name` as a value, if any."""
        found = None
        for d in self.model.domains:
            if name in d.values:
                if found is not None:
                    return None  # ambiguous across domains
                found = d
        return found

    def resolve_operand(self, raw, expected: EnumDomain | None) -> tuple[Expr, EnumDomain]:
        """Resolve a comparison operand or assignment right-hand side."""
        if isinstance(raw, _RawName):
            if self.model.has_var(raw.name):
                var = self.model.var(raw.name)
                if expected is not None and var.domain != expected:
                    raise SemanticError(
                        f"variable '{raw.name}' has domain {var.domain.name}, "
                        f"expected {expected.name}", raw.line, raw.col)
                return VarRef(raw.name), var.domain
            if expected is not None:
                if raw.name in expected.values:
                    return Const(raw.name, expected.name), expected
                raise SemanticError(
                    f"'{raw.name}' is not a value of domain {expected.name}",
                    raw.line, raw.col)
            dom = self.value_domain(raw.name)
            if dom is None:
                raise SemanticError(
                    f"cannot resolve '{raw.name}': not a variable or unambiguous domain value",
                    raw.line, raw.col)
            return Const(raw.name, dom.name), dom
        raise SemanticError("comparison operands must be variables or domain values")

    def resolve_bool(self, raw) -> Expr:
        if isinstance(raw, _RawName):
            raise SemanticError(
                f"'{raw.name}' is not a boolean expression (did you mean a comparison?)",
                raw.line, raw.col)
        op = raw[0]
        if op in ("=", "/="):
            _, l, r = raw
            # Resolve the side that names a variable first so it can fix
            # the domain for a bare value on the other side.
            if isinstance(l, _RawName) and self.model.has_var(l.name):
                left, dom = self.resolve_operand(l, None)
                right, _ = self.resolve_operand(r, dom)
            elif isinstance(r, _RawName) and self.model.has_var(r.name):
                right, dom = self.resolve_operand(r, None)
                left, _ = self.resolve_operand(l, dom)
            else:
                left, dom = self.resolve_operand(l, None)
                right, _ = self.resolve_operand(r, dom)
            return Eq(left, right) if op == "=" else Neq(left, right)
        if op == "not":
            return Not(self.resolve_bool(raw[1]))
        if op == "and":
            return And(self.resolve_bool(raw[1]), self.resolve_bool(raw[2]))
        if op == "or":
            return Or(self.resolve_bool(raw[1]), self.resolve_bool(raw[2]))
        if op == "implies":
            return Implies(self.resolve_bool(raw[1]), self.resolve_bool(raw[2]))
        raise SemanticError(f"unexpected expression node {op!r}")

    def resolve_rule(self, raw) -> Rule:
        op = raw[0]
        if op == ":=":
            _, tok, value = raw
            if not self.model.has_var(tok.value):
                raise SemanticError(f"unknown variable '{tok.value}'", tok.line, tok.col)
            var = self.model.var(tok.value)
            if var.is_monitored:
                raise SemanticError(
                    f"assignment to monitored variable '{tok.value}'", tok.line, tok.col)
            if not isinstance(value, _RawName):
                raise SemanticError(
                    f"right-hand side of '{tok.value} := ...' must be a variable or domain value",
                    tok.line, tok.col)
            value_expr, _ = self.resolve_operand(value, var.domain)
            return Assign(tok.value, value_expr)
        if op == "par":
            return Par(tuple(self.resolve_rule(r) for r in raw[1]))
        if op == "if":
            _, guard, then, orelse = raw
            return Cond(self.resolve_bool(guard),
                        self.resolve_rule(then),
                        self.resolve_rule(orelse) if orelse is not None else None)
        raise SemanticError(f"unexpected rule node {op!r}")


# ---------------------------------------------------------------------------
# Public entry points

def parse_model(source: str) -> Model:
    """Parse and validate a model file. Raises ParseError or SemanticError."""
    p = _Parser(source)

    domains: list[EnumDomain] = []
    domain_names: set[str] = set()
    while p.at_name("domain"):
        p.next()
        name_tok = p.expect_ident()
        if name_tok.value in domain_names:
            raise SemanticError(f"duplicate domain '{name_tok.value}'",
                                name_tok.line, name_tok.col)
        domain_names.add(name_tok.value)
        p.expect_sym("{")
        values: list[str] = []
        while not p.at_sym("}"):
            v = p.expect_ident()
            if v.value in values:
                raise SemanticError(
                    f"duplicate value '{v.value}' in domain '{name_tok.value}'",
                    v.line, v.col)
            values.append(v.value)
        p.expect_sym("}")
        if not values:
            raise SemanticError(f"domain '{name_tok.value}' has no values",
                                name_tok.line, name_tok.col)
        domains.append(EnumDomain(name_tok.value, tuple(values)))

    domain_map = {d.name: d for d in domains}
    all_values = {v for d in domains for v in d.values}

    vars_: list[VarDecl] = []
    var_names: set[str] = set()
    while p.at_name("var"):
        p.next()
        name_tok = p.expect_ident()
        if name_tok.value in var_names:
            raise SemanticError(f"duplicate variable '{name_tok.value}'",
                                name_tok.line, name_tok.col)
        if name_tok.value in all_values:
            raise SemanticError(
                f"variable '{name_tok.value}' collides with a domain value name",
                name_tok.line, name_tok.col)
        var_names.add(name_tok.value)
        p.expect_sym(":")
        dom_tok = p.expect_ident()
        if dom_tok.value not in domain_map:
            raise SemanticError(f"unknown domain '{dom_tok.value}'",
                                dom_tok.line, dom_tok.col)
        kind_tok = p.next()
        if kind_tok.kind != "NAME" or kind_tok.value not in ("controlled", "monitored"):
            raise ParseError("expected 'controlled' or 'monitored'",
                             kind_tok.line, kind_tok.col)
        kind = VarKind.CONTROLLED if kind_tok.value == "controlled" else VarKind.MONITORED
        vars_.append(VarDecl(name_tok.value, domain_map[dom_tok.value], kind))

    if not vars_:
        tok = p.peek()
        raise SemanticError("a model needs at least one variable", tok.line, tok.col)
    var_map = {v.name: v for v in vars_}

    init_tok = p.peek()
    if not p.at_name("init"):
        raise ParseError("expected 'init'", init_tok.line, init_tok.col)
    p.next()
    init_states: list[State] = []
    while True:
        p.expect_sym("{")
        state: State = {}
        while not p.at_sym("}"):
            n = p.expect_ident()
            p.expect_sym("=")
            v = p.expect_ident()
            if n.value not in var_map:
                raise SemanticError(f"unknown variable '{n.value}'", n.line, n.col)
            if n.value in state:
                raise SemanticError(f"variable '{n.value}' bound twice in init state",
                                    n.line, n.col)
            if v.value not in var_map[n.value].domain:
                raise SemanticError(
                    f"'{v.value}' is not a value of domain {var_map[n.value].domain.name}",
                    v.line, v.col)
            state[n.value] = v.value
        p.expect_sym("}")
        missing = [v.name for v in vars_ if v.name not in state]
        if missing:
            raise SemanticError(
                f"init state leaves variables unbound: {', '.join(missing)}",
                init_tok.line, init_tok.col)
        # Keep declaration order so serialization is deterministic.
        init_states.append({v.name: state[v.name] for v in vars_})
        if p.at_sym("|"):
            p.next()
            continue
        break

    p.expect_keyword("main")
    braced = p.at_sym("{")
    if braced:
        p.next()
    raw_rule = p.parse_rule()
    if braced:
        p.expect_sym("}")
    tail = p.peek()
    if tail.kind != "EOF":
        raise ParseError(f"unexpected trailing input {tail.value!r}", tail.line, tail.col)

    # Resolve main against a declarations-only model, then attach it.
    decls = Model(tuple(domains), tuple(vars_), tuple(init_states), Skip())
    main = _Resolver(decls).resolve_rule(raw_rule)
    return Model(tuple(domains), tuple(vars_), tuple(init_states), main)


def parse_requirements(source: str, model: Model) -> list[Requirement]:
    """Parse a requirement file and type-check it against `model`."""
    p = _Parser(source)
    resolver = _Resolver(model)
    reqs: list[Requirement] = []
    seen: set[str] = set()
    while not p.peek().kind == "EOF":
        p.expect_keyword("req")
        name_tok = p.expect_ident()
        if name_tok.value in seen:
            raise SemanticError(f"duplicate requirement '{name_tok.value}'",
                                name_tok.line, name_tok.col)
        seen.add(name_tok.value)
        kind_tok = p.next()
        kinds = {"max_distance": ReqKind.MAX_DISTANCE,
                 "exact_distance": ReqKind.EXACT_DISTANCE,
                 "stability": ReqKind.RESPONSE_STABILITY}
        if kind_tok.kind != "NAME" or kind_tok.value not in kinds:
            raise ParseError("expected 'max_distance', 'exact_distance' or 'stability'",
                             kind_tok.line, kind_tok.col)
        kind = kinds[kind_tok.value]
        k: int | None = None
        if p.at_name("k"):
            k_tok = p.next()
            p.expect_sym("=")
            k_val = p.expect_int()
            k = int(k_val.value)
            if kind is ReqKind.RESPONSE_STABILITY:
                raise SemanticError(
                    f"requirement '{name_tok.value}': stability requirements take no step bound",
                    k_tok.line, k_tok.col)
            if k < 1:
                raise SemanticError(
                    f"requirement '{name_tok.value}': step bound must be >= 1, got {k}",
                    k_val.line, k_val.col)
        elif kind is not ReqKind.RESPONSE_STABILITY:
            raise SemanticError(
                f"requirement '{name_tok.value}': {kind_tok.value} requires a step bound k",
                kind_tok.line, kind_tok.col)
        p.expect_keyword("stimulus")
        p.expect_sym("(")
        stimulus = resolver.resolve_bool(p.parse_expr())
        p.expect_sym(")")
        p.expect_keyword("response")
        p.expect_sym("(")
        response = resolver.resolve_bool(p.parse_expr())
        p.expect_sym(")")
        reqs.append(Requirement(name_tok.value, kind, stimulus, response, k))
    return reqs
