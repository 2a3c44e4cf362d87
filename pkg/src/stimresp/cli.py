"""Command-line front end.

    stimresp check <model> <reqs> [--format text|json] [--all-states]
                                  [--max-steps N] [--req NAME]
    stimresp simulate <model> <script> [--start ASSIGNMENTS]
    stimresp reach <model>

Exit codes: 0 all checks passed (or simulation/listing completed), 1 a
requirement failed or the model crashed, 2 unreadable or invalid input.
Set STIMRESP_COLOR=auto|never|always to control colored verdicts.
"""
from __future__ import annotations

import argparse
import dataclasses
import os
import sys
import time

from . import __version__
from .ast import EnvInput, Model, ReqKind, Requirement, State
from .errors import CrashError, StimRespError
from .explorer import check_all, reach
from .parser import parse_model, parse_requirements
from .report import (
    build_report, format_state_inline, format_trace_lines,
    format_verdicts_text, to_json,
)
from .results import Status
from .semantics import step

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_BAD_INPUT = 2


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="stimresp",
        description="Check stimulus-response requirements against state machine models.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="verify requirements from every reachable state")
    p_check.add_argument("model", help="model file")
    p_check.add_argument("reqs", help="requirement file")
    p_check.add_argument("--format", choices=("text", "json"), default="text")
    p_check.add_argument("--all-states", action="store_true",
                         help="check from every type-consistent state, not just reachable ones")
    p_check.add_argument("--max-steps", type=int, metavar="N",
                         help="override the step bound of distance requirements")
    p_check.add_argument("--req", metavar="NAME", help="check only the named requirement")

    p_sim = sub.add_parser("simulate", help="replay a scripted environment sequence")
    p_sim.add_argument("model", help="model file")
    p_sim.add_argument("script", help="environment script, one step per line")
    p_sim.add_argument("--start", metavar="ASSIGNMENTS",
                       help="full start state, e.g. 'handle=down,door=closed,gear=extended' "
                            "(default: the model's first init state)")

    p_reach = sub.add_parser("reach", help="list all reachable states")
    p_reach.add_argument("model", help="model file")

    args = parser.parse_args(argv)
    try:
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "simulate":
            return _cmd_simulate(args)
        return _cmd_reach(args)
    except StimRespError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT


def _use_color() -> bool:
    mode = os.environ.get("STIMRESP_COLOR", "auto")
    if mode == "always":
        return True
    if mode == "never":
        return False
    return sys.stdout.isatty()


def _load_model(path: str) -> tuple[Model, bytes]:
    with open(path, "rb") as fh:
        data = fh.read()
    return parse_model(data.decode("utf-8")), data


def _cmd_check(args: argparse.Namespace) -> int:
    model, model_bytes = _load_model(args.model)
    with open(args.reqs, "r", encoding="utf-8") as fh:
        reqs = parse_requirements(fh.read(), model)

    if args.req is not None:
        reqs = [r for r in reqs if r.name == args.req]
        if not reqs:
            print(f"error: no requirement named '{args.req}'", file=sys.stderr)
            return EXIT_BAD_INPUT
    if args.max_steps is not None:
        if args.max_steps < 1:
            print("error: --max-steps must be >= 1", file=sys.stderr)
            return EXIT_BAD_INPUT
        reqs = [dataclasses.replace(r, k=args.max_steps)
                if r.kind is not ReqKind.RESPONSE_STABILITY else r
                for r in reqs]

    t0 = time.perf_counter()
    verdicts = check_all(model, reqs, all_start_states=args.all_states)
    elapsed = time.perf_counter() - t0

    if args.format == "json":
        report = build_report(__version__, model_bytes, verdicts, model, elapsed)
        sys.stdout.write(to_json(report))
    else:
        sys.stdout.write(format_verdicts_text(verdicts, model, color=_use_color()))
    ok = all(v.status is Status.PASS for v in verdicts)
    return EXIT_OK if ok else EXIT_VIOLATION


def _parse_assignments(text: str, model: Model, *, line: int | None = None) -> dict[str, str]:
    """Parse 'name=value' pairs separated by spaces or commas."""
    from .errors import SemanticError

    result: dict[str, str] = {}
    for chunk in text.replace(",", " ").split():
        name, sep, value = chunk.partition("=")
        if not sep or not name or not value:
            raise SemanticError(f"malformed assignment {chunk!r}", line, 1)
        if not model.has_var(name):
            raise SemanticError(f"unknown variable '{name}'", line, 1)
        if value not in model.var(name).domain:
            raise SemanticError(
                f"'{value}' is not a value of domain {model.var(name).domain.name}",
                line, 1)
        if name in result:
            raise SemanticError(f"variable '{name}' assigned twice", line, 1)
        result[name] = value
    return result


def _parse_env_script(text: str, model: Model) -> list[EnvInput]:
    """One environment input per non-empty line; monitored variables not
    mentioned on a line keep their previous value."""
    from .errors import SemanticError

    steps: list[dict[str, str]] = []
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("--", 1)[0].strip()
        if not line:
            continue
        assigns = _parse_assignments(line, model, line=lineno)
        for name in assigns:
            if not model.var(name).is_monitored:
                raise SemanticError(
                    f"script assigns controlled variable '{name}'", lineno, 1)
        steps.append(assigns)
    return steps


def _parse_start_state(text: str, model: Model) -> State:
    from .errors import SemanticError

    assigns = _parse_assignments(text, model)
    missing = [name for name in model.var_order if name not in assigns]
    if missing:
        raise SemanticError(f"--start leaves variables unbound: {', '.join(missing)}")
    return {name: assigns[name] for name in model.var_order}


def _cmd_simulate(args: argparse.Namespace) -> int:
    model, _ = _load_model(args.model)
    with open(args.script, "r", encoding="utf-8") as fh:
        script = _parse_env_script(fh.read(), model)

    state = dict(model.init[0]) if args.start is None \
        else _parse_start_state(args.start, model)

    order = model.var_order
    env_order = [v.name for v in model.monitored]
    print(f"step 0 | env: | state: {format_state_inline(state, order)}")
    env: EnvInput = {name: state[name] for name in env_order}
    for i, partial in enumerate(script, start=1):
        env = dict(env)
        env.update(partial)
        env_text = format_state_inline(env, env_order)
        try:
            state = step(model, state, env)
        except CrashError as e:
            print(f"step {i} | env: {env_text} | crash: {e}")
            return EXIT_VIOLATION
        print(f"step {i} | env: {env_text} | state: {format_state_inline(state, order)}")
    return EXIT_OK


def _cmd_reach(args: argparse.Namespace) -> int:
    model, _ = _load_model(args.model)
    order = model.var_order
    try:
        rs = reach(model)
    except CrashError as e:
        print(f"crash: {e}")
        if e.trace is not None:
            for line in format_trace_lines(e.trace, model, indent=""):
                print(line)
        return EXIT_VIOLATION
    print(f"{len(rs)} reachable states")
    for state in rs:
        print(format_state_inline(state, order))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
