"""Built-in landing gear corpus.

The DSL files under ``stimresp/corpus/`` are the single source of truth;
the accessors here parse them on first use and cache the result. Callers
must treat the returned objects as constants.
"""
from __future__ import annotations

import functools
from importlib.resources import files
from pathlib import Path

from .ast import Model, Requirement
from .parser import parse_model, parse_requirements

FIXED_MODEL = "lgs_fixed.asm"
ORIGINAL_MODEL = "lgs_original.asm"
REQUIREMENTS = "lgs.reqs"


def corpus_text(name: str) -> str:
    return (files("stimresp") / "corpus" / name).read_text(encoding="utf-8")


def corpus_path(name: str) -> Path:
    """Filesystem path of a shipped corpus file (for the CLI and tests)."""
    return Path(str(files("stimresp") / "corpus" / name))


@functools.lru_cache(maxsize=None)
def lgs_fixed() -> Model:
    """Ground model whose extension sequence handles every door position."""
    return parse_model(corpus_text(FIXED_MODEL))


@functools.lru_cache(maxsize=None)
def lgs_original() -> Model:
    """Ground model variant whose extension sequence stalls on an opening
    door; differs from the fixed variant in exactly that branch."""
    return parse_model(corpus_text(ORIGINAL_MODEL))


def lgs_requirements(model: Model | None = None) -> list[Requirement]:
    """The six landing gear requirements, type-checked against `model`
    (default: the fixed variant)."""
    return parse_requirements(corpus_text(REQUIREMENTS),
                              lgs_fixed() if model is None else model)
