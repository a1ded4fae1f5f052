#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Impressão canônica de tipos e termos na sintaxe ASCII.

A saída é lida de volta por itl_parser sem perda: parse(print(t)) == t.
Precedência, da mais fraca para a mais forte:
ligadores, <->, ->, |, &, sub e =, ~, aplicação, átomos.
"""

from __future__ import annotations

from functools import lru_cache

from itl_sugar import fresh_name, variable_names
from itl_syntax import (
    App, And, Bottom, Box, Const, Diamond, Eq, Exists, Forall, Iff, Imp, Lam, Not, Or, Subset, Top,
    Var, free_vars, substitute,
)

LEVEL_BINDER = 0
LEVEL_IFF = 1
LEVEL_IMP = 2
LEVEL_OR = 3
LEVEL_AND = 4
LEVEL_REL = 5
LEVEL_NOT = 6
LEVEL_APP = 7
LEVEL_ATOM = 8


def print_type(ty):
    return str(ty)


def _binder(keyword, var, body):
    # ocorrência livre de outra variável com o mesmo nome: renomeia o ligador
    if any(v.name == var.name and v != var for v in free_vars(body)):
        fresh = Var(fresh_name(var.name, variable_names(body) | {var.name}), var.ty)
        body, var = substitute(body, var, fresh), fresh
    return f"{keyword} {var.name}:{print_type(var.ty)} . {_render(body, LEVEL_BINDER)}"


def _level(term):
    if isinstance(term, (Lam, Forall, Exists)):
        return LEVEL_BINDER
    if isinstance(term, Iff):
        return LEVEL_IFF
    if isinstance(term, Imp):
        return LEVEL_IMP
    if isinstance(term, Or):
        return LEVEL_OR
    if isinstance(term, And):
        return LEVEL_AND
    if isinstance(term, (Subset, Eq)):
        return LEVEL_REL
    if isinstance(term, Not):
        return LEVEL_NOT
    if isinstance(term, App):
        return LEVEL_APP
    return LEVEL_ATOM


def _render(term, required):
    text = _bare(term)
    if _level(term) < required:
        return f"({text})"
    return text


def _bare(term):
    if isinstance(term, (Const, Var)):
        return term.name
    if isinstance(term, Bottom):
        return "bot"
    if isinstance(term, Top):
        return "top"
    if isinstance(term, Lam):
        return _binder("lam", term.var, term.body)
    if isinstance(term, Forall):
        return _binder("forall", term.var, term.body)
    if isinstance(term, Exists):
        return _binder("exists", term.var, term.body)
    if isinstance(term, App):
        return f"{_render(term.fun, LEVEL_APP)} {_render(term.arg, LEVEL_ATOM)}"
    if isinstance(term, Not):
        return f"~{_render(term.body, LEVEL_NOT)}"
    if isinstance(term, Box):
        return f"box({_render(term.rel, LEVEL_BINDER)}, {_render(term.body, LEVEL_BINDER)})"
    if isinstance(term, Diamond):
        return f"dia({_render(term.rel, LEVEL_BINDER)}, {_render(term.body, LEVEL_BINDER)})"
    if isinstance(term, Subset):
        return f"{_render(term.left, LEVEL_REL + 1)} sub {_render(term.right, LEVEL_REL + 1)}"
    if isinstance(term, Eq):
        return f"{_render(term.left, LEVEL_REL + 1)} = {_render(term.right, LEVEL_REL + 1)}"
    if isinstance(term, And):
        return f"{_render(term.left, LEVEL_AND)} & {_render(term.right, LEVEL_AND + 1)}"
    if isinstance(term, Or):
        return f"{_render(term.left, LEVEL_OR)} | {_render(term.right, LEVEL_OR + 1)}"
    if isinstance(term, Imp):
        # associa à direita
        return f"{_render(term.left, LEVEL_IMP + 1)} -> {_render(term.right, LEVEL_IMP)}"
    if isinstance(term, Iff):
        return f"{_render(term.left, LEVEL_IFF + 1)} <-> {_render(term.right, LEVEL_IFF)}"
    raise TypeError(f"nó de termo desconhecido: {type(term).__name__}")


@lru_cache(maxsize=200000)
def print_term(term):
    """Forma textual canônica (sem parênteses externos)."""
    return _bare(term)
