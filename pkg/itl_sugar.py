#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Expansão do açúcar sintático para os seis construtores primitivos.

    phi -> psi   = phi sub psi
    top          = bot sub bot
    ~phi         = phi sub bot
    phi & psi    = ~(phi -> ~psi)
    phi | psi    = ~phi -> psi
    phi <-> psi  = (phi -> psi) & (psi -> phi)
    forall x.phi = (lam x.top) sub (lam x.phi)
    exists x.phi = ~forall x.~phi
    A = B        = forall z:<a>.(z A -> z B), z de nome reservado
    box(R, phi)  = forall w.((Omega w & R w) -> w phi), com R w em forma beta de cabeça
    dia(R, phi)  = ~box(R, ~phi)
"""

from __future__ import annotations

import logging
from functools import lru_cache

from config import EQUALITY_VARIABLE_PREFIX, WORLD_VARIABLE_PREFIX
from itl_syntax import (
    App, And, BINDERS, BOTTOM, Bottom, Box, ComplexType, Const, Diamond, Eq, Exists, Forall, Iff,
    Imp, Lam, Not, OMEGA, Or, PROP, Subset, Top, Var, children, rebuild, substitute,
)

logger = logging.getLogger(__name__)

TOP_EXPANDED = Subset(BOTTOM, BOTTOM)
WORLD_TYPE = ComplexType((PROP,))


def variable_names(*terms):
    """Nomes de todas as variáveis (livres ou ligadas) que ocorrem nos termos."""
    names = set()
    stack = list(terms)
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            names.add(t.name)
        elif isinstance(t, BINDERS):
            names.add(t.var.name)
        stack.extend(children(t))
    return names


def fresh_name(prefix, avoid):
    avoid = set(avoid)
    n = 0
    while f"{prefix}{n}" in avoid:
        n += 1
    return f"{prefix}{n}"


def head_beta(term):
    """Contrai redexes na posição de cabeça: (lam x.A) B C -> A{x:=B} C."""
    while True:
        args = []
        head = term
        while isinstance(head, App):
            args.append(head.arg)
            head = head.fun
        if not isinstance(head, Lam) or not args:
            return term
        args.reverse()
        result = substitute(head.body, head.var, args[0])
        for extra in args[1:]:
            result = App(result, extra)
        term = result


@lru_cache(maxsize=100000)
def desugar(term):
    """Devolve o termo equivalente só com Const, Var, Bottom, App, Lam e Subset."""
    if isinstance(term, (Const, Var, Bottom)):
        return term
    if isinstance(term, Top):
        return TOP_EXPANDED
    if isinstance(term, Lam):
        return Lam(term.var, desugar(term.body))
    if isinstance(term, (App, Subset)):
        return rebuild(term, tuple(desugar(k) for k in children(term)))
    if isinstance(term, Imp):
        return Subset(desugar(term.left), desugar(term.right))
    if isinstance(term, Not):
        return Subset(desugar(term.body), BOTTOM)
    if isinstance(term, And):
        return desugar(Not(Imp(term.left, Not(term.right))))
    if isinstance(term, Or):
        return desugar(Imp(Not(term.left), term.right))
    if isinstance(term, Iff):
        return desugar(And(Imp(term.left, term.right), Imp(term.right, term.left)))
    if isinstance(term, Forall):
        return Subset(Lam(term.var, TOP_EXPANDED), Lam(term.var, desugar(term.body)))
    if isinstance(term, Exists):
        return desugar(Not(Forall(term.var, Not(term.body))))
    if isinstance(term, Eq):
        left, right = desugar(term.left), desugar(term.right)
        z = Var(
            fresh_name(EQUALITY_VARIABLE_PREFIX, variable_names(left, right)),
            ComplexType((left.type,)),
        )
        return desugar(Forall(z, Imp(App(z, left), App(z, right))))
    if isinstance(term, Box):
        rel, body = desugar(term.rel), desugar(term.body)
        w = Var(fresh_name(WORLD_VARIABLE_PREFIX, variable_names(rel, body)), WORLD_TYPE)
        accessible = head_beta(App(rel, w))
        return desugar(Forall(w, Imp(And(App(OMEGA, w), accessible), App(w, body))))
    if isinstance(term, Diamond):
        return desugar(Not(Box(term.rel, Not(term.body))))
    raise TypeError(f"nó de termo desconhecido: {type(term).__name__}")


# Construtores de conveniência

def forall_many(variables, body):
    for v in reversed(list(variables)):
        body = Forall(v, body)
    return body
