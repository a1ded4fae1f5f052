#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Conversão lambda: normalização beta-eta com renomeação e alfa-equivalência.

Só este módulo renomeia variáveis ligadas; apply_subst recusa captura.
"""

from __future__ import annotations

import logging

from config import NORMALIZE_STEP_LIMIT
from itl_sugar import desugar, variable_names
from itl_syntax import (
    App, BudgetExceeded, Const, Lam, Subset, Var, apply_args, children, free_vars, rebuild, spine,
)

logger = logging.getLogger(__name__)


class _NameSupply:
    """Gera nomes novos, determinísticos, que evitam os já usados."""

    def __init__(self, used):
        self.used = set(used)

    def fresh(self, var):
        base = var.name.rstrip("0123456789") or "v"
        k = 1
        while f"{base}{k}" in self.used:
            k += 1
        name = f"{base}{k}"
        self.used.add(name)
        return Var(name, var.ty)


class _Normalizer:
    def __init__(self, term, step_limit):
        self.names = _NameSupply(variable_names(term))
        self.steps = 0
        self.step_limit = step_limit

    def tick(self):
        self.steps += 1
        if self.steps > self.step_limit:
            raise BudgetExceeded(f"normalização excedeu {self.step_limit} passos")

    def subst(self, term, x, b):
        """Substituição com renomeação de ligadores que capturariam."""
        if x not in free_vars(term):
            return term
        if isinstance(term, Var):
            return b
        if isinstance(term, Lam):
            y, body = term.var, term.body
            if y in free_vars(b):
                renamed = self.names.fresh(y)
                body = self.subst(body, y, renamed)
                y = renamed
            return Lam(y, self.subst(body, x, b))
        return rebuild(term, tuple(self.subst(k, x, b) for k in children(term)))

    def beta(self, term):
        while True:
            head, args = spine(term)
            if isinstance(head, Lam) and args:
                self.tick()
                term = apply_args(self.subst(head.body, head.var, args[0]), args[1:])
                continue
            break
        if isinstance(head, Lam):
            return Lam(head.var, self.beta(head.body))
        if isinstance(head, Subset):
            head = Subset(self.beta(head.left), self.beta(head.right))
        return apply_args(head, [self.beta(a) for a in args])


def eta_contract(term):
    if isinstance(term, Lam):
        body = eta_contract(term.body)
        if isinstance(body, App) and body.arg == term.var and term.var not in free_vars(body.fun):
            return body.fun
        return Lam(term.var, body)
    kids = children(term)
    if not kids:
        return term
    return rebuild(term, tuple(eta_contract(k) for k in kids))


def beta_normalize(term, step_limit=NORMALIZE_STEP_LIMIT):
    term = desugar(term)
    return _Normalizer(term, step_limit).beta(term)


def beta_eta_normalize(term, step_limit=NORMALIZE_STEP_LIMIT):
    """Forma normal beta seguida de contração eta onde x não é livre em A."""
    normal = eta_contract(beta_normalize(term, step_limit))
    logger.debug("forma normal calculada")
    return normal


def is_redex(term):
    return isinstance(term, App) and isinstance(term.fun, Lam)


def alpha_eq(a, b):
    """Igualdade a menos de renomeação de variáveis ligadas."""
    return _alpha(desugar(a), desugar(b), {}, {}, 0)


def _alpha(a, b, env_a, env_b, depth):
    if type(a) is not type(b):
        return False
    if isinstance(a, Var):
        ia = env_a.get(a)
        ib = env_b.get(b)
        if ia is None and ib is None:
            return a == b
        return ia == ib and a.ty == b.ty
    if isinstance(a, Const):
        return a == b
    if isinstance(a, Lam):
        if a.var.ty != b.var.ty:
            return False
        inner_a = dict(env_a)
        inner_a[a.var] = depth
        inner_b = dict(env_b)
        inner_b[b.var] = depth
        return _alpha(a.body, b.body, inner_a, inner_b, depth + 1)
    kids_a, kids_b = children(a), children(b)
    return len(kids_a) == len(kids_b) and all(
        _alpha(x, y, env_a, env_b, depth) for x, y in zip(kids_a, kids_b)
    )
