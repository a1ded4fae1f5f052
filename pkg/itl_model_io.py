#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Modelos finitos em disco (JSON), geração aleatória de modelos e de termos
bem tipados, injeção de tokens duplicados para testar normalização.
"""

from __future__ import annotations

import itertools
import json
import logging

import numpy as np

from itl_models import FALSE, TRUE, FiniteModel, ModelError
from itl_parser import parse_signature, parse_term, parse_type, print_signature
from itl_printer import print_term, print_type
from itl_syntax import (
    And, App, BOTTOM, BasicType, ComplexType, Const, Eq, Exists, Forall, Iff, Imp, Lam, Not, Or,
    PROP, Subset, TOP, Var, type_components,
)

logger = logging.getLogger(__name__)

MODEL_FORMAT = "itl-model/1"

# powerset completo quando couber neste número de tokens
FULL_DOMAIN_LIMIT = 64
SAMPLED_EXTENSIONS = 16


def _type_depth(ty):
    if not ty.is_complex:
        return 0
    return 1 + max((_type_depth(a) for a in ty.args), default=0)


def model_types(sig, extra=()):
    found = {PROP: None}
    for ty in list(extra) + [t for _, t in sig.constants]:
        for comp in type_components(ty):
            found.setdefault(comp, None)
    for name in sig.basic_types:
        found.setdefault(BasicType(name), None)
    return sorted(found, key=lambda t: (_type_depth(t), str(t)))


def random_model(sig, rng, extra_types=(), basic_size=(1, 3), duplicates=True):
    """Modelo com intensões canônicas: constantes sorteadas, tokens duplicados ocasionais."""
    domains = {}
    extensions = {}
    counter = itertools.count()

    for ty in model_types(sig, extra_types):
        if not ty.is_complex:
            size = int(rng.integers(basic_size[0], basic_size[1] + 1))
            domains[ty] = [f"b{next(counter)}" for _ in range(size)]
            continue
        space = list(itertools.product(*[domains[a] for a in ty.args]))
        if 2 ** len(space) <= FULL_DOMAIN_LIMIT:
            chosen = [frozenset(s for s, bit in zip(space, bits) if bit)
                      for bits in itertools.product((0, 1), repeat=len(space))]
        else:
            chosen = {frozenset(), frozenset(space)}
            for _ in range(SAMPLED_EXTENSIONS):
                mask = rng.random(len(space)) < 0.5
                chosen.add(frozenset(s for s, bit in zip(space, mask) if bit))
            chosen = sorted(chosen, key=lambda e: (len(e), sorted(e)))
        if duplicates and chosen and rng.random() < 0.5:
            chosen.append(chosen[int(rng.integers(0, len(chosen)))])
        tokens = []
        for ext in chosen:
            tok = f"t{next(counter)}"
            tokens.append(tok)
            extensions[tok] = ext
        domains[ty] = tokens

    constants = {}
    for name, ty in sig.constants:
        pool = domains[ty]
        constants[name] = pool[int(rng.integers(0, len(pool)))]
    logger.debug(f"Modelo aleatório com {len(extensions)} tokens complexos")
    return FiniteModel(
        signature=sig,
        domains={ty: tuple(toks) for ty, toks in domains.items()},
        constants=constants,
        extensions=extensions,
        canonical_fallback=True,
    )


def inject_duplicate(m, token, name=None):
    """Acrescenta uma cópia indistinguível do token em todos os papéis extensionais."""
    ty = m.type_of_token(token)
    if ty is None:
        raise ModelError(f"token desconhecido: {token}")
    twin = name or f"{token}_dup"
    if m.type_of_token(twin) is not None:
        raise ModelError(f"token já existe: {twin}")

    def widen(ext):
        result = set()
        for tup in ext:
            options = [(c, twin) if c == token else (c,) for c in tup]
            result.update(itertools.product(*options))
        return frozenset(result)

    extensions = {tok: widen(ext) for tok, ext in m.extensions.items()}
    if token in m.extensions:
        extensions[twin] = extensions[token]
    domains = dict(m.domains)
    domains[ty] = tuple(m.domains[ty]) + (twin,)
    return FiniteModel(
        signature=m.signature,
        domains=domains,
        constants=dict(m.constants),
        intensions=dict(m.intensions),
        extensions=extensions,
        token_terms=dict(m.token_terms),
        canonical_fallback=m.canonical_fallback,
    )


# --- JSON ---
# Extensões de tokens de <> são gravadas como 0/1; as demais, como listas de tuplas.

def _dump_extension(ty, ext):
    if ty == PROP:
        return 1 if ext else 0
    return sorted(list(t) for t in ext)


def _load_extension(value):
    if isinstance(value, bool) or value in (0, 1):
        return TRUE if value else FALSE
    return frozenset(tuple(t) for t in value)


def model_to_dict(m):
    return {
        "format": MODEL_FORMAT,
        "signature": print_signature(m.signature),
        "types": [print_type(ty) for ty in m.domains],
        "domains": {print_type(ty): list(toks) for ty, toks in m.domains.items()},
        "constants": dict(sorted(m.constants.items())),
        "intensions": dict(sorted(m.intensions.items())),
        "extensions": {tok: _dump_extension(m.type_of_token(tok), ext) for tok, ext in sorted(m.extensions.items())},
        "token_terms": {tok: print_term(t) for tok, t in sorted(m.token_terms.items())},
        "canonical_fallback": m.canonical_fallback,
    }


def model_from_dict(payload):
    if payload.get("format") != MODEL_FORMAT:
        raise ModelError(f"formato de modelo não suportado: {payload.get('format')}")
    sig = parse_signature(payload.get("signature", ""), allow_reserved=True)
    try:
        domains = {parse_type(k): tuple(v) for k, v in payload["domains"].items()}
        missing = [t for t in payload.get("types", ()) if parse_type(t) not in domains]
        if missing:
            raise ModelError(f"tipos sem domínio no arquivo de modelo: {missing}")
        extensions = {tok: _load_extension(ext) for tok, ext in payload.get("extensions", {}).items()}
        token_terms = {tok: parse_term(text, sig) for tok, text in payload.get("token_terms", {}).items()}
        return FiniteModel(
            signature=sig,
            domains=domains,
            constants=dict(payload.get("constants", {})),
            intensions=dict(payload.get("intensions", {})),
            extensions=extensions,
            token_terms=token_terms,
            canonical_fallback=bool(payload.get("canonical_fallback", False)),
        )
    except KeyError as e:
        raise ModelError(f"campo ausente no arquivo de modelo: {e}") from None


def dumps_model(m):
    return json.dumps(model_to_dict(m), indent=2, ensure_ascii=False)


def loads_model(text):
    return model_from_dict(json.loads(text))


def save_model(path, m):
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(dumps_model(m))
        logger.info(f"Modelo salvo em {path}")
        return True
    except OSError as e:
        logger.error(f"Erro ao salvar modelo em {path}: {e}")
        return False


def load_model(path):
    with open(path, "r", encoding="utf-8") as f:
        model = loads_model(f.read())
    logger.info(f"Modelo carregado de {path}")
    return model


# --- Termos aleatórios ---

CONNECTIVES = ("not", "and", "or", "imp", "iff", "forall", "exists", "eq", "sub")


class TermSampler:
    """Termos bem tipados sorteados a partir da assinatura, com açúcar e redexes.

    Cada ligador recebe um nome novo (x0, X1, ...), então a impressão nunca
    precisa renomear e parse(print(t)) devolve o próprio t.
    """

    def __init__(self, sig, rng, types=None):
        self.sig = sig
        self.rng = rng
        self.types = list(types) if types is not None else model_types(sig)
        self._names = itertools.count()

    def choice(self, items):
        return items[int(self.rng.integers(0, len(items)))]

    def variable(self, ty):
        return Var(f"{'X' if ty.is_complex else 'x'}{next(self._names)}", ty)

    def _atoms(self, ty, scope):
        found = self.sig.constants_of_type(ty) + [v for v in scope if v.ty == ty]
        if ty == PROP:
            found += [BOTTOM, TOP]
        return found

    def _heads(self, ty, scope):
        result = []
        for head in [Const(n, t) for n, t in self.sig.constants] + list(scope):
            hty = head.type
            if hty.is_complex and len(hty.args) == len(ty.args) + 1 and hty.args[1:] == ty.args \
                    and self.closable(hty.args[0], scope):
                result.append(head)
        return result

    def closable(self, ty, scope=()):
        return ty.is_complex or bool(self._atoms(ty, scope))

    def _types(self, scope, where=None):
        return [t for t in self.types if self.closable(t, scope) and (where is None or where(t))]

    def _equatable(self, ty):
        return ComplexType((ty,)) in self.types

    def closable_types(self, scope=()):
        return self._types(scope)

    def equatable_types(self, scope=()):
        """Tipos cujo predicado <t> está no portador, logo A = B pode ser avaliado."""
        return self._types(scope, self._equatable)

    def term(self, ty=PROP, depth=2, scope=()):
        scope = tuple(scope)
        atoms = self._atoms(ty, scope)
        if not ty.is_complex:
            if not atoms:
                raise ModelError(f"nenhum termo fechado do tipo {ty}")
            return self.choice(atoms)
        options = ["atom"] if atoms else []
        if depth > 0:
            if self._heads(ty, scope):
                options.append("app")
            if self._types(scope):
                options.append("redex")
            if ty == PROP:
                options.extend(CONNECTIVES)
            else:
                options.append("lam")
        if not options:
            options.append("lam")
        kind = self.choice(options)
        inner = max(depth - 1, 0)
        if kind == "atom":
            return self.choice(atoms)
        if kind == "app":
            head = self.choice(self._heads(ty, scope))
            return App(head, self.term(head.type.args[0], inner, scope))
        if kind == "lam":
            x = self.variable(ty.args[0])
            return Lam(x, self.term(ComplexType(ty.args[1:]), inner, scope + (x,)))
        if kind == "redex":
            x = self.variable(self.choice(self._types(scope)))
            body = self.term(ty, inner, scope + (x,))
            return App(Lam(x, body), self.term(x.ty, inner, scope))
        if kind == "not":
            return Not(self.term(PROP, inner, scope))
        if kind in ("and", "or", "imp", "iff"):
            node = {"and": And, "or": Or, "imp": Imp, "iff": Iff}[kind]
            return node(self.term(PROP, inner, scope), self.term(PROP, inner, scope))
        if kind in ("forall", "exists"):
            x = self.variable(self.choice(self.types))
            node = Forall if kind == "forall" else Exists
            return node(x, self.term(PROP, inner, scope + (x,)))
        if kind == "eq":
            options = self.equatable_types(scope)
            if not options:
                return self.choice(atoms)
            side = self.choice(options)
            return Eq(self.term(side, inner, scope), self.term(side, inner, scope))
        options = self._types(scope, lambda t: t.is_complex)
        side = self.choice(options)
        return Subset(self.term(side, inner, scope), self.term(side, inner, scope))

    def variant(self, term):
        """Termo com a mesma extensão e outra forma: ~~A em <>, expansão eta nos demais tipos complexos."""
        ty = term.type
        if ty == PROP:
            return Not(Not(term))
        if ty.is_complex:
            y = self.variable(ty.args[0])
            return Lam(y, App(term, y))
        return term
