#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Modelo finito de mundos construído a partir de valorações.

Cada proposição recebe como intensão o seu perfil de verdade nas valorações
(um token "s" seguido dos bits) e o mundo j é o conjunto das proposições
verdadeiras na valoração j. A camada 0 é o mundo atual. Assim W1-W4 e os
axiomas de w0 valem por construção, com mundos que não são o atual.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from config import OMEGA_NAME
from itl_hintikka import carrier_types
from itl_models import FALSE, TRUE, CarrierEscape, Evaluator, FiniteModel, ModelError, holds
from itl_parser import parse_signature
from itl_printer import print_term
from itl_sugar import WORLD_TYPE, desugar
from itl_syntax import (
    ACCESSIBILITY_TYPE, Const, PROP, Term, Type, canonical_inhabitant, closed_subterms,
)
from itl_worlds import WORLDS_SIGNATURE, W0

logger = logging.getLogger(__name__)

MAX_SETTLE_ROUNDS = 2000

MODEL_SIGNATURE = WORLDS_SIGNATURE.union(parse_signature("""
type e
const p : <>
const q : <>
const P : <e>
const k1 : e
const k2 : e
"""))

# valoração 0 = mundo atual
DEFAULT_VALUATIONS: Tuple[Mapping[str, object], ...] = (
    {"p": True, "q": False, "P": ("k1", "k2")},
    {"p": False, "q": True, "P": ("k1",)},
    {"p": True, "q": True, "P": ()},
)


def _depth(ty):
    if not ty.is_complex:
        return 0
    return 1 + max((_depth(a) for a in ty.args), default=0)


class ProfileModelBuilder:
    """Camadas de extensão (uma por valoração) sobre os mesmos tokens e intensões."""

    def __init__(self, sig, valuations):
        if not valuations:
            raise ModelError("é preciso ao menos uma valoração")
        self.sig = sig
        self.n = len(valuations)
        self.domains: Dict[Type, List[str]] = {}
        self.layers: List[Dict[str, frozenset]] = [{} for _ in range(self.n)]
        self.constants: Dict[str, str] = {}
        self.token_terms: Dict[str, Term] = {}
        self.intensions: Dict[str, str] = {}
        self._defined: Dict[str, Term] = {}
        self._created: Dict[Tuple[Type, tuple], str] = {}
        self._models: Optional[List[FiniteModel]] = None

        self._basic_tokens()
        self._proposition_tokens()
        self._world_tokens()
        self._constant_tokens(valuations)

    # --- construção inicial ---

    def _basic_tokens(self):
        for name, ty in self.sig.constants:
            if not ty.is_complex:
                tok = f"d_{name}"
                self.domains.setdefault(ty, []).append(tok)
                self.constants[name] = tok
                self.token_terms[tok] = Const(name, ty)

    def _proposition_tokens(self):
        tokens = []
        for bits in itertools.product("01", repeat=self.n):
            tok = "s" + "".join(bits)
            tokens.append(tok)
            for i, layer in enumerate(self.layers):
                layer[tok] = TRUE if bits[i] == "1" else FALSE
        self.domains[PROP] = tokens

    def _world_tokens(self):
        worlds = [f"W{j}" for j in range(self.n)]
        self.domains[WORLD_TYPE] = list(worlds)
        for j, tok in enumerate(worlds):
            ext = frozenset((s,) for s in self.domains[PROP] if s[1 + j] == "1")
            for layer in self.layers:
                layer[tok] = ext
        self.domains[ACCESSIBILITY_TYPE] = ["Om"]
        for layer in self.layers:
            layer["Om"] = frozenset((w,) for w in worlds)
        if self.sig.has(OMEGA_NAME):
            self.constants[OMEGA_NAME] = "Om"
        if self.sig.has(W0.name):
            self.constants[W0.name] = "W0"
            self.token_terms["W0"] = W0

    def _constant_tokens(self, valuations):
        for name, ty in self.sig.constants:
            if name in self.constants or not ty.is_complex:
                continue
            if ty == PROP:
                bits = "".join("1" if v.get(name, False) else "0" for v in valuations)
                self.constants[name] = "s" + bits
                continue
            if any(a.is_complex for a in ty.args):
                raise ModelError(f"constante {name} : {ty} não pode ser dada por valoração")
            tok = f"c_{name}"
            self.domains.setdefault(ty, []).append(tok)
            self.constants[name] = tok
            self.token_terms[tok] = Const(name, ty)
            for layer, valuation in zip(self.layers, valuations):
                tuples = set()
                for entry in valuation.get(name, ()):
                    names = (entry,) if isinstance(entry, str) else tuple(entry)
                    try:
                        tuples.add(tuple(self.constants[n] for n in names))
                    except KeyError as e:
                        raise ModelError(f"valoração de {name} cita constante desconhecida {e}") from None
                layer[tok] = frozenset(tuples)

    # --- modelos por camada ---

    def model(self, i=0):
        if self._models is None:
            self._models = [
                FiniteModel(
                    signature=self.sig,
                    domains={ty: tuple(toks) for ty, toks in self.domains.items()},
                    constants=dict(self.constants),
                    intensions=dict(self.intensions),
                    extensions=dict(layer),
                    token_terms=dict(self.token_terms),
                )
                for layer in self.layers
            ]
        return self._models[i]

    def _changed(self):
        self._models = None

    def _profile(self, term):
        return tuple(Evaluator(self.model(i)).value({}, term) for i in range(self.n))

    def _token_for(self, term):
        profile = self._profile(term)
        if term.type == PROP:
            return "s" + "".join("1" if v == TRUE else "0" for v in profile)
        key = (term.type, profile)
        tok = self._created.get(key)
        if tok is None:
            tok = f"x{len(self._created)}"
            self._created[key] = tok
            self.domains.setdefault(term.type, []).append(tok)
            self._defined[tok] = term
            for layer, ext in zip(self.layers, profile):
                layer[tok] = ext
        return tok

    def resolve(self, term):
        """Intensão do termo fechado, criando as entradas que faltarem na tabela."""
        stack = [term]
        while stack:
            current = stack[-1]
            key = print_term(current)
            if key in self.intensions:
                stack.pop()
                continue
            try:
                tok = self._token_for(current)
            except CarrierEscape as exc:
                if exc.term in stack:
                    raise ModelError(f"intensão circular em {key}") from None
                if not exc.term.type.is_complex:
                    raise ModelError(f"termo básico fora do modelo: {exc.key}") from None
                stack.append(exc.term)
                continue
            self.intensions[key] = tok
            self._changed()
            stack.pop()
        return self.intensions[print_term(term)]

    def _ensure_domains(self, sentences):
        for ty in sorted(carrier_types(sentences), key=lambda t: (_depth(t), str(t))):
            if ty in self.domains:
                continue
            if not ty.is_complex:
                raise ModelError(f"tipo básico {ty} sem constantes")
            self.domains[ty] = []
            self._changed()
            self.resolve(canonical_inhabitant(ty))

    def _refresh_created(self):
        changed = False
        for tok, term in self._defined.items():
            profile = self._profile(term)
            for layer, ext in zip(self.layers, profile):
                if layer[tok] != ext:
                    layer[tok] = ext
                    changed = True
        if changed:
            self._changed()
        return changed

    def settle(self, sentences):
        """Completa a tabela até as sentenças avaliarem sem escapes em todas as camadas."""
        sentences = [desugar(s) for s in sentences]
        self._ensure_domains(sentences)
        for sentence in sentences:
            for sub in closed_subterms(sentence):
                if sub.type.is_complex and not isinstance(sub, Const):
                    self.resolve(sub)
        for _ in range(MAX_SETTLE_ROUNDS):
            try:
                for sentence in sentences:
                    self._profile(sentence)
                changed = self._refresh_created()
            except CarrierEscape as exc:
                self.resolve(exc.term)
                continue
            if not changed:
                logger.info(f"Modelo de mundos com {len(self.intensions)} intensões tabeladas")
                return self.model(0)
        raise ModelError(f"tabela de intensões não estabilizou em {MAX_SETTLE_ROUNDS} rodadas")


def worlds_model(sentences, valuations=DEFAULT_VALUATIONS, sig=MODEL_SIGNATURE):
    return ProfileModelBuilder(sig, valuations).settle(sentences)


@dataclass(frozen=True)
class StatementCheck:
    statement: str
    failed: Tuple[str, ...] = ()

    @property
    def ok(self):
        return not self.failed


def validate_statement(m, statement, instances=()):
    """Instâncias e enunciado verdadeiros no modelo; escapes contam como falha."""
    failed = []
    ev = Evaluator(m)
    for sentence in list(instances) + [statement]:
        try:
            if not holds(m, sentence, ev):
                failed.append(print_term(desugar(sentence)))
        except CarrierEscape as exc:
            failed.append(f"fora do portador: {exc.key}")
    return StatementCheck(print_term(desugar(statement)), tuple(failed))
