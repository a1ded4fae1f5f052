#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Modelos intensionais finitos: domínios de tokens, tabelas de intensão,
extensões, avaliação composicional, verificação de boa formação, refutação
de sequentes e quociente para modelos normais.

Convenção do tipo <>: a extensão 0 é frozenset() e 1 é frozenset({()}).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Mapping, Tuple

from config import TOKEN_NAME_PREFIX
from itl_lambda import is_redex
from itl_printer import print_term
from itl_sequent import Sign
from itl_sugar import desugar
from itl_syntax import (
    App, Bottom, ComplexType, Const, Eq, ITLError, Lam, Signature, Subset, Term, Type,
    Var, apply_subst, free_vars, is_closed, subterms,
)

logger = logging.getLogger(__name__)

FALSE = frozenset()
TRUE = frozenset({()})

Assignment = Dict[Var, str]


class CarrierEscape(ITLError):
    """Intensão não disponível no portador finito."""

    def __init__(self, term, key):
        self.term = term
        self.key = key
        super().__init__(f"termo fora do portador: {key}")


class CoherenceError(ITLError):
    """A relação de similaridade não é uma congruência nas tabelas."""


class ModelError(ITLError):
    """Modelo mal formado ou avaliação inconsistente."""


@dataclass(frozen=True, eq=False)
class FiniteModel:
    signature: Signature
    domains: Mapping[Type, Tuple[str, ...]]
    constants: Mapping[str, str]
    intensions: Mapping[str, str] = field(default_factory=dict)
    extensions: Mapping[str, frozenset] = field(default_factory=dict)
    token_terms: Mapping[str, Term] = field(default_factory=dict)
    canonical_fallback: bool = False
    _token_type: Dict[str, Type] = field(default=None, repr=False)

    def __post_init__(self):
        index = {}
        for ty, tokens in self.domains.items():
            for tok in tokens:
                index.setdefault(tok, ty)
        object.__setattr__(self, "_token_type", index)

    def domain(self, ty):
        try:
            return self.domains[ty]
        except KeyError:
            raise CarrierEscape(Var("_", ty), f"domínio ausente para o tipo {ty}") from None

    def type_of_token(self, token):
        return self._token_type.get(token)

    def extension(self, token):
        try:
            return self.extensions[token]
        except KeyError:
            raise ModelError(f"token sem extensão: {token}") from None

    def naming_term(self, token):
        """Termo fechado que nomeia o token (usado nas chaves da tabela de intensões)."""
        term = self.token_terms.get(token)
        if term is not None:
            return term
        ty = self.type_of_token(token)
        if ty is None:
            raise ModelError(f"token desconhecido: {token}")
        return Const(f"{TOKEN_NAME_PREFIX}{token}", ty)


# --- Avaliação ---

class Evaluator:
    """Avaliação V(a, t) e I(a, t) com memória por (termo, atribuição relevante)."""

    def __init__(self, model):
        self.model = model
        self._values: Dict[tuple, frozenset] = {}
        self._by_extension: Dict[Type, Dict[frozenset, str]] = {}

    def _key(self, term, a):
        relevant = tuple(sorted((v.name, str(v.ty), a[v]) for v in free_vars(term) if v in a))
        return term, relevant

    def canonical_token(self, ty, ext):
        table = self._by_extension.get(ty)
        if table is None:
            table = {}
            for tok in sorted(self.model.domains.get(ty, ())):
                table.setdefault(self.model.extensions.get(tok), tok)
            self._by_extension[ty] = table
        return table.get(ext)

    def intension(self, a, term):
        m = self.model
        if isinstance(term, Var):
            try:
                return a[term]
            except KeyError:
                raise ModelError(f"variável sem atribuição: {term.name}") from None
        if isinstance(term, Const):
            if term.name.startswith(TOKEN_NAME_PREFIX):
                return term.name[len(TOKEN_NAME_PREFIX):]
            try:
                return m.constants[term.name]
            except KeyError:
                raise CarrierEscape(term, term.name) from None
        sigma = {v: m.naming_term(a[v]) for v in free_vars(term) if v in a}
        missing = [v for v in free_vars(term) if v not in a]
        if missing:
            raise ModelError(f"variável sem atribuição: {missing[0].name}")
        closed = apply_subst(term, sigma)
        key = print_term(closed)
        token = m.intensions.get(key)
        if token is not None:
            return token
        if m.canonical_fallback and term.type.is_complex:
            token = self.canonical_token(term.type, self.value(a, term))
            if token is not None:
                return token
        raise CarrierEscape(closed, key)

    def value(self, a, term):
        if not term.type.is_complex:
            raise ModelError(f"extensão pedida para termo de tipo básico {term.type}")
        key = self._key(term, a)
        cached = self._values.get(key)
        if cached is not None:
            return cached
        result = self._compute(a, term)
        self._values[key] = result
        return result

    def _compute(self, a, term):
        m = self.model
        if isinstance(term, Bottom):
            return FALSE
        if isinstance(term, (Const, Var)):
            return m.extension(self.intension(a, term))
        if isinstance(term, App):
            arg = self.intension(a, term.arg)
            return frozenset(t[1:] for t in self.value(a, term.fun) if t[0] == arg)
        if isinstance(term, Lam):
            result = set()
            for d in m.domain(term.var.ty):
                inner = dict(a)
                inner[term.var] = d
                for rest in self.value(inner, term.body):
                    result.add((d,) + rest)
            return frozenset(result)
        if isinstance(term, Subset):
            return TRUE if self.value(a, term.left) <= self.value(a, term.right) else FALSE
        raise ModelError(f"termo com açúcar não expandido: {type(term).__name__}")


def eval_extension(m, a, t):
    return Evaluator(m).value(a, desugar(t))


def resolve_intension(m, a, t):
    return Evaluator(m).intension(a, desugar(t))


def holds(m, sentence, evaluator=None):
    ev = evaluator or Evaluator(m)
    return ev.value({}, desugar(sentence)) == TRUE


# --- Boa formação ---

@dataclass(frozen=True)
class ModelViolation:
    kind: str
    detail: str


@dataclass(frozen=True)
class ModelReport:
    violations: Tuple[ModelViolation, ...] = ()
    checked: int = 0

    @property
    def ok(self):
        return not self.violations


def _tuple_types(ty):
    return ty.args if ty.is_complex else ()


def check_model(m, terms=()):
    """Domínios, tipagem de E, constantes e coerência das intensões sobre os subtermos dados."""
    violations = []
    seen = {}
    for ty, tokens in m.domains.items():
        if not tokens:
            violations.append(ModelViolation("domain", f"domínio vazio para {ty}"))
        for tok in tokens:
            if tok in seen and seen[tok] != ty:
                violations.append(ModelViolation("domain", f"token {tok} em {seen[tok]} e {ty}"))
            seen[tok] = ty
    for ty, tokens in m.domains.items():
        if not ty.is_complex:
            continue
        arg_types = _tuple_types(ty)
        for tok in tokens:
            ext = m.extensions.get(tok)
            if ext is None:
                violations.append(ModelViolation("extension", f"token {tok} sem extensão"))
                continue
            for tup in ext:
                if len(tup) != len(arg_types) or any(
                    c not in m.domains.get(at, ()) for c, at in zip(tup, arg_types)
                ):
                    violations.append(ModelViolation("extension", f"tupla mal tipada {tup} em {tok}"))
                    break
    for name, tok in m.constants.items():
        if m.signature.has(name):
            ty = m.signature.type_of_constant(name)
            if tok not in m.domains.get(ty, ()):
                violations.append(ModelViolation("constant", f"{name} fora de D_{ty}"))

    ev = Evaluator(m)
    checked = 0
    closed_terms = {}
    for term in terms:
        for sub in subterms(desugar(term)):
            if is_closed(sub) and sub.type.is_complex:
                closed_terms.setdefault(sub, None)
    for sub in closed_terms:
        checked += 1
        try:
            token = ev.intension({}, sub)
            if m.extensions.get(token) != ev.value({}, sub):
                violations.append(ModelViolation("coherence", f"E(I(t)) difere de V(t) para {print_term(sub)}"))
        except CarrierEscape as exc:
            violations.append(ModelViolation("escape", exc.key))
        if is_redex(sub):
            # cláusula 4: I((lam x.A) B) calculada pela substituição
            lam, arg = sub.fun, sub.arg
            try:
                direct = ev.intension({}, apply_subst(lam.body, {lam.var: arg}))
                shifted = ev.intension({lam.var: ev.intension({}, arg)}, lam.body)
                if direct != shifted:
                    violations.append(ModelViolation("substitution", print_term(sub)))
            except CarrierEscape as exc:
                violations.append(ModelViolation("escape", exc.key))
    if violations:
        logger.debug(f"check_model: {len(violations)} violações")
    return ModelReport(tuple(violations), checked)


# --- Refutação ---

def _alternative_assignment(m):
    return {Var("_a", ty): tokens[-1] for ty, tokens in m.domains.items() if tokens}


def refutes(m, seq):
    """L verdadeiras e R falsas; avaliado sob duas atribuições."""
    ev = Evaluator(m)
    alt = _alternative_assignment(m)
    result = True
    for member in seq:
        value = ev.value({}, member.sentence)
        if ev.value(alt, member.sentence) != value:
            raise ModelError(f"valor depende da atribuição: {member.key}")
        if (member.sign is Sign.L) != (value == TRUE):
            result = False
    return result


# --- Normalidade e quociente ---

def similarity(m, ty, evaluator=None):
    """Pares (d, d') com V(a, lam x lam x'. x = x'); None se D_<ty> não existe."""
    if ComplexType((ty,)) not in m.domains:
        return None
    ev = evaluator or Evaluator(m)
    x, y = Var("_s1", ty), Var("_s2", ty)
    return ev.value({}, desugar(Lam(x, Lam(y, Eq(x, y)))))


def is_normal(m):
    ev = Evaluator(m)
    for ty in m.domains:
        rel = similarity(m, ty, ev)
        if rel is not None and any(a != b for a, b in rel):
            return False
    return True


def _classes(tokens, rel, ty):
    for d in tokens:
        if (d, d) not in rel:
            raise CoherenceError(f"similaridade não reflexiva em {ty}")
    for d, e in rel:
        if (e, d) not in rel:
            raise CoherenceError(f"similaridade não simétrica em {ty}: {d}, {e}")
    rep = {}
    for d in sorted(tokens):
        if d in rep:
            continue
        for e in sorted(tokens):
            if (d, e) in rel:
                rep[e] = d
    return rep


def normalize_model(m, sentences=()):
    """Quociente pela similaridade: representante = menor token da classe."""
    ev = Evaluator(m)
    rep = {}
    for ty, tokens in m.domains.items():
        rel = similarity(m, ty, ev)
        if rel is None:
            rep.update({d: d for d in tokens})
        else:
            rep.update(_classes(tokens, rel, ty))

    def image(ext):
        return frozenset(tuple(rep[c] for c in tup) for tup in ext)

    extensions = {}
    for tok, ext in m.extensions.items():
        target = rep.get(tok, tok)
        mapped = image(ext)
        if target in extensions and extensions[target] != mapped:
            raise CoherenceError(f"tokens similares com extensões distintas: {tok}")
        extensions[target] = mapped
    domains = {ty: tuple(sorted({rep[d] for d in tokens})) for ty, tokens in m.domains.items()}
    token_terms = {rep[d]: t for d, t in sorted(m.token_terms.items(), reverse=True) if d in rep}
    quotient = FiniteModel(
        signature=m.signature,
        domains=domains,
        constants={n: rep[t] for n, t in m.constants.items()},
        intensions={k: rep[t] for k, t in m.intensions.items()},
        extensions=extensions,
        token_terms=token_terms,
        canonical_fallback=m.canonical_fallback,
    )
    for sentence in sentences:
        if holds(m, sentence, ev) != holds(quotient, sentence):
            raise CoherenceError(f"quociente mudou o valor de {print_term(desugar(sentence))}")
    merged = sum(len(m.domains[ty]) - len(domains[ty]) for ty in m.domains)
    logger.info(f"Modelo normalizado: {merged} tokens identificados")
    return quotient


def sentence_value(m, sentence):
    return 1 if holds(m, sentence) else 0
