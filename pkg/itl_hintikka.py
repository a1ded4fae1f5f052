#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Sequentes de Hintikka: verificação das seis condições e construção do
contramodelo finito (um token por termo fechado do portador).
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Sequence, Tuple

from config import MAX_CARRIER_ROUNDS, MAX_FIXPOINT_ROUNDS
from itl_calculus import lam_reduct
from itl_models import CarrierEscape, Evaluator, FiniteModel, ModelError, check_model, refutes
from itl_printer import print_term
from itl_sequent import Sign, SignedSentence
from itl_sugar import desugar
from itl_syntax import (
    BOTTOM, Const, ITLError, Subset, Term, Type, apply_args, canonical_inhabitant, closed_subterms,
    peel_args, spine, subterms, type_components,
)

logger = logging.getLogger(__name__)

Universe = Callable[[Type], Sequence[Term]]


class ValidationFailed(ITLError):
    """O contramodelo construído não refuta o sequente alvo."""

    def __init__(self, stage, detail, terms=()):
        self.stage = stage
        self.detail = detail
        self.terms = tuple(terms)
        super().__init__(f"validação falhou ({stage}): {detail}")


@dataclass(frozen=True)
class Violation:
    clause: int
    member: str
    detail: str
    missing: Tuple[SignedSentence, ...] = ()

    def __str__(self):
        text = f"condição {self.clause} em {self.member}: {self.detail}"
        if self.missing:
            text += " (falta " + " ou ".join(s.key for s in self.missing) + ")"
        return text


@dataclass(frozen=True)
class HintikkaReport:
    violations: Tuple[Violation, ...] = ()
    coverage: Dict[int, int] = field(default_factory=dict)
    universe_size: int = 0

    @property
    def ok(self):
        return not self.violations


# --- Universo padrão ---

def carrier_types(terms):
    """Tipos de todos os subtermos (variáveis ligadas incluídas), fechados por componentes."""
    found = {}
    for term in terms:
        for sub in subterms(term):
            for ty in type_components(sub.type):
                found.setdefault(ty, None)
    return sorted(found, key=str)


def default_universe(seq, sig=None, extra=()):
    """Termos fechados que ocorrem no sequente, mais habitantes canônicos."""
    by_type = {}
    for term in list(seq.closed_subterms()) + [desugar(t) for t in extra]:
        for sub in closed_subterms(term):
            bucket = by_type.setdefault(sub.type, [])
            if sub not in bucket:
                bucket.append(sub)

    def universe(ty):
        terms = list(by_type.get(ty, ()))
        if ty.is_complex:
            inhabitant = canonical_inhabitant(ty)
            if inhabitant not in terms:
                terms.append(inhabitant)
        elif not terms and sig is not None:
            terms = sig.constants_of_type(ty)[:1]
        return terms

    return universe


# --- Condições ---

def _consistent_options(seq, options):
    result = []
    for option in options:
        if option.sign is Sign.L and option.sentence == BOTTOM:
            continue
        if SignedSentence(option.sign.flip(), option.sentence) in seq:
            continue
        result.append(option)
    return tuple(result)


def has_witness(seq, member):
    left, right = member.sentence.left, member.sentence.right
    n = len(left.type.args)
    for other in seq:
        if other.sign is not Sign.L:
            continue
        peeled = peel_args(other.sentence, n)
        if peeled is None or peeled[0] != left:
            continue
        if not all(isinstance(arg, Const) for arg in peeled[1]):
            continue
        if SignedSentence(Sign.R, apply_args(right, peeled[1])) in seq:
            return True
    return False


def check_hintikka(seq, universe=None):
    """Verifica as seis condições; a condição 5 quantifica sobre o universo dado."""
    universe = universe or default_universe(seq)
    violations = []
    coverage = {k: 0 for k in range(1, 7)}
    sizes = set()

    for member in seq:
        phi = member.sentence
        if member.sign is Sign.L:
            coverage[1] += 1
            if SignedSentence(Sign.R, phi) in seq:
                violations.append(Violation(1, member.key, "a mesma fórmula dos dois lados"))
            coverage[2] += 1
            if phi == BOTTOM:
                violations.append(Violation(2, member.key, "L:bot no sequente"))

        reduct = lam_reduct(phi)
        if reduct is not None:
            clause = 3 if member.sign is Sign.L else 4
            coverage[clause] += 1
            wanted = SignedSentence(member.sign, reduct)
            if wanted not in seq:
                violations.append(Violation(clause, member.key, "redução beta ausente", (wanted,)))

        if not isinstance(phi, Subset):
            continue
        if member.sign is Sign.R:
            coverage[6] += 1
            if not has_witness(seq, member):
                violations.append(Violation(6, member.key, "sem constantes testemunhas"))
            continue
        pools = [universe(ty) for ty in phi.left.type.args]
        for pool in pools:
            sizes.update(print_term(t) for t in pool)
        for tup in itertools.product(*pools):
            coverage[5] += 1
            left = SignedSentence(Sign.R, apply_args(phi.left, tup))
            right = SignedSentence(Sign.L, apply_args(phi.right, tup))
            if left in seq or right in seq:
                continue
            shown = ", ".join(print_term(t) for t in tup) or "vetor vazio"
            violations.append(Violation(5, member.key, f"instância [{shown}] não decidida",
                                        _consistent_options(seq, (left, right))))

    return HintikkaReport(tuple(violations), coverage, len(sizes))


# --- Contramodelo ---

def _forced_extensions(seq, constants, tokens):
    """Constantes de tipo complexo: só as tuplas exigidas por sentenças L."""
    forced = {tok: set() for c, tok in constants.items() if c.ty.is_complex}
    for member in seq:
        if member.sign is not Sign.L:
            continue
        head, args = spine(member.sentence)
        if isinstance(head, Const) and head in constants and head.ty.is_complex:
            if all(a in tokens for a in args):
                forced[constants[head]].add(tuple(tokens[a] for a in args))
    return {tok: frozenset(ext) for tok, ext in forced.items()}


class _CarrierBuilder:
    def __init__(self, seq, sig):
        self.seq = seq
        self.sig = sig
        self.carrier: Dict[Term, None] = {}
        self.added: List[Term] = []
        for term in seq.closed_subterms():
            self.carrier.setdefault(term, None)

    def include(self, term, escaped=False):
        for sub in closed_subterms(desugar(term)):
            if sub not in self.carrier:
                self.carrier[sub] = None
                if escaped:
                    self.added.append(sub)

    def _complete(self):
        terms = list(self.carrier)
        for ty in carrier_types([s.sentence for s in self.seq] + terms):
            if ty.is_complex:
                inhabitant = canonical_inhabitant(ty)
                if inhabitant not in self.carrier:
                    terms.append(inhabitant)
            elif not any(t.type == ty for t in terms):
                options = self.sig.constants_of_type(ty)
                if not options:
                    raise ValidationFailed("carrier", f"tipo básico {ty} sem constantes")
                terms.append(options[0])
        return sorted(dict.fromkeys(terms), key=lambda t: (str(t.type), len(print_term(t)), print_term(t)))

    def build(self):
        terms = self._complete()
        tokens = {t: f"d{i}" for i, t in enumerate(terms)}
        domains = {}
        for t in terms:
            domains.setdefault(t.type, []).append(tokens[t])
        constants = {t: tok for t, tok in tokens.items() if isinstance(t, Const)}
        extensions = _forced_extensions(self.seq, constants, tokens)
        computed = [t for t in terms if t.type.is_complex and not isinstance(t, Const)]
        for t in computed:
            extensions[tokens[t]] = frozenset()

        def model():
            return FiniteModel(
                signature=self.sig.extend(constants),
                domains={ty: tuple(toks) for ty, toks in domains.items()},
                constants={c.name: tok for c, tok in constants.items()},
                intensions={print_term(t): tok for t, tok in tokens.items() if not isinstance(t, Const)},
                extensions=dict(extensions),
                token_terms={tok: t for t, tok in tokens.items()},
            )

        for _ in range(MAX_FIXPOINT_ROUNDS):
            ev = Evaluator(model())
            changed = False
            for t in computed:
                value = ev.value({}, t)
                if value != extensions[tokens[t]]:
                    extensions[tokens[t]] = value
                    changed = True
            if not changed:
                return model()
        raise ValidationFailed("fixpoint", f"extensões não estabilizaram em {MAX_FIXPOINT_ROUNDS} rodadas")


def build_countermodel(seq, sig, target=None, extra_terms=()):
    """Modelo finito que refuta o alvo (por padrão o próprio sequente de Hintikka)."""
    target = target or seq
    builder = _CarrierBuilder(seq, sig)
    for term in extra_terms:
        builder.include(term)
    model = None
    for attempt in range(MAX_CARRIER_ROUNDS + 1):
        try:
            model = builder.build()
            break
        except CarrierEscape as exc:
            logger.debug(f"Portador ampliado com {exc.key}")
            builder.include(exc.term, escaped=True)
    if model is None:
        raise ValidationFailed("carrier", f"portador não fechou em {MAX_CARRIER_ROUNDS} rodadas", builder.added)

    try:
        refuted = refutes(model, target)
    except (CarrierEscape, ModelError) as exc:
        raise ValidationFailed("refutation", str(exc), builder.added) from None
    if not refuted:
        raise ValidationFailed("refutation", "o modelo não refuta o sequente alvo", builder.added)
    report = check_model(model, [s.sentence for s in seq])
    if not report.ok:
        raise ValidationFailed("well-formedness", str(report.violations[0].detail), builder.added)
    logger.info(f"Contramodelo com {sum(len(d) for d in model.domains.values())} tokens validado")
    return model
