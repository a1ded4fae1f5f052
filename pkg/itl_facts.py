#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Fatos básicos da avaliação conferidos em lotes de modelos aleatórios.

Cada fato é um caso concreto de uma das seis leis que a semântica tem de
respeitar: valor da implicação, valor do quantificador universal, conversão
beta, igualdade implica inclusão, reflexividade da igualdade e substituição
de iguais. Termos que escapam do portador finito são pulados e contados.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from itl_model_io import TermSampler
from itl_models import FALSE, TRUE, CarrierEscape, Evaluator, refutes
from itl_printer import print_term
from itl_sequent import Sequent
from itl_sugar import desugar
from itl_syntax import App, Eq, Forall, Imp, Lam, PROP, Subset, Term, Var, substitute

logger = logging.getLogger(__name__)

FACT_KINDS = ("imp", "forall", "beta", "eq_sub", "eq_refl", "eq_subst")


@dataclass(frozen=True)
class Fact:
    kind: str
    terms: Tuple[Term, ...]
    var: Optional[Var] = None

    def __str__(self):
        head = f"{self.var.name}: " if self.var is not None else ""
        return f"{self.kind} {head}" + " | ".join(print_term(t) for t in self.terms)


@dataclass(frozen=True)
class FactViolation:
    model: int
    fact: Fact

    def __str__(self):
        return f"modelo {self.model}: {self.fact}"


@dataclass
class FactReport:
    checked: int = 0
    skipped: int = 0
    violations: List[FactViolation] = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations


def _other(sampler, term, depth):
    # metade das vezes um termo de mesma extensão, para a hipótese de igualdade valer
    if sampler.rng.random() < 0.5:
        return sampler.variant(term)
    return sampler.term(term.type, depth)


def sample_facts(sig, rng, per_kind=5, types=None, depth=2):
    """Sorteia per_kind fatos de cada espécie com termos bem tipados da assinatura."""
    sampler = TermSampler(sig, rng, types)
    complex_types = [t for t in sampler.closable_types() if t.is_complex]
    equatable = sampler.equatable_types()
    equatable_complex = [t for t in equatable if t.is_complex]
    inner = max(depth - 1, 0)
    facts = []
    for _ in range(per_kind):
        facts.append(Fact("imp", (sampler.term(PROP, depth), sampler.term(PROP, depth))))

        x = sampler.variable(sampler.choice(sampler.types))
        facts.append(Fact("forall", (sampler.term(PROP, depth, (x,)),), x))

        x = sampler.variable(sampler.choice(sampler.closable_types()))
        body = sampler.term(sampler.choice(complex_types), depth, (x,))
        facts.append(Fact("beta", (body, sampler.term(x.ty, inner)), x))

        if equatable_complex:
            a = sampler.term(sampler.choice(equatable_complex), depth)
            facts.append(Fact("eq_sub", (a, _other(sampler, a, depth))))
        if equatable:
            facts.append(Fact("eq_refl", (sampler.term(sampler.choice(equatable), depth),)))
            x = sampler.variable(sampler.choice(equatable))
            context = sampler.term(sampler.choice(equatable), depth, (x,))
            b = sampler.term(x.ty, inner)
            facts.append(Fact("eq_subst", (context, b, _other(sampler, b, inner)), x))
    logger.debug(f"{len(facts)} fatos sorteados")
    return facts


def check_fact(m, fact, evaluator=None):
    """True se o fato vale no modelo; CarrierEscape sobe quando algum termo sai do portador."""
    ev = evaluator or Evaluator(m)
    kind = fact.kind
    if kind == "imp":
        phi, psi = fact.terms
        value = ev.value({}, desugar(Imp(phi, psi)))
        return (value == FALSE) == (ev.value({}, desugar(phi)) == TRUE and ev.value({}, desugar(psi)) == FALSE)
    if kind == "forall":
        body = fact.terms[0]
        every = all(ev.value({fact.var: d}, desugar(body)) == TRUE for d in m.domain(fact.var.ty))
        return (ev.value({}, desugar(Forall(fact.var, body))) == TRUE) == every
    if kind == "beta":
        body, arg = fact.terms
        redex = ev.value({}, desugar(App(Lam(fact.var, body), arg)))
        return redex == ev.value({}, desugar(substitute(body, fact.var, arg)))
    # as três leis da igualdade: o fato falha quando o sequente correspondente é refutado
    if kind == "eq_sub":
        a, b = fact.terms
        seq = Sequent.from_sides([Eq(a, b)], [Subset(a, b)])
    elif kind == "eq_refl":
        a = fact.terms[0]
        seq = Sequent.from_sides([], [Eq(a, a)])
    elif kind == "eq_subst":
        context, b, other = fact.terms
        same = Eq(substitute(context, fact.var, b), substitute(context, fact.var, other))
        seq = Sequent.from_sides([Eq(b, other)], [same])
    else:
        raise ValueError(f"espécie de fato desconhecida: {kind}")
    return not refutes(m, seq)


def _check_model(index, m, facts):
    ev = Evaluator(m)
    checked, skipped, violations = 0, 0, []
    for fact in facts:
        try:
            ok = check_fact(m, fact, ev)
        except CarrierEscape:
            skipped += 1
            continue
        checked += 1
        if not ok:
            violations.append(FactViolation(index, fact))
    return checked, skipped, violations


def fact_suite(models, facts, workers=1):
    """Confere todos os fatos em todos os modelos; um modelo por tarefa."""
    report = FactReport()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda pair: _check_model(pair[0], pair[1], facts), enumerate(models)))
    for checked, skipped, violations in results:
        report.checked += checked
        report.skipped += skipped
        report.violations.extend(violations)
    for v in report.violations:
        logger.warning(f"Fato violado, {v}")
    logger.info(f"{report.checked} fatos conferidos em {len(results)} modelos, "
                f"{report.skipped} fora do portador, {len(report.violations)} violações")
    return report
