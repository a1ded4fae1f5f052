#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Cálculo de sequentes sem corte: objetos de prova, verificador e teorias.

O verificador só conhece as regras básicas (W, Axiom, BottomL, LamL, LamR,
SubL, SubR). Regras derivadas precisam ser expandidas por itl_derived antes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Optional, Sequence, Tuple

from config import RESERVED_PREFIX
from itl_printer import print_term
from itl_sequent import Sequent, Sign, SignedSentence
from itl_syntax import (
    BOTTOM, CaptureError, Const, ITLError, Lam, PROP, Signature, Subset, Term, TypeMismatch,
    Var, apply_args, apply_subst, constants_of, is_closed, spine,
)

logger = logging.getLogger(__name__)


class RuleId(Enum):
    W = "W"
    AXIOM = "Axiom"
    BOTTOM_L = "BottomL"
    LAM_L = "LamL"
    LAM_R = "LamR"
    SUB_L = "SubL"
    SUB_R = "SubR"
    TOP_R = "TopR"
    IMP_L = "ImpL"
    IMP_R = "ImpR"
    ALL_L = "AllL"
    ALL_R = "AllR"
    EQ_L = "EqL"
    EQ_R = "EqR"

    @property
    def is_derived(self):
        return self in DERIVED_RULES


BASE_RULES = frozenset({RuleId.W, RuleId.AXIOM, RuleId.BOTTOM_L, RuleId.LAM_L, RuleId.LAM_R,
                        RuleId.SUB_L, RuleId.SUB_R})
DERIVED_RULES = frozenset(set(RuleId) - BASE_RULES)

PREMISE_COUNT = {
    RuleId.W: 1, RuleId.AXIOM: 0, RuleId.BOTTOM_L: 0, RuleId.LAM_L: 1, RuleId.LAM_R: 1,
    RuleId.SUB_L: 2, RuleId.SUB_R: 1, RuleId.TOP_R: 0, RuleId.IMP_L: 2, RuleId.IMP_R: 1,
    RuleId.ALL_L: 1, RuleId.ALL_R: 1, RuleId.EQ_L: 1, RuleId.EQ_R: 0,
}


@dataclass(frozen=True)
class RuleData:
    """Testemunhas da regra.

    principal: sentença sinalizada principal (Axiom: qualquer um dos lados).
    terms: C para SubL, constantes c para SubR, testemunha A para AllL,
           constante c para AllR, (A, B) para EqL, (A,) para EqR.
    context/hole: fórmula phi com a variável marcada x, para EqL.
    """

    principal: Optional[SignedSentence] = None
    terms: Tuple[Term, ...] = ()
    context: Optional[Term] = None
    hole: Optional[Var] = None


@dataclass(frozen=True)
class Proof:
    conclusion: Sequent
    rule: RuleId
    premises: Tuple["Proof", ...] = ()
    data: RuleData = field(default_factory=RuleData)


@dataclass(frozen=True)
class Verdict:
    valid: bool
    reason: str = ""
    path: Tuple[int, ...] = ()

    def __bool__(self):
        return self.valid


# --- Decomposições usadas pelas regras ---

def lam_reduct(sentence):
    """(lam x.A) B C -> A{x:=B} C; None se a cabeça não for um redex."""
    head, args = spine(sentence)
    if not isinstance(head, Lam) or not args:
        return None
    return apply_args(apply_subst(head.body, {head.var: args[0]}), args[1:])


def sub_instances(sentence, terms):
    """Para A sub B e o vetor C, devolve (A C, B C)."""
    if not isinstance(sentence, Subset):
        raise TypeMismatch(f"esperada uma inclusão: {print_term(sentence)}")
    arity = sentence.left.type.args
    if len(terms) != len(arity):
        raise TypeMismatch(f"vetor de {len(terms)} termos para inclusão de aridade {len(arity)}")
    for term, ty in zip(terms, arity):
        if term.type != ty:
            raise TypeMismatch(f"termo de tipo {term.type} onde se esperava {ty}")
    return apply_args(sentence.left, terms), apply_args(sentence.right, terms)


def extends(concl, new):
    """Premissa cumulativa: conclusão mais as sentenças novas."""
    return concl.union(new)


def _premise_problem(concl, prem, principal, new):
    new = frozenset(new)
    allowed = concl.members | new
    required = (concl.members - {principal}) | new
    extra = prem.members - allowed
    if extra:
        return f"premissa contém sentenças não justificadas: {sorted(s.key for s in extra)[:3]}"
    missing = required - prem.members
    if missing:
        return f"premissa perdeu sentenças: {sorted(s.key for s in missing)[:3]}"
    return None


def _constant_problem(const, sig):
    if const.name.startswith(RESERVED_PREFIX):
        return None
    if not sig.has(const.name):
        return f"constante não declarada: {const.name}"
    if sig.type_of_constant(const.name) != const.ty:
        return f"constante {const.name} com tipo divergente da assinatura"
    return None


# --- Verificação de um nó ---

def _check_node(node, sig):
    rule, data, concl = node.rule, node.data, node.conclusion
    if rule in DERIVED_RULES:
        return f"regra derivada {rule.value} deve ser expandida antes da verificação"
    if len(node.premises) != PREMISE_COUNT[rule]:
        return f"{rule.value} espera {PREMISE_COUNT[rule]} premissas, recebeu {len(node.premises)}"

    if rule is RuleId.W:
        if not node.premises[0].conclusion.issubset(concl):
            return "W: premissa não está contida na conclusão"
        return None

    if rule is RuleId.BOTTOM_L:
        if SignedSentence(Sign.L, BOTTOM) not in concl:
            return "BottomL: L:bot ausente da conclusão"
        return None

    p = data.principal
    if p is None:
        return f"{rule.value}: sentença principal ausente"
    if p not in concl:
        return f"{rule.value}: principal {p.key} não está na conclusão"

    if rule is RuleId.AXIOM:
        phi = p.sentence
        if SignedSentence(Sign.L, phi) not in concl or SignedSentence(Sign.R, phi) not in concl:
            return "Axiom: a fórmula não aparece dos dois lados"
        return None

    if rule in (RuleId.LAM_L, RuleId.LAM_R):
        expected = Sign.L if rule is RuleId.LAM_L else Sign.R
        if p.sign is not expected:
            return f"{rule.value}: sinal incorreto"
        try:
            reduct = lam_reduct(p.sentence)
        except CaptureError as exc:
            return f"{rule.value}: condição 'livre para' violada ({exc})"
        if reduct is None:
            return f"{rule.value}: principal não tem redex na cabeça"
        return _premise_problem(concl, node.premises[0].conclusion, p, [SignedSentence(expected, reduct)])

    if rule is RuleId.SUB_L:
        if p.sign is not Sign.L:
            return "SubL: principal deve ser L"
        for term in data.terms:
            if not is_closed(term):
                return "SubL: vetor de instanciação com termo aberto"
            for const in constants_of(term):
                problem = _constant_problem(const, sig)
                if problem:
                    return f"SubL: {problem}"
        try:
            left, right = sub_instances(p.sentence, data.terms)
        except TypeMismatch as exc:
            return f"SubL: {exc}"
        problem = _premise_problem(concl, node.premises[0].conclusion, p, [SignedSentence(Sign.R, left)])
        if problem:
            return f"SubL (primeira premissa): {problem}"
        problem = _premise_problem(concl, node.premises[1].conclusion, p, [SignedSentence(Sign.L, right)])
        if problem:
            return f"SubL (segunda premissa): {problem}"
        return None

    if rule is RuleId.SUB_R:
        if p.sign is not Sign.R:
            return "SubR: principal deve ser R"
        used = {c.name for c in concl.constants}
        names = []
        for term in data.terms:
            if not isinstance(term, Const):
                return "SubR: testemunhas devem ser constantes"
            if term.name in used:
                return f"SubR: constante {term.name} não é nova (frescor)"
            problem = _constant_problem(term, sig)
            if problem:
                return f"SubR: {problem}"
            names.append(term.name)
        if len(set(names)) != len(names):
            return "SubR: constantes repetidas"
        try:
            left, right = sub_instances(p.sentence, data.terms)
        except TypeMismatch as exc:
            return f"SubR: {exc}"
        new = [SignedSentence(Sign.L, left), SignedSentence(Sign.R, right)]
        return _premise_problem(concl, node.premises[0].conclusion, p, new)

    return f"regra desconhecida {rule}"


def check_proof(proof, sig):
    """Valida cada nó contra o esquema da sua regra básica (percurso iterativo)."""
    for const in proof.conclusion.constants:
        problem = _constant_problem(const, sig)
        if problem:
            return Verdict(False, f"conclusão: {problem}", ())
    stack = [(proof, ())]
    checked = 0
    while stack:
        node, path = stack.pop()
        problem = _check_node(node, sig)
        if problem:
            logger.debug(f"Prova rejeitada em {path}: {problem}")
            return Verdict(False, problem, path)
        checked += 1
        for i in reversed(range(len(node.premises))):
            stack.append((node.premises[i], path + (i,)))
    logger.debug(f"Prova válida: {checked} nós verificados")
    return Verdict(True, "", ())


def weaken(proof, target):
    """Enfraquecimento: um nó W sobre a prova, se a conclusão crescer."""
    if proof.conclusion == target:
        return proof
    if not proof.conclusion.issubset(target):
        raise ITLError("enfraquecimento exige conclusão contida no alvo")
    return Proof(target, RuleId.W, (proof,))


def proof_nodes(proof):
    count, stack = 0, [proof]
    while stack:
        node = stack.pop()
        count += 1
        stack.extend(node.premises)
    return count


def proof_rules(proof):
    rules, stack = [], [proof]
    while stack:
        node = stack.pop()
        rules.append(node.rule)
        stack.extend(node.premises)
    return rules


# --- Teorias ---

@dataclass(frozen=True)
class SchemeGenerator:
    """Esquema de axiomas: build produz a instância; candidates propõe tuplas."""

    name: str
    build: Callable[[Tuple[Term, ...]], Term]
    candidates: Callable[[Sequence[Term]], Iterable[Tuple[Term, ...]]]


@dataclass(frozen=True)
class Theory:
    name: str
    axioms: Tuple[Term, ...] = ()
    generators: Tuple[SchemeGenerator, ...] = ()
    signature: Optional[Signature] = None

    def generator(self, name):
        for gen in self.generators:
            if gen.name == name:
                return gen
        raise ITLError(f"teoria {self.name} não tem o esquema {name}")

    def union(self, other):
        axioms = tuple(dict.fromkeys(self.axioms + other.axioms))
        names = {g.name for g in self.generators}
        generators = self.generators + tuple(g for g in other.generators if g.name not in names)
        if self.signature is None:
            sig = other.signature
        elif other.signature is None:
            sig = self.signature
        else:
            sig = self.signature.union(other.signature)
        return Theory(f"{self.name}+{other.name}", axioms, generators, sig)

    def requests_for(self, terms):
        """Pedidos de instância sugeridos pelos termos fechados dados."""
        requests = []
        for gen in self.generators:
            for tup in gen.candidates(terms):
                requests.append((gen.name, tuple(tup)))
        return requests


EMPTY_THEORY = Theory("vazia")


def _check_instance(sentence, origin):
    if sentence.type != PROP:
        raise TypeMismatch(f"{origin}: instância de tipo {sentence.type}")
    if not is_closed(sentence):
        raise TypeMismatch(f"{origin}: instância não fechada {print_term(sentence)}")
    return sentence


def theory_instances(th, request):
    """Axiomas fixos, depois as instâncias pedidas (deterministicamente, sem repetição)."""
    result = [_check_instance(ax, th.name) for ax in th.axioms]
    seen = set(result)
    for gen_name, tup in request:
        gen = th.generator(gen_name)
        instance = _check_instance(gen.build(tuple(tup)), gen.name)
        if instance not in seen:
            seen.add(instance)
            result.append(instance)
    return result
