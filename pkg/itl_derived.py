#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Expansão das regras derivadas (TopR, ImpL, ImpR, AllL, AllR, EqL, EqR)
em provas que usam só as regras básicas.

Cada expansão é construída de forma cumulativa a partir da conclusão do nó
derivado e liga-se à premissa derivada por um nó W quando necessário.
"""

from __future__ import annotations

import logging

from config import FRESH_CONSTANT_PREFIX
from itl_calculus import Proof, RuleData, RuleId, extends, lam_reduct, sub_instances
from itl_sequent import Sign, SignedSentence
from itl_sugar import TOP_EXPANDED, desugar, fresh_name
from itl_syntax import (
    App, ComplexType, Const, Eq, ITLError, Lam, Not, Subset, free_vars, is_closed, is_free_for,
    substitute,
)

logger = logging.getLogger(__name__)


class ExpansionError(ITLError):
    """Dados de uma regra derivada incompatíveis com a sua conclusão."""


# --- Blocos básicos ---

def _lam(sequent, principal, then):
    """LamL/LamR sobre o principal; 'then' recebe o sequente estendido."""
    reduct = lam_reduct(principal.sentence)
    if reduct is None:
        raise ExpansionError(f"sem redex na cabeça de {principal.key}")
    new = SignedSentence(principal.sign, reduct)
    rule = RuleId.LAM_L if principal.sign is Sign.L else RuleId.LAM_R
    premise = extends(sequent, [new])
    return Proof(sequent, rule, (then(premise, new),), RuleData(principal=principal))


def _sub_l(sequent, principal, terms, on_right, on_left):
    """SubL: on_right trata R:A C, on_left trata L:B C."""
    left, right = sub_instances(principal.sentence, terms)
    r_new = SignedSentence(Sign.R, left)
    l_new = SignedSentence(Sign.L, right)
    first = on_right(extends(sequent, [r_new]), r_new)
    second = on_left(extends(sequent, [l_new]), l_new)
    return Proof(sequent, RuleId.SUB_L, (first, second), RuleData(principal=principal, terms=tuple(terms)))


def _sub_r(sequent, principal, consts, then):
    left, right = sub_instances(principal.sentence, consts)
    l_new = SignedSentence(Sign.L, left)
    r_new = SignedSentence(Sign.R, right)
    premise = extends(sequent, [l_new, r_new])
    return Proof(sequent, RuleId.SUB_R, (then(premise, l_new, r_new),),
                 RuleData(principal=principal, terms=tuple(consts)))


def _bottom_l(sequent):
    return Proof(sequent, RuleId.BOTTOM_L)


def _axiom(sequent, sentence):
    principal = SignedSentence(Sign.L, sentence)
    if principal not in sequent or SignedSentence(Sign.R, sentence) not in sequent:
        raise ExpansionError("axioma esperado não fecha o sequente")
    return Proof(sequent, RuleId.AXIOM, (), RuleData(principal=principal))


def _connect(sequent, premise):
    """Liga a premissa derivada (já expandida) ao sequente cumulativo."""
    if premise.conclusion == sequent:
        return premise
    if not premise.conclusion.issubset(sequent):
        raise ExpansionError("premissa derivada não está contida no sequente da expansão")
    return Proof(sequent, RuleId.W, (premise,))


def _prove_top(sequent):
    """Fecha um sequente que contém R:top (bot sub bot)."""
    principal = SignedSentence(Sign.R, TOP_EXPANDED)
    return _sub_r(sequent, principal, (), lambda s, l_new, r_new: _bottom_l(s))


def fresh_constant(ty, sequent, avoid=()):
    used = {c.name for c in sequent.constants} | set(avoid)
    return Const(fresh_name(FRESH_CONSTANT_PREFIX, used), ty)


# --- Decomposição de fórmulas sem açúcar ---

def forall_parts(sentence):
    """(lam x.top) sub (lam x.phi) -> (x, phi)."""
    if (isinstance(sentence, Subset) and isinstance(sentence.left, Lam)
            and isinstance(sentence.right, Lam) and sentence.left.body == TOP_EXPANDED
            and sentence.left.var == sentence.right.var):
        return sentence.right.var, sentence.right.body
    raise ExpansionError("a fórmula não é uma quantificação universal")


# --- Expansões por regra ---

def _expand_top_r(node, premises, used):
    if SignedSentence(Sign.R, TOP_EXPANDED) not in node.conclusion:
        raise ExpansionError("TopR: R:top ausente")
    return _prove_top(node.conclusion)


def _principal(node, sign):
    p = node.data.principal
    if p is None or p.sign is not sign or p not in node.conclusion:
        raise ExpansionError(f"{node.rule.value}: principal ausente ou com sinal errado")
    if not isinstance(p.sentence, Subset):
        raise ExpansionError(f"{node.rule.value}: principal não é uma inclusão")
    return p


def _expand_imp_l(node, premises, used):
    p = _principal(node, Sign.L)
    return _sub_l(node.conclusion, p, (),
                  lambda s, new: _connect(s, premises[0]),
                  lambda s, new: _connect(s, premises[1]))


def _expand_imp_r(node, premises, used):
    p = _principal(node, Sign.R)
    return _sub_r(node.conclusion, p, (), lambda s, l_new, r_new: _connect(s, premises[0]))


def _expand_all_l(node, premises, used):
    p = _principal(node, Sign.L)
    x, phi = forall_parts(p.sentence)
    if len(node.data.terms) != 1:
        raise ExpansionError("AllL: exatamente uma testemunha")
    witness = desugar(node.data.terms[0])
    if witness.type != x.ty or not is_closed(witness):
        raise ExpansionError("AllL: testemunha mal tipada ou aberta")

    def instance_branch(s, new):
        return _lam(s, new, lambda s2, reduced: _connect(s2, premises[0]))

    def top_branch(s, new):
        return _lam(s, new, lambda s2, reduced: _prove_top(s2))

    return _sub_l(node.conclusion, p, (witness,), top_branch, instance_branch)


def _expand_all_r(node, premises, used):
    p = _principal(node, Sign.R)
    forall_parts(p.sentence)
    if len(node.data.terms) != 1 or not isinstance(node.data.terms[0], Const):
        raise ExpansionError("AllR: exatamente uma constante nova")
    c = node.data.terms[0]
    if c.name in {k.name for k in node.conclusion.constants}:
        raise ExpansionError(f"AllR: constante {c.name} não é nova")
    return _sub_r(node.conclusion, p, (c,),
                  lambda s, l_new, r_new: _lam(s, r_new, lambda s2, reduced: _connect(s2, premises[0])))


def _expand_eq_r(node, premises, used):
    if len(node.data.terms) != 1:
        raise ExpansionError("EqR: esperado o termo A")
    a = desugar(node.data.terms[0])
    principal = SignedSentence(Sign.R, Eq(a, a))
    if principal not in node.conclusion:
        raise ExpansionError("EqR: R:A=A ausente da conclusão")
    c = fresh_constant(ComplexType((a.type,)), node.conclusion, used)
    used.add(c.name)
    atom = App(c, a)

    def after_lam(s, reduced):
        return _sub_r(s, reduced, (), lambda s2, l_new, r_new: _axiom(s2, atom))

    return _sub_r(node.conclusion, principal, (c,),
                  lambda s, l_new, r_new: _lam(s, r_new, after_lam))


def _expand_eq_l(node, premises, used):
    data = node.data
    if len(data.terms) != 2 or data.context is None or data.hole is None:
        raise ExpansionError("EqL: esperados (A, B), contexto e variável marcada")
    a, b = (desugar(t) for t in data.terms)
    x, phi = data.hole, data.context
    if a.type != x.ty or b.type != x.ty:
        raise ExpansionError("EqL: tipos de A, B e da variável marcada diferem")
    if not free_vars(phi) <= {x}:
        raise ExpansionError("EqL: contexto com variáveis livres além da marcada")
    if not is_free_for(a, x, phi) or not is_free_for(b, x, phi):
        raise ExpansionError("EqL: A e B devem ser livres para x no contexto")
    phi = desugar(phi)
    phi_b = substitute(phi, x, b)
    if SignedSentence(Sign.R, phi_b) not in node.conclusion:
        raise ExpansionError("EqL: R:phi{x:=B} ausente da conclusão")
    forward = SignedSentence(Sign.L, Eq(a, b))
    backward = SignedSentence(Sign.L, Eq(b, a))
    if forward in node.conclusion:
        return _eq_l_forward(node.conclusion, forward, Lam(x, phi), phi_b, premises[0])
    if backward in node.conclusion:
        return _eq_l_backward(node.conclusion, backward, Lam(x, Not(phi)), phi_b, premises[0])
    raise ExpansionError("EqL: equação A=B ou B=A ausente da conclusão")


def _top_branch(s, new):
    return _lam(s, new, lambda s2, reduced: _prove_top(s2))


def _eq_l_forward(concl, equation, context, phi_b, premise):
    context = desugar(context)

    def instance_branch(s, new):
        def after_lam(s2, reduced):
            # L:(lam x.phi)A sub (lam x.phi)B
            def right_case(s3, r_new):
                return _lam(s3, r_new, lambda s4, red: _connect(s4, premise))

            def left_case(s3, l_new):
                return _lam(s3, l_new, lambda s4, red: _axiom(s4, phi_b))

            return _sub_l(s2, reduced, (), right_case, left_case)
        return _lam(s, new, after_lam)

    return _sub_l(concl, equation, (context,), _top_branch, instance_branch)


def _eq_l_backward(concl, equation, context, phi_b, premise):
    context = desugar(context)

    def instance_branch(s, new):
        def after_lam(s2, reduced):
            # L:(lam x.~phi)B sub (lam x.~phi)A
            def right_case(s3, r_new):
                # R:~phi[B] -> L:phi[B], R:bot
                return _lam(s3, r_new, lambda s4, red: _sub_r(
                    s4, red, (), lambda s5, l_new, r_bot: _axiom(s5, phi_b)))

            def left_case(s3, l_new):
                # L:~phi[A] -> R:phi[A] | L:bot
                return _lam(s3, l_new, lambda s4, red: _sub_l(
                    s4, red, (),
                    lambda s5, r_phi: _connect(s5, premise),
                    lambda s5, l_bot: _bottom_l(s5)))

            return _sub_l(s2, reduced, (), right_case, left_case)
        return _lam(s, new, after_lam)

    return _sub_l(concl, equation, (context,), _top_branch, instance_branch)


def _constant_names(proof):
    names, stack = set(), [proof]
    while stack:
        node = stack.pop()
        names |= {c.name for c in node.conclusion.constants}
        stack.extend(node.premises)
    return names


_EXPANDERS = {
    RuleId.TOP_R: _expand_top_r,
    RuleId.IMP_L: _expand_imp_l,
    RuleId.IMP_R: _expand_imp_r,
    RuleId.ALL_L: _expand_all_l,
    RuleId.ALL_R: _expand_all_r,
    RuleId.EQ_L: _expand_eq_l,
    RuleId.EQ_R: _expand_eq_r,
}


def expand_derived(proof):
    """Prova equivalente só com regras básicas e a mesma conclusão."""
    used = _constant_names(proof)
    done = {}
    stack = [(proof, False)]
    while stack:
        node, ready = stack.pop()
        if not ready:
            stack.append((node, True))
            for prem in node.premises:
                stack.append((prem, False))
            continue
        premises = [done[id(p)] for p in node.premises]
        expander = _EXPANDERS.get(node.rule)
        try:
            if expander is None:
                result = Proof(node.conclusion, node.rule, tuple(premises), node.data)
            else:
                result = expander(node, premises, used)
        except ExpansionError:
            raise
        except ITLError as exc:
            raise ExpansionError(f"{node.rule.value}: {exc}") from exc
        done[id(node)] = result
    logger.debug("Regras derivadas expandidas")
    return done[id(proof)]


# --- Construtores de nós derivados ---

def derived_node(conclusion, rule, premises=(),
                 principal=None, terms=(),
                 context=None, hole=None):
    return Proof(conclusion, rule, tuple(premises),
                 RuleData(principal=principal, terms=tuple(terms), context=context, hole=hole))


def all_l_premise(conclusion, principal, witness):
    x, phi = forall_parts(principal.sentence)
    return conclusion.add(SignedSentence(Sign.L, substitute(phi, x, witness)))


def all_r_premise(conclusion, principal, c):
    x, phi = forall_parts(principal.sentence)
    return conclusion.add(SignedSentence(Sign.R, substitute(phi, x, c)))


def eq_l_premise(conclusion, a, x, context):
    return conclusion.add(SignedSentence(Sign.R, substitute(desugar(context), x, desugar(a))))


def imp_parts(sentence):
    if not isinstance(sentence, Subset) or sentence.left.type.args:
        raise ExpansionError("a fórmula não é uma implicação")
    return sentence.left, sentence.right
