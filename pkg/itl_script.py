#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Roteiros de prova: passos manuais com regras derivadas e fechamento das
folhas por busca limitada. O resultado é expandido para regras básicas e
conferido por check_proof antes de ser aceito.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional

from config import FRESH_CONSTANT_PREFIX
from itl_calculus import Proof, RuleData, RuleId, check_proof, lam_reduct, sub_instances
from itl_derived import (
    all_l_premise, all_r_premise, derived_node, eq_l_premise, expand_derived, forall_parts,
    imp_parts,
)
from itl_printer import print_term
from itl_prover import ProofFound, SearchBudget, closing_leaf, prove
from itl_sequent import Sequent, Sign, SignedSentence
from itl_sugar import desugar, fresh_name
from itl_syntax import And, Const, Eq, ITLError, Imp, Not, Subset, substitute

logger = logging.getLogger(__name__)


class ScriptError(ITLError):
    """Passo de roteiro inaplicável ou roteiro incompleto."""


@dataclass
class _Node:
    sequent: Sequent
    rule: Optional[RuleId] = None
    data: RuleData = field(default_factory=RuleData)
    children: List["_Node"] = field(default_factory=list)
    proof: Optional[Proof] = None


class ProofScript:
    """Árvore de prova parcial; os passos atuam na folha aberta de índice 'at'."""

    def __init__(self, goal, sig, budget=None):
        self.sig = sig
        self.budget = budget or SearchBudget()
        self.root = _Node(goal)
        self._open: List[_Node] = [self.root]
        self._used = {n for n, _ in sig.constants} | {c.name for c in goal.constants}

    # --- estado ---

    @property
    def open_goals(self):
        return [node.sequent for node in self._open]

    @property
    def done(self):
        return not self._open

    def goal(self, at=0):
        return self._leaf(at).sequent

    def _leaf(self, at):
        try:
            return self._open[at]
        except IndexError:
            raise ScriptError(f"não há objetivo aberto de índice {at}") from None

    def fresh(self, ty):
        c = Const(fresh_name(FRESH_CONSTANT_PREFIX, self._used), ty)
        self._used.add(c.name)
        return c

    def _member(self, node, sign, sentence):
        member = SignedSentence(sign, sentence)
        if member not in node.sequent:
            raise ScriptError(f"{member.key} não está no objetivo")
        return member

    def _expand(self, at, rule, premises, data):
        node = self._leaf(at)
        node.rule = rule
        node.data = data
        node.children = [_Node(seq) for seq in premises]
        self._open[at:at + 1] = node.children
        return list(premises)

    # --- passos ---

    def imp_r(self, sentence, at=0):
        node = self._leaf(at)
        p = self._member(node, Sign.R, sentence)
        left, right = imp_parts(p.sentence)
        premise = node.sequent.add(SignedSentence(Sign.L, left)).add(SignedSentence(Sign.R, right))
        return self._expand(at, RuleId.IMP_R, [premise], RuleData(principal=p))

    def imp_l(self, sentence, at=0):
        """Dois novos objetivos: R:A (primeiro) e L:B."""
        node = self._leaf(at)
        p = self._member(node, Sign.L, sentence)
        left, right = imp_parts(p.sentence)
        premises = [node.sequent.add(SignedSentence(Sign.R, left)),
                    node.sequent.add(SignedSentence(Sign.L, right))]
        return self._expand(at, RuleId.IMP_L, premises, RuleData(principal=p))

    def all_r(self, sentence, at=0):
        node = self._leaf(at)
        p = self._member(node, Sign.R, sentence)
        x, _ = forall_parts(p.sentence)
        c = self.fresh(x.ty)
        self._expand(at, RuleId.ALL_R, [all_r_premise(node.sequent, p, c)], RuleData(principal=p, terms=(c,)))
        return c

    def all_l(self, sentence, witness, at=0):
        """Instancia L:forall x phi; devolve a instância acrescentada."""
        node = self._leaf(at)
        p = self._member(node, Sign.L, sentence)
        witness = desugar(witness)
        premise = all_l_premise(node.sequent, p, witness)
        self._expand(at, RuleId.ALL_L, [premise], RuleData(principal=p, terms=(witness,)))
        x, phi = forall_parts(p.sentence)
        return substitute(phi, x, witness)

    def all_l_many(self, sentence, witnesses, at=0):
        current = desugar(sentence)
        for witness in witnesses:
            current = self.all_l(current, witness, at)
        return current

    def eq_l(self, a, b, context, hole, at=0):
        """Com A=B (ou B=A) à esquerda, troca o objetivo R:phi[B] por R:phi[A]."""
        node = self._leaf(at)
        if not any(SignedSentence(Sign.L, eq) in node.sequent for eq in (Eq(a, b), Eq(b, a))):
            raise ScriptError("EqL: a equação não está à esquerda")
        premise = eq_l_premise(node.sequent, a, hole, context)
        data = RuleData(terms=(desugar(a), desugar(b)), context=desugar(context), hole=hole)
        return self._expand(at, RuleId.EQ_L, [premise], data)

    def sub_l(self, sentence, terms=(), at=0):
        node = self._leaf(at)
        p = self._member(node, Sign.L, sentence)
        terms = tuple(desugar(t) for t in terms)
        left, right = sub_instances(p.sentence, terms)
        premises = [node.sequent.add(SignedSentence(Sign.R, left)),
                    node.sequent.add(SignedSentence(Sign.L, right))]
        return self._expand(at, RuleId.SUB_L, premises, RuleData(principal=p, terms=terms))

    def lam(self, sentence, sign, at=0):
        node = self._leaf(at)
        p = self._member(node, sign, sentence)
        reduct = lam_reduct(p.sentence)
        if reduct is None:
            raise ScriptError(f"sem redex na cabeça de {p.key}")
        rule = RuleId.LAM_L if sign is Sign.L else RuleId.LAM_R
        return self._expand(at, rule, [node.sequent.add(SignedSentence(sign, reduct))], RuleData(principal=p))

    def conj_l(self, left, right, at=0):
        """L:A & B vira L:A e L:B no mesmo objetivo."""
        a, b = desugar(left), desugar(right)
        self.imp_l(And(a, b), at)
        if not self.close(at + 1):
            raise ScriptError("conjunção: ramo L:bot não fechou")
        self.imp_r(Imp(a, Not(b)), at)
        self.imp_r(Not(b), at)

    def keep(self, members, at=0):
        """Enfraquecimento: o objetivo passa a ter só os membros dados."""
        node = self._leaf(at)
        premise = Sequent.of(members)
        if not premise.issubset(node.sequent):
            raise ScriptError("keep: membros fora do objetivo")
        self._expand(at, RuleId.W, [premise], RuleData())
        return premise

    def propositional(self, at=0):
        """Descarta inclusões de tipo superior no topo (quantificadores já usados)."""
        node = self._leaf(at)
        members = [s for s in node.sequent.ordered
                   if not (isinstance(s.sentence, Subset) and s.sentence.left.type.args)]
        return self.keep(members, at)

    def close(self, at=0):
        """Axiom ou BottomL quando aplicáveis diretamente."""
        node = self._leaf(at)
        proof = closing_leaf(node.sequent)
        if proof is None:
            return False
        node.proof = proof
        del self._open[at]
        return True

    def auto(self, at=0, budget=None):
        node = self._leaf(at)
        if self.close(at):
            return True
        outcome = prove(node.sequent, self.sig, budget or self.budget)
        if not isinstance(outcome, ProofFound):
            logger.info(f"Busca não fechou o objetivo {at}: {type(outcome).__name__}")
            return False
        node.proof = outcome.proof
        del self._open[at]
        return True

    def auto_all(self, budget=None):
        """Tenta fechar todas as folhas abertas; as que resistirem continuam abertas."""
        at = 0
        while at < len(self._open):
            if not self.auto(at, budget):
                at += 1
        return self.done

    # --- resultado ---

    def _build(self, node):
        if node.proof is not None:
            return node.proof
        if node.rule is None:
            raise ScriptError("roteiro com objetivos abertos")
        premises = [self._build(child) for child in node.children]
        d = node.data
        return derived_node(node.sequent, node.rule, premises, d.principal, d.terms, d.context, d.hole)

    def build(self):
        if self._open:
            shown = "; ".join(", ".join(s.key for s in seq.ordered[:3]) for seq in self.open_goals[:2])
            raise ScriptError(f"{len(self._open)} objetivos abertos: {shown}")
        return self._build(self.root)

    def certify(self):
        """Prova só com regras básicas, aceita por check_proof."""
        proof = expand_derived(self.build())
        verdict = check_proof(proof, self.sig)
        if not verdict:
            raise ScriptError(f"roteiro rejeitado pelo verificador em {verdict.path}: {verdict.reason}")
        logger.info(f"Roteiro certificado para {print_term(self.root.sequent.ordered[-1].sentence)}")
        return proof
