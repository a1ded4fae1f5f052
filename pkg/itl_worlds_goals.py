#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Corpus de objetivos da camada de mundos.

Cada objetivo é um sequente (dicas à esquerda, enunciado à direita) com um
modo de verificação:
  prove           busca automática deve achar a prova;
  check-script    roteiro manual, fechado por busca e certificado pelo kernel;
  model-validate  o modelo de mundos satisfaz as instâncias e o enunciado.

As dicas dos roteiros D, 4 e 5 são instâncias (numa das direções) de W1-W4 e
dos enunciados de distribuição, já na forma em que o roteiro as consome.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from itl_calculus import Proof
from itl_derived import forall_parts, imp_parts
from itl_prover import ProofFound, SearchBudget, prove
from itl_script import ProofScript, ScriptError
from itl_sequent import Sequent, Sign, SignedSentence
from itl_sugar import WORLD_TYPE, desugar, forall_many, head_beta
from itl_syntax import (
    And, App, BOTTOM, Box, Diamond, Forall, ITLError, Iff, Imp, Not, OMEGA, PROP, Term, Top, Var,
    substitute,
)
from itl_worlds import (
    CORPUS_SIGNATURE, belief_relation, conjunction_statement, existential_statement,
    negation_statement, omega_equivalence_statements, requested_instances, seriality,
    universal_statement, w1_axiom, w2_instance,
)
from itl_worlds_model import validate_statement, worlds_model

logger = logging.getLogger(__name__)

MODES = ("prove", "check-script", "model-validate")

SIG = CORPUS_SIGNATURE
P_ATOM = SIG.const("p")
Q_ATOM = SIG.const("q")
PRED = SIG.const("P")
JOHN = SIG.const("john")
BELIEVE = SIG.const("believe")
BELIEF = desugar(belief_relation(JOHN, BELIEVE))

# variáveis das dicas
U = Var("u", WORLD_TYPE)
V = Var("v", WORLD_TYPE)
X = Var("r", PROP)


@dataclass(frozen=True)
class WorldGoal:
    name: str
    mode: str
    statement: Term
    hints: Tuple[Term, ...] = ()
    postulates: Tuple[str, ...] = ("worlds",)
    description: str = ""
    script: Optional[Callable[[ProofScript], None]] = None

    @property
    def sequent(self):
        members = [SignedSentence(Sign.L, h) for h in self.hints]
        return Sequent.of(members + [SignedSentence(Sign.R, self.statement)])


@dataclass(frozen=True)
class GoalResult:
    name: str
    mode: str
    passed: bool
    detail: str = ""
    proof: Optional[Proof] = None


# --- Blocos ---

def _om(t):
    return App(OMEGA, t)


def _believes(t):
    return App(App(BELIEVE, JOHN), t)


def _acc(t):
    """R<t>: forall p ((B p <-> t(B p)) & (B p -> t p))."""
    return head_beta(App(BELIEF, t))


def _belief_parts(world, prop):
    """Corpo de R<world> em prop e as suas duas metades."""
    iff = desugar(Iff(_believes(prop), App(world, _believes(prop))))
    imp = desugar(Imp(_believes(prop), App(world, prop)))
    return desugar(And(iff, imp)), iff, imp


def _discharge(s, implication, at=0):
    """L:A -> B com A já à esquerda; deixa L:B no objetivo."""
    _, consequent = imp_parts(desugar(implication))
    s.imp_l(implication, at)
    if not s.close(at):
        raise ScriptError("antecedente não estava disponível")
    return consequent


def _use(s, implication, at=0):
    """L:A -> B com B já à direita; deixa R:A no objetivo."""
    antecedent, _ = imp_parts(desugar(implication))
    s.imp_l(implication, at)
    if not s.close(at + 1):
        raise ScriptError("consequente não fechou o ramo")
    return antecedent


def _instantiate(s, uses, at=0):
    for hint, witnesses in uses:
        s.all_l_many(hint, witnesses, at)


def _finish(s, at=0):
    s.propositional(at)
    if not s.auto(at):
        raise ScriptError("folha proposicional não fechou")


# --- Distribuição (validação por modelo) ---

def _model_goal(name, statement, description):
    hints = tuple(requested_instances([statement], actual_world=True))
    return WorldGoal(name, "model-validate", statement, hints, ("worlds", "w0"), description)


def distribution_goals():
    x = Var("x", PRED.ty.args[0])
    refl, sym, trans = omega_equivalence_statements()
    return [
        _model_goal("a-p", negation_statement(P_ATOM), "w(~p) <-> ~(w p)"),
        _model_goal("a-q", negation_statement(Q_ATOM), "w(~q) <-> ~(w q)"),
        _model_goal("b", conjunction_statement(P_ATOM, Q_ATOM), "w(p & q) <-> (w p & w q)"),
        _model_goal("c", universal_statement(x, App(PRED, x)), "w(forall x P x) <-> forall x w(P x)"),
        _model_goal("d", existential_statement(x, App(PRED, x)), "w(exists x P x) <-> exists x w(P x)"),
        _model_goal("omega-refl", refl, "acessibilidade universal reflexiva"),
        _model_goal("omega-sym", sym, "acessibilidade universal simétrica"),
        _model_goal("omega-trans", trans, "acessibilidade universal transitiva"),
    ]


# --- Objetivos com prova ---

def box_top_goal():
    statement = Box(OMEGA, Top())
    hints = (w1_axiom(), w2_instance(BOTTOM, BOTTOM))
    return WorldGoal("box-top", "prove", statement, hints, description="[Omega]top")


def negation_script_goal():
    statement = negation_statement(P_ATOM)
    hints = (w1_axiom(), w2_instance(P_ATOM, BOTTOM))

    def script(s):
        c = s.all_r(statement)
        _instantiate(s, [(hints[0], [c]), (hints[1], [c])])
        _finish(s)

    return WorldGoal("a-p-script", "check-script", statement, hints, description="w(~p) <-> ~(w p)",
                     script=script)


def seriality_goal():
    """D: [R]p -> <R>p sob a estipulação de serialidade."""
    box_p = desugar(Box(BELIEF, P_ATOM))
    box_not_p = desugar(Box(BELIEF, Not(P_ATOM)))
    statement = desugar(Imp(box_p, Diamond(BELIEF, P_ATOM)))
    hints = (w1_axiom(), w2_instance(P_ATOM, BOTTOM), seriality(BELIEF))

    def script(s):
        s.imp_r(statement)
        s.imp_r(desugar(Diamond(BELIEF, P_ATOM)))
        all_neg = _use(s, hints[2])
        c = s.all_r(all_neg)
        x, body = forall_parts(desugar(all_neg))
        s.imp_r(substitute(body, x, c))
        _instantiate(s, [(box_p, [c]), (box_not_p, [c]), (hints[0], [c]), (hints[1], [c])])
        _finish(s)

    return WorldGoal("D", "check-script", statement, hints, ("worlds", "serial"),
                     "[R]p -> <R>p para a crença de john", script)


def transitivity_goal():
    """4: [R]p -> [R][R]p."""
    phi = desugar(Box(BELIEF, P_ATOM))
    box_phi = desugar(Box(BELIEF, phi))
    statement = desugar(Imp(phi, box_phi))
    v0, body = forall_parts(phi)
    body_v = substitute(body, v0, V)
    a_v, vp = imp_parts(body_v)
    r_v = _acc(V)
    rbody, riff, rimp = _belief_parts(V, X)
    bx = _believes(X)
    hints = tuple(desugar(h) for h in (
        forall_many([U], Imp(_om(U), Imp(Forall(V, App(U, body_v)), App(U, phi)))),
        forall_many([V, U], Imp(_om(U), Imp(Imp(App(U, a_v), App(U, vp)), App(U, body_v)))),
        forall_many([V, U], Imp(_om(U), Imp(App(U, a_v), App(U, _om(V))))),
        forall_many([V, U], Imp(_om(U), Imp(App(U, a_v), App(U, r_v)))),
        forall_many([U, V], Imp(_om(U), Imp(App(U, _om(V)), _om(V)))),
        forall_many([U, V], Imp(And(_om(U), _om(V)), Imp(vp, App(U, vp)))),
        forall_many([V, X, U], Imp(_om(U), Imp(App(U, r_v), App(U, rbody)))),
        forall_many([V, X, U], Imp(_om(U), Imp(App(U, rbody), App(U, riff)))),
        forall_many([V, X, U], Imp(_om(U), Imp(App(U, rbody), App(U, rimp)))),
        forall_many([V, X, U], Imp(_om(U), Imp(App(U, riff), Iff(App(U, bx), App(U, App(V, bx)))))),
        forall_many([V, X, U], Imp(_om(U), Imp(App(U, rimp), Imp(App(U, bx), App(U, App(V, X)))))),
        forall_many([U, V, X], Imp(And(_om(U), _om(V)), Iff(App(U, App(V, bx)), App(V, bx)))),
        forall_many([U, V, X], Imp(And(_om(U), _om(V)), Imp(App(U, App(V, X)), App(V, X)))),
    ))

    def script(s):
        s.imp_r(statement)
        u = s.all_r(box_phi)
        v1, outer = forall_parts(box_phi)
        s.imp_r(substitute(outer, v1, u))
        s.conj_l(_om(u), _acc(u))
        step = _discharge(s, s.all_l(hints[0], u))
        c = s.all_r(_use(s, step))
        step = _discharge(s, s.all_l_many(hints[1], [c, u]))
        s.imp_r(_use(s, step))
        phi_c = s.all_l(phi, c)
        s.imp_l(phi_c)
        # ramo L:c p
        _instantiate(s, [(hints[2], [c, u]), (hints[4], [u, c]), (hints[5], [u, c])], at=1)
        _finish(s, at=1)
        # ramo R:Omega c & R<c>
        a_c = imp_parts(phi_c)[0]
        s.imp_r(a_c)
        s.imp_l(a_c.left)
        _instantiate(s, [(hints[2], [c, u]), (hints[4], [u, c])])
        _finish(s)
        r_c = _acc(c)
        _use(s, Not(r_c))
        d = s.all_r(r_c)
        s.all_l(_acc(u), d)
        _instantiate(s, [
            (hints[2], [c, u]), (hints[3], [c, u]), (hints[4], [u, c]),
            (hints[6], [c, d, u]), (hints[7], [c, d, u]), (hints[8], [c, d, u]),
            (hints[9], [c, d, u]), (hints[10], [c, d, u]),
            (hints[11], [u, c, d]), (hints[12], [u, c, d]),
        ])
        _finish(s)

    return WorldGoal("4", "check-script", statement, hints, ("worlds", "belief"),
                     "[R]p -> [R][R]p para a crença de john", script)


def euclidean_goal():
    """5: <R>p -> [R]<R>p."""
    psi = desugar(Diamond(BELIEF, P_ATOM))
    box_psi = desugar(Box(BELIEF, psi))
    statement = desugar(Imp(psi, box_psi))
    xn = psi.left
    v0, body = forall_parts(xn)
    body_v = substitute(body, v0, V)
    a_v, v_not_p = imp_parts(body_v)
    r_v = _acc(V)
    rbody, riff, rimp = _belief_parts(V, X)
    bx = _believes(X)
    hints = tuple(desugar(h) for h in (
        forall_many([U], Imp(_om(U), Imp(Not(App(U, xn)), App(U, psi)))),
        forall_many([U, V], Imp(_om(U), Imp(App(U, xn), App(U, body_v)))),
        forall_many([V, U], Imp(_om(U), Imp(App(U, body_v), Imp(App(U, a_v), App(U, v_not_p))))),
        forall_many([U, V], Imp(And(_om(U), _om(V)), Imp(App(U, v_not_p), v_not_p))),
        forall_many([V, U], Imp(_om(U), Imp(And(App(U, _om(V)), App(U, r_v)), App(U, a_v)))),
        forall_many([U, V], Imp(_om(U), Imp(_om(V), App(U, _om(V))))),
        forall_many([V, U], Imp(_om(U), Imp(Forall(X, App(U, rbody)), App(U, r_v)))),
        forall_many([V, X, U], Imp(_om(U), Imp(And(App(U, riff), App(U, rimp)), App(U, rbody)))),
        forall_many([V, X, U], Imp(_om(U), Imp(Iff(App(U, bx), App(U, App(V, bx))), App(U, riff)))),
        forall_many([V, X, U], Imp(_om(U), Imp(Imp(App(U, bx), App(U, App(V, X))), App(U, rimp)))),
        forall_many([U, V, X], Imp(And(_om(U), _om(V)), Iff(App(U, App(V, bx)), App(V, bx)))),
        forall_many([U, V, X], Imp(And(_om(U), _om(V)), Iff(App(U, App(V, X)), App(V, X)))),
    ))

    def script(s):
        s.imp_r(statement)
        u = s.all_r(box_psi)
        v1, outer = forall_parts(box_psi)
        s.imp_r(substitute(outer, v1, u))
        s.conj_l(_om(u), _acc(u))
        step = _discharge(s, s.all_l(hints[0], u))
        s.imp_r(_use(s, step))
        _use(s, psi)
        c = s.all_r(xn)
        s.imp_r(substitute(body, v0, c))
        s.conj_l(_om(c), _acc(c))
        step = _discharge(s, s.all_l_many(hints[6], [c, u]))
        s.imp_l(step)
        # ramo L:u(R<c>)
        _instantiate(s, [
            (hints[1], [u, c]), (hints[2], [c, u]), (hints[3], [u, c]),
            (hints[4], [c, u]), (hints[5], [u, c]),
        ], at=1)
        _finish(s, at=1)
        # ramo R:forall r u(corpo de R<c>)
        all_r = imp_parts(step)[0]
        d = s.all_r(all_r)
        s.all_l(_acc(u), d)
        s.all_l(_acc(c), d)
        _instantiate(s, [
            (hints[7], [c, d, u]), (hints[8], [c, d, u]), (hints[9], [c, d, u]),
            (hints[10], [u, c, d]), (hints[11], [u, c, d]),
        ])
        _finish(s)

    return WorldGoal("5", "check-script", statement, hints, ("worlds", "belief"),
                     "<R>p -> [R]<R>p para a crença de john", script)


def goal_corpus():
    return distribution_goals() + [
        box_top_goal(), negation_script_goal(), seriality_goal(), transitivity_goal(), euclidean_goal(),
    ]


# --- Execução ---

def corpus_model(goals):
    sentences = []
    for goal in goals:
        if goal.mode == "model-validate":
            sentences.extend(goal.hints)
            sentences.append(goal.statement)
    return worlds_model(sentences)


def run_goal(goal, budget=None, model=None):
    budget = budget or SearchBudget()
    try:
        if goal.mode == "model-validate":
            model = model or corpus_model([goal])
            check = validate_statement(model, goal.statement, goal.hints)
            detail = "" if check.ok else check.failed[0]
            return GoalResult(goal.name, goal.mode, check.ok, detail)
        if goal.mode == "prove":
            outcome = prove(goal.sequent, SIG, budget)
            if isinstance(outcome, ProofFound):
                return GoalResult(goal.name, goal.mode, True, proof=outcome.proof)
            return GoalResult(goal.name, goal.mode, False, type(outcome).__name__)
        if goal.mode == "check-script":
            s = ProofScript(goal.sequent, SIG, budget)
            goal.script(s)
            s.auto_all()
            return GoalResult(goal.name, goal.mode, True, proof=s.certify())
    except ITLError as exc:
        logger.warning(f"Objetivo {goal.name} falhou: {exc}")
        return GoalResult(goal.name, goal.mode, False, str(exc))
    raise ITLError(f"modo de verificação desconhecido: {goal.mode}")


def run_corpus(goals=None, budget=None, names=()):
    goals = list(goals or goal_corpus())
    if names:
        goals = [g for g in goals if g.name in names]
    model = corpus_model(goals) if any(g.mode == "model-validate" for g in goals) else None
    results = [run_goal(g, budget, model) for g in goals]
    passed = sum(r.passed for r in results)
    logger.info(f"Corpus de mundos: {passed}/{len(results)} objetivos aprovados")
    return results


def results_summary(results):
    summary = {mode: 0 for mode in MODES}
    for r in results:
        if r.passed:
            summary[r.mode] += 1
    return summary
