#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Camada de mundos: o predicado Omega, os axiomas W1-W4, o mundo atual w0,
os operadores box/dia e a relação de acessibilidade da crença.

Mundos são conjuntos de proposições (tipo <<>>) e Omega : <<<>>> diz quais
deles se comportam como mundos possíveis. W2 e W3 são esquemas: as instâncias
são pedidas a partir dos subtermos do objetivo, como os esquemas lambda do
fragmento.
"""

from __future__ import annotations

import logging

from config import ACTUAL_WORLD_NAME, INHABITANT_VARIABLE_PREFIX, WORLD_VARIABLE_PREFIX
from itl_calculus import SchemeGenerator, Theory, theory_instances
from itl_parser import parse_signature
from itl_sugar import WORLD_TYPE, desugar, fresh_name, forall_many, head_beta, variable_names
from itl_syntax import (
    And, App, BOTTOM, Box, Diamond, Exists, Forall, Iff, Imp, Lam, Not, OMEGA, PROP, Subset,
    TypeMismatch, Var, apply_args, free_vars, subterms,
)

logger = logging.getLogger(__name__)

WORLDS_SIGNATURE = parse_signature(f"""
const Omega : <<<>>>
const {ACTUAL_WORLD_NAME} : <<>>
""")

W0 = WORLDS_SIGNATURE.const(ACTUAL_WORLD_NAME)

# Assinatura usada pelo corpus de objetivos e pelo modelo de mundos
CORPUS_SIGNATURE = WORLDS_SIGNATURE.union(parse_signature("""
type e
const p : <>
const q : <>
const P : <e>
const k1 : e
const k2 : e
const believe : <e <>>
const john : e
"""))


def _world(avoid, hint=WORLD_VARIABLE_PREFIX):
    return Var(fresh_name(hint, avoid), WORLD_TYPE)


def _fresh_worlds(n, *terms):
    avoid = variable_names(*terms)
    result = []
    for _ in range(n):
        w = _world(avoid)
        avoid.add(w.name)
        result.append(w)
    return result


def _closure(term):
    return forall_many(sorted(free_vars(term), key=lambda v: (v.name, str(v.ty))), term)


# --- Axiomas ---

def w1_axiom():
    w = Var(f"{WORLD_VARIABLE_PREFIX}0", WORLD_TYPE)
    return Forall(w, Imp(App(OMEGA, w), Not(App(w, BOTTOM))))


def w2_instance(a, b):
    """forall w (Omega w -> (w(A sub B) <-> forall x (w(A x) -> w(B x)))); fecho universal se A, B forem abertos."""
    if a.type != b.type or not a.type.is_complex:
        raise TypeMismatch(f"W2: tipos {a.type} e {b.type} não formam uma inclusão")
    avoid = variable_names(a, b)
    w = _world(avoid)
    avoid.add(w.name)
    xs = []
    for ty in a.type.args:
        x = Var(fresh_name(INHABITANT_VARIABLE_PREFIX, avoid), ty)
        avoid.add(x.name)
        xs.append(x)
    pointwise = forall_many(xs, Imp(App(w, apply_args(a, xs)), App(w, apply_args(b, xs))))
    return _closure(Forall(w, Imp(App(OMEGA, w), Iff(App(w, Subset(a, b)), pointwise))))


def w3_instance(phi):
    """forall w w' ((Omega w & Omega w') -> (w(w' phi) <-> w' phi))."""
    if phi.type != PROP:
        raise TypeMismatch(f"W3: sentença de tipo {phi.type}")
    w, v = _fresh_worlds(2, phi)
    inner = App(v, phi)
    body = Imp(And(App(OMEGA, w), App(OMEGA, v)), Iff(App(w, inner), inner))
    return _closure(Forall(w, Forall(v, body)))


def w4_axiom():
    w, v = (Var(f"{WORLD_VARIABLE_PREFIX}{i}", WORLD_TYPE) for i in range(2))
    return Forall(w, Imp(App(OMEGA, w), Forall(v, Iff(App(OMEGA, v), App(w, App(OMEGA, v))))))


def actual_world_axioms():
    p = Var("p", PROP)
    return App(OMEGA, W0), Forall(p, Iff(App(W0, p), p))


def _world_arguments(terms):
    """Argumentos de aplicações cuja cabeça tem tipo <<>> (sentenças dentro de um mundo)."""
    seen = {}
    for term in terms:
        for sub in subterms(desugar(term)):
            if isinstance(sub, App) and sub.fun.type == WORLD_TYPE:
                seen.setdefault(sub.arg, None)
    return list(seen)


def _w2_candidates(terms):
    # inclusões abertas entram pelo fecho universal
    seen = set()
    for arg in _world_arguments(terms):
        for sub in subterms(arg):
            if isinstance(sub, Subset) and sub not in seen:
                seen.add(sub)
                yield (sub.left, sub.right)


def _w3_candidates(terms):
    seen = set()
    for arg in _world_arguments(terms):
        if isinstance(arg, App) and arg.fun.type == WORLD_TYPE and arg.arg not in seen:
            seen.add(arg.arg)
            yield (arg.arg,)


def worlds_theory(actual_world=False, extra_axioms=()):
    axioms = [w1_axiom(), w4_axiom()]
    if actual_world:
        axioms.extend(actual_world_axioms())
    axioms.extend(extra_axioms)
    return Theory(
        "worlds",
        axioms=tuple(axioms),
        generators=(
            SchemeGenerator("W2", lambda tup: w2_instance(*tup), _w2_candidates),
            SchemeGenerator("W3", lambda tup: w3_instance(*tup), _w3_candidates),
        ),
        signature=WORLDS_SIGNATURE,
    )


def world_axiom_instances(requests=(), actual_world=False):
    """W1, W4, (w0), depois as instâncias pedidas de W2/W3 na ordem dada."""
    instances = theory_instances(worlds_theory(actual_world), requests)
    logger.debug(f"{len(instances)} axiomas de mundos gerados")
    return instances


def requested_instances(sentences, actual_world=False):
    """Instâncias sugeridas pelos próprios subtermos das sentenças."""
    theory = worlds_theory(actual_world)
    return theory_instances(theory, theory.requests_for(list(sentences)))


# --- Operadores modais ---

def box(rel, phi):
    return Box(rel, phi)


def dia(rel, phi):
    return Diamond(rel, phi)


def belief_relation(agent, believe):
    """Mundos compatíveis com o que o agente acredita, vistos do mundo de avaliação."""
    w, p = Var("w", WORLD_TYPE), Var("p", PROP)
    believes = App(App(believe, agent), p)
    return Lam(w, Forall(p, And(Iff(believes, App(w, believes)), Imp(believes, App(w, p)))))


def seriality(rel):
    """Estipulação relativizada ao ponto de avaliação: exists w (Omega w & R w)."""
    w = _world(variable_names(rel))
    return Exists(w, And(App(OMEGA, w), head_beta(App(rel, w))))


def serial_belief(agent, believe):
    """forall w exists w' forall p ((w(B p) <-> w'(B p)) & (w(B p) -> w' p))."""
    w, v, p = Var("w", WORLD_TYPE), Var("v", WORLD_TYPE), Var("p", PROP)
    believes = App(App(believe, agent), p)
    body = And(Iff(App(w, believes), App(v, believes)), Imp(App(w, believes), App(v, p)))
    return Forall(w, Exists(v, Forall(p, body)))


# --- Enunciados derivados ---

def _distribution(statement):
    w = _world(())
    return Forall(w, Imp(App(OMEGA, w), statement(w)))


def negation_statement(phi):
    """w(~phi) <-> ~(w phi): mundos são completos e consistentes."""
    return _distribution(lambda w: Iff(App(w, Not(phi)), Not(App(w, phi))))


def conjunction_statement(phi, psi):
    return _distribution(lambda w: Iff(App(w, And(phi, psi)), And(App(w, phi), App(w, psi))))


def universal_statement(x, phi):
    return _distribution(lambda w: Iff(App(w, Forall(x, phi)), Forall(x, App(w, phi))))


def existential_statement(x, phi):
    return _distribution(lambda w: Iff(App(w, Exists(x, phi)), Exists(x, App(w, phi))))


def omega_equivalence_statements():
    """Reflexividade, simetria e transitividade de lam w lam w'. w(Omega w')."""
    w, v, u = (Var(f"{WORLD_VARIABLE_PREFIX}{i}", WORLD_TYPE) for i in range(3))

    def sees(a, b):
        return App(a, App(OMEGA, b))

    refl = Forall(w, Imp(App(OMEGA, w), sees(w, w)))
    sym = forall_many((w, v), Imp(And(And(App(OMEGA, w), App(OMEGA, v)), sees(w, v)), sees(v, w)))
    trans = forall_many(
        (w, v, u),
        Imp(And(And(And(App(OMEGA, w), App(OMEGA, v)), App(OMEGA, u)), And(sees(w, v), sees(v, u))),
            sees(w, u)),
    )
    return refl, sym, trans


def worlds_signature(sig):
    return sig.union(WORLDS_SIGNATURE)
