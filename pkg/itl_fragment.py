#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Fragmento de inglês com verbos de atitude proposicional.

Estruturas sintáticas são árvores binárias de palavras em notação de
colchetes; a tradução é a menor relação que leva palavras às entradas do
léxico e [X Y] a AB ou BA quando bem tipados. As consultas de consequência
usam as formas beta normais e as teorias de postulados de significado.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional, Tuple, Union

import pyparsing as pp

from itl_calculus import SchemeGenerator, Theory
from itl_lambda import alpha_eq, beta_normalize, is_redex
from itl_parser import parse_signature, parse_term
from itl_printer import print_term
from itl_prover import Answer, EntailmentResult, entails
from itl_sugar import desugar, forall_many
from itl_syntax import (
    App, Eq, ITLError, ITLSyntaxError, Lam, Term, Var, apply_subst, free_vars, is_free_for,
    subterms,
)

logger = logging.getLogger(__name__)


class UnknownWord(ITLError):
    """Palavra fora do léxico."""


class Untranslatable(ITLError):
    """Estrutura sem tradução (ininterpretável)."""

    def __init__(self, side, structure):
        self.side = side
        self.structure = structure
        super().__init__(f"estrutura sem tradução ({side}): {structure}")


FRAGMENT_SIGNATURE_TEXT = """
type e
const man : <e>
const unicorn : <e>
const run : <e>
const laugh : <e>
const love : <e e>
const know : <e <>>
const believe : <e <>>
const bill : <<e>>
const ann : <<e>>
const tully : <<e>>
const cicero : <<e>>
"""

NAMES_SIGNATURE_TEXT = FRAGMENT_SIGNATURE_TEXT + """
const a : e
const b : e
const t : e
const c : e
"""

FRAGMENT_SIGNATURE = parse_signature(FRAGMENT_SIGNATURE_TEXT)
NAMES_SIGNATURE = parse_signature(NAMES_SIGNATURE_TEXT)

LEXICON_TEXT: Dict[str, str] = {
    "if": "lam p:<> . lam q:<> . p -> q",
    "no": "lam P':<e> . lam P:<e> . ~(exists x:e . P' x & P x)",
    "some": "lam P':<e> . lam P:<e> . exists x:e . P' x & P x",
    "every": "lam P':<e> . lam P:<e> . forall x:e . P' x -> P x",
    "loves": "lam Q:<<e>> . lam x:e . Q (lam y:e . love x y)",
    "is": "lam Q:<<e>> . lam x:e . Q (lam y:e . x = y)",
    "knows": "lam p:<> . lam x:e . know x p",
    "believes": "lam p:<> . lam x:e . believe x p",
    "man": "man",
    "unicorn": "unicorn",
    "runs": "run",
    "laughs": "laugh",
    "Bill": "bill",
    "Ann": "ann",
    "Tully": "tully",
    "Cicero": "cicero",
}

LEXICON: Dict[str, Term] = {word: parse_term(text, FRAGMENT_SIGNATURE) for word, text in LEXICON_TEXT.items()}


# --- Estruturas ---

@dataclass(frozen=True)
class Word:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Pair:
    left: "SynStructure"
    right: "SynStructure"

    def __str__(self):
        return f"[{self.left} {self.right}]"


SynStructure = Union[Word, Pair]

_STRUCT = pp.Forward()
_WORD = pp.Word(pp.alphas).set_parse_action(lambda t: Word(t[0]))
_BRACKET = pp.Group(pp.Suppress("[") + pp.OneOrMore(_STRUCT) + pp.Suppress("]"))
_STRUCT <<= _WORD | _BRACKET
_STRUCTURE_ONLY = _STRUCT + pp.StringEnd()


def _fold(item, text):
    if isinstance(item, Word):
        if item.name not in LEXICON:
            raise UnknownWord(f"palavra desconhecida: {item.name}")
        return item
    parts = [_fold(i, text) for i in item]
    if len(parts) == 1:
        return parts[0]
    if len(parts) != 2:
        raise ITLSyntaxError(f"estrutura não binária em {text!r}", 0)
    return Pair(parts[0], parts[1])


def parse_structure(text):
    """Lê '[X Y]' com palavras do léxico nas folhas."""
    try:
        raw = _STRUCTURE_ONLY.parse_string(text.strip())[0]
    except pp.ParseBaseException as exc:
        raise ITLSyntaxError(f"estrutura inválida: {exc.msg}", exc.loc, exc.lineno, exc.col) from None
    return _fold(raw, text)


# --- Tradução ---

def _applies(fun, arg):
    ty = fun.type
    return ty.is_complex and bool(ty.args) and ty.args[0] == arg.type


@lru_cache(maxsize=4096)
def translate(s):
    if isinstance(s, Word):
        return frozenset({LEXICON[s.name]})
    result = set()
    for a in translate(s.left):
        for b in translate(s.right):
            if _applies(a, b):
                result.add(App(a, b))
            if _applies(b, a):
                result.add(App(b, a))
    return frozenset(result)


def normal_translations(s):
    """Formas beta normais das traduções, em ordem canônica."""
    normal = {beta_normalize(t) for t in translate(s)}
    return sorted(normal, key=print_term)


# --- Postulados de significado ---

def _closure(term):
    return forall_many(sorted(free_vars(term), key=lambda v: (v.name, str(v.ty))), term)


def _all_subterms(terms):
    seen = {}
    for term in terms:
        for sub in subterms(desugar(term)):
            seen.setdefault(sub, None)
    return list(seen)


def _beta_candidates(terms):
    for sub in _all_subterms(terms):
        if is_redex(sub) and is_free_for(sub.arg, sub.fun.var, sub.fun.body):
            yield (sub,)


def _beta_build(tup):
    redex, = tup
    contractum = apply_subst(redex.fun.body, {redex.fun.var: redex.arg})
    return _closure(Eq(redex, contractum))


def _eta_candidates(terms):
    for sub in _all_subterms(terms):
        if isinstance(sub, Lam) and isinstance(sub.body, App) and sub.body.arg == sub.var \
                and sub.var not in free_vars(sub.body.fun):
            yield (sub,)


def _eta_build(tup):
    lam, = tup
    return _closure(Eq(lam, lam.body.fun))


def _alpha_candidates(terms):
    lams = [t for t in _all_subterms(terms) if isinstance(t, Lam)]
    for i, first in enumerate(lams):
        for second in lams[i + 1:]:
            if first.var.name == second.var.name or first.type != second.type:
                continue
            if alpha_eq(first, second) and _alpha_variant(first, second):
                yield (first, second)


def _alpha_variant(first, second):
    y = Var(second.var.name, second.var.ty)
    if not is_free_for(y, first.var, first.body) or y in free_vars(first):
        return False
    return apply_subst(first.body, {first.var: y}) == second.body


def _alpha_build(tup):
    first, second = tup
    if not _alpha_variant(first, second):
        raise ITLError(f"não é variante alfa: {print_term(first)} / {print_term(second)}")
    return _closure(Eq(first, second))


LAMBDA_CONVERSION = Theory(
    "lambda-conv",
    generators=(
        SchemeGenerator("alpha", _alpha_build, _alpha_candidates),
        SchemeGenerator("beta", _beta_build, _beta_candidates),
        SchemeGenerator("eta", _eta_build, _eta_candidates),
    ),
)

NAME_POSTULATES_TEXT = (
    "forall P:<e> . ann P <-> P a",
    "forall P:<e> . bill P <-> P b",
    "forall P:<e> . tully P <-> P t",
    "forall P:<e> . cicero P <-> P c",
)

NAMES = Theory(
    "names",
    axioms=tuple(parse_term(text, NAMES_SIGNATURE) for text in NAME_POSTULATES_TEXT),
    signature=NAMES_SIGNATURE,
)

POSTULATE_SETS: Dict[str, Theory] = {"lambda-conv": LAMBDA_CONVERSION, "names": NAMES}


def postulates(names):
    """União das teorias nomeadas; lista vazia dá a teoria vazia com a assinatura do fragmento."""
    theory = Theory("fragmento", signature=FRAGMENT_SIGNATURE)
    for name in names:
        try:
            theory = theory.union(POSTULATE_SETS[name])
        except KeyError:
            raise ITLError(f"conjunto de postulados desconhecido: {name}") from None
    return theory


# --- Consequência ---

@dataclass(frozen=True)
class FragmentVerdict:
    result: EntailmentResult
    premises: Tuple[Term, ...]
    conclusion: Optional[Term]

    @property
    def answer(self):
        return self.result.answer


def _structure(s):
    return parse_structure(s) if isinstance(s, str) else s


def fragment_entails(premises, conclusion, posts=("lambda-conv",), budget=None):
    """Sim se algum par de traduções normais é consequência; não se todos são refutados."""
    if isinstance(premises, (str, Word, Pair)):
        premises = [premises]
    premise_structures = [_structure(p) for p in premises]
    conclusion_structure = _structure(conclusion)
    theory = postulates(posts)
    sig = theory.signature

    premise_options = []
    for i, s in enumerate(premise_structures):
        options = normal_translations(s)
        if not options:
            raise Untranslatable(f"premissa {i + 1}", s)
        premise_options.append(options)
    conclusions = normal_translations(conclusion_structure)
    if not conclusions:
        raise Untranslatable("conclusão", conclusion_structure)

    combos = [[]]
    for options in premise_options:
        combos = [c + [o] for c in combos for o in options]
    best = None
    for combo in combos:
        for target in conclusions:
            result = entails(combo, [target], sig, theory, budget)
            verdict = FragmentVerdict(result, tuple(combo), target)
            logger.info(f"Par de traduções: {result.answer.value}")
            if result.answer is Answer.YES:
                return verdict
            if best is None or (best.answer is Answer.NO and result.answer is Answer.UNKNOWN):
                best = verdict
    return best


# --- Corpora ---

STRUCTURES: Dict[str, str] = {
    "1a": "[[[no man]laughs][if[[some unicorn]runs]]]",
    "1c": "[[[no unicorn]runs][if[[some man]laughs]]]",
    "2a": "[[every man][knows[[[no man]laughs][if[[some unicorn]runs]]]]]",
    "2c": "[[every man][knows[[[no unicorn]runs][if[[some man]laughs]]]]]",
    "tully-runs": "[Tully runs]",
    "cicero-runs": "[Cicero runs]",
    "tully-is-cicero": "[Tully [is Cicero]]",
    "ann-believes-tully": "[Ann [believes [Tully runs]]]",
    "ann-believes-cicero": "[Ann [believes [Cicero runs]]]",
}


@dataclass(frozen=True)
class EntailmentCase:
    name: str
    premises: Tuple[str, ...]
    conclusion: str
    postulates: Tuple[str, ...]
    expected: str


def load_structure_corpus(path):
    structures = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            line = line.split("#", 1)[0].strip()
            if line:
                structures.append(parse_structure(line))
    logger.info(f"{len(structures)} estruturas carregadas de {path}")
    return structures


def load_entailment_corpus(path):
    with open(path, "r", encoding="utf-8") as f:
        records = json.load(f)
    cases = []
    for record in records:
        cases.append(EntailmentCase(
            name=record["name"],
            premises=tuple(STRUCTURES.get(p, p) for p in record["premises"]),
            conclusion=STRUCTURES.get(record["conclusion"], record["conclusion"]),
            postulates=tuple(record.get("postulates", ())),
            expected=record["expected"],
        ))
    logger.info(f"{len(cases)} consultas carregadas de {path}")
    return cases
