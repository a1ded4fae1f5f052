#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Parser da sintaxe concreta (pyparsing): tipos, termos, sequentes e assinaturas.

A análise é feita em duas fases: primeiro uma árvore bruta de nós, depois a
resolução dos identificadores (ligador mais interno, contexto, assinatura),
que já constrói termos tipados.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import pyparsing as pp

from itl_printer import print_term, print_type  # noqa: F401  (reexportados)
from itl_sequent import Sequent, Sign, SignedSentence
from itl_syntax import (
    And, App, BOTTOM, BasicType, Box, ComplexType, Diamond, Eq, Exists, Forall, ITLSyntaxError,
    Iff, Imp, Lam, Not, Or, Signature, Subset, TOP, TypeMismatch, UndeclaredConstant, Var,
    basic_names,
)

logger = logging.getLogger(__name__)

pp.ParserElement.enable_packrat()

KEYWORDS = ("lam", "forall", "exists", "sub", "bot", "top", "box", "dia", "type", "const")
IDENT_CHARS = pp.alphanums + "_'"


@dataclass(frozen=True)
class _Node:
    kind: str
    items: tuple
    loc: int


def _kw(word):
    return pp.Keyword(word, ident_chars=IDENT_CHARS)


_keyword = pp.MatchFirst([_kw(k) for k in KEYWORDS])
IDENT = (~_keyword + pp.Regex(r"[A-Za-z_][A-Za-z0-9_']*")).set_name("identificador")

# --- Tipos ---

TYPE = pp.Forward().set_name("tipo")
_basic_type = IDENT.copy().set_parse_action(lambda t: BasicType(t[0]))
_complex_type = (
    pp.Suppress("<") + pp.Group(pp.ZeroOrMore(TYPE)) + pp.Suppress(">")
).set_parse_action(lambda t: ComplexType(tuple(t[0])))
TYPE <<= _complex_type | _basic_type

# --- Termos (árvore bruta) ---

TERM = pp.Forward().set_name("termo")
_UNARY = pp.Forward()
_IMP = pp.Forward()
_IFF = pp.Forward()


def _ident_action(s, loc, t):
    return _Node("ident", (t[0],), loc)


def _binder_action(s, loc, t):
    return _Node("binder", (t[0], t[1], t[2], t[3]), loc)


def _fold_app(s, loc, t):
    node = t[0]
    for arg in t[1:]:
        node = _Node("app", (node, arg), loc)
    return node


def _fold_left(op):
    def action(s, loc, t):
        node = t[0]
        for right in t[1:]:
            node = _Node("bin", (op, node, right), loc)
        return node
    return action


def _right_assoc(op):
    def action(s, loc, t):
        if len(t) == 1:
            return t[0]
        return _Node("bin", (op, t[0], t[1]), loc)
    return action


def _rel_action(s, loc, t):
    if len(t) == 1:
        return t[0]
    return _Node("bin", (t[1], t[0], t[2]), loc)


_variable = IDENT.copy().set_parse_action(_ident_action)
_bot = _kw("bot").set_parse_action(lambda s, loc, t: _Node("bot", (), loc))
_top = _kw("top").set_parse_action(lambda s, loc, t: _Node("top", (), loc))
_modal = (
    (_kw("box") | _kw("dia")) + pp.Suppress("(") + TERM + pp.Suppress(",") + TERM + pp.Suppress(")")
).set_parse_action(lambda s, loc, t: _Node(t[0], (t[1], t[2]), loc))
_paren = pp.Suppress("(") + TERM + pp.Suppress(")")
_atom = _bot | _top | _modal | _paren | _variable
_app = pp.OneOrMore(_atom).set_parse_action(_fold_app)

_binder = (
    (_kw("lam") | _kw("forall") | _kw("exists"))
    + IDENT
    + pp.Suppress(":")
    + TYPE
    + pp.Suppress(".")
    + TERM
).set_parse_action(_binder_action)

_negation = (pp.Suppress("~") + _UNARY).set_parse_action(
    lambda s, loc, t: _Node("not", (t[0],), loc)
)
_UNARY <<= _negation | _binder | _app

_rel_op = _kw("sub") | pp.Regex(r"=(?!>)")
_rel = (_UNARY + pp.Optional(_rel_op + _UNARY)).set_parse_action(_rel_action)
_and = (_rel + pp.ZeroOrMore(pp.Suppress("&") + _rel)).set_parse_action(_fold_left("&"))
_or = (_and + pp.ZeroOrMore(pp.Suppress("|") + _and)).set_parse_action(_fold_left("|"))
_IMP <<= (_or + pp.Optional(pp.Suppress("->") + _IMP)).set_parse_action(_right_assoc("->"))
_IFF <<= (_IMP + pp.Optional(pp.Suppress("<->") + _IFF)).set_parse_action(_right_assoc("<->"))
TERM <<= _IFF

_TERM_ONLY = TERM + pp.StringEnd()
_TYPE_ONLY = TYPE + pp.StringEnd()
_term_list = pp.Group(pp.Optional(pp.DelimitedList(TERM)))
_SEQUENT = _term_list + pp.Suppress("=>") + _term_list + pp.StringEnd()

_sig_type = _kw("type") + IDENT
_sig_const = _kw("const") + IDENT + pp.Suppress(":") + TYPE
_SIG_LINE = (_sig_type | _sig_const) + pp.StringEnd()

_BINARY = {"&": And, "|": Or, "->": Imp, "<->": Iff, "sub": Subset, "=": Eq}
_BINDER = {"lam": Lam, "forall": Forall, "exists": Exists}


# --- Resolução ---

def _check_type(ty, sig, loc):
    missing = basic_names(ty) - set(sig.basic_types)
    if missing:
        raise TypeMismatch(f"tipo básico não declarado {sorted(missing)} na posição {loc}")


def _resolve(node, sig, scope, free):
    kind = node.kind
    if kind == "ident":
        name = node.items[0]
        if name in scope:
            return scope[name]
        if name in free:
            return free[name]
        if sig.has(name):
            return sig.const(name)
        raise UndeclaredConstant(f"identificador não declarado: {name} (posição {node.loc})")
    if kind == "bot":
        return BOTTOM
    if kind == "top":
        return TOP
    if kind == "app":
        return App(_resolve(node.items[0], sig, scope, free), _resolve(node.items[1], sig, scope, free))
    if kind == "not":
        return Not(_resolve(node.items[0], sig, scope, free))
    if kind == "bin":
        op, left, right = node.items
        return _BINARY[op](_resolve(left, sig, scope, free), _resolve(right, sig, scope, free))
    if kind in ("box", "dia"):
        rel = _resolve(node.items[0], sig, scope, free)
        body = _resolve(node.items[1], sig, scope, free)
        return Box(rel, body) if kind == "box" else Diamond(rel, body)
    if kind == "binder":
        keyword, name, ty, body = node.items
        _check_type(ty, sig, node.loc)
        var = Var(name, ty)
        inner = dict(scope)
        inner[name] = var
        return _BINDER[keyword](var, _resolve(body, sig, inner, free))
    raise ITLSyntaxError(f"nó desconhecido: {kind}", node.loc)


def _syntax_error(exc):
    return ITLSyntaxError(f"erro de sintaxe: {exc.msg}", exc.loc, exc.lineno, exc.col)


def _free_index(ctx):
    return {v.name: v for v in (ctx or ())}


# --- API pública ---

def parse_type(text):
    try:
        return _TYPE_ONLY.parse_string(text)[0]
    except pp.ParseBaseException as exc:
        raise _syntax_error(exc) from None


def parse_term(text, sig, ctx=None):
    """Lê um termo (com açúcar); ctx declara variáveis livres permitidas."""
    try:
        raw = _TERM_ONLY.parse_string(text)[0]
    except pp.ParseBaseException as exc:
        raise _syntax_error(exc) from None
    return _resolve(raw, sig, {}, _free_index(ctx))


def parse_sequent(text, sig):
    """Lê 'phi1, ..., phim => psi1, ..., psin'."""
    try:
        left, right = _SEQUENT.parse_string(text)
    except pp.ParseBaseException as exc:
        raise _syntax_error(exc) from None
    members = [SignedSentence(Sign.L, _resolve(n, sig, {}, {})) for n in left]
    members += [SignedSentence(Sign.R, _resolve(n, sig, {}, {})) for n in right]
    return Sequent.of(members)


def parse_signed(text, sig):
    """Lê 'L: phi' ou 'R: phi'."""
    text = text.strip()
    if len(text) < 2 or text[0] not in "LR" or text[1] != ":":
        raise ITLSyntaxError(f"sentença sinalizada inválida: {text!r}", 0)
    return SignedSentence(Sign(text[0]), parse_term(text[2:].strip(), sig))


def parse_signature(text, allow_reserved=False):
    """Lê linhas 'type e' e 'const nome : T'; '#' inicia comentário."""
    basic = []
    constants = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            tokens = _SIG_LINE.parse_string(line)
        except pp.ParseBaseException as exc:
            raise ITLSyntaxError(f"linha de assinatura inválida: {exc.msg}", exc.loc, lineno, exc.col) from None
        if tokens[0] == "type":
            basic.append(tokens[1])
        else:
            name, ty = tokens[1], tokens[2]
            if name in constants and constants[name] != ty:
                raise TypeMismatch(f"constante {name} declarada com dois tipos (linha {lineno})")
            constants[name] = ty
    if allow_reserved:
        return Signature(tuple(sorted(constants.items())), frozenset(basic))
    return Signature.build(basic, constants)


def print_signature(sig):
    lines = [f"type {name}" for name in sorted(sig.basic_types)]
    lines += [f"const {name} : {print_type(ty)}" for name, ty in sig.constants]
    return "\n".join(lines) + "\n"


def load_signature(path):
    with open(path, "r", encoding="utf-8") as f:
        sig = parse_signature(f.read())
    logger.info(f"Assinatura carregada de {path}: {len(sig.constants)} constantes")
    return sig
