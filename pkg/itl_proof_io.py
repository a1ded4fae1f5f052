#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Leitura e escrita de provas em JSON (registros aninhados).

Cada nó guarda o nome da regra, a conclusão em sintaxe concreta, os dados da
regra e a lista de premissas. A assinatura usada, incluindo as constantes
reservadas introduzidas pela busca, vai junto no arquivo.
"""

from __future__ import annotations

import json
import logging
from typing import Optional

from config import RESERVED_PREFIX
from itl_calculus import Proof, RuleData, RuleId
from itl_parser import parse_sequent, parse_signature, parse_signed, parse_term, parse_type, print_signature
from itl_printer import print_term, print_type
from itl_syntax import Const, ITLError, Var, constants_of

logger = logging.getLogger(__name__)

PROOF_FORMAT = "itl-proof/1"


def proof_signature(proof, sig):
    """Assinatura estendida com as constantes reservadas que a prova usa."""
    extra = {}
    stack = [proof]
    while stack:
        node = stack.pop()
        for const in node.conclusion.constants:
            if const.name.startswith(RESERVED_PREFIX):
                extra[const.name] = const
        for term in node.data.terms:
            for const in constants_of(term):
                if const.name.startswith(RESERVED_PREFIX):
                    extra[const.name] = const
        stack.extend(node.premises)
    return sig.extend(extra.values())


def _node_record(node, premises):
    record = {"rule": node.rule.value, "conclusion": str(node.conclusion)}
    data = node.data
    if data.principal is not None:
        record["principal"] = data.principal.key
    if data.terms:
        record["terms"] = [print_term(t) for t in data.terms]
    if data.hole is not None:
        record["hole"] = {"name": data.hole.name, "type": print_type(data.hole.ty)}
    if data.context is not None:
        record["context"] = print_term(data.context)
    record["premises"] = premises
    return record


def proof_to_dict(proof, sig):
    done = {}
    stack = [(proof, False)]
    while stack:
        node, ready = stack.pop()
        if not ready:
            stack.append((node, True))
            stack.extend((p, False) for p in node.premises)
            continue
        done[id(node)] = _node_record(node, [done[id(p)] for p in node.premises])
    return {
        "format": PROOF_FORMAT,
        "signature": print_signature(proof_signature(proof, sig)),
        "proof": done[id(proof)],
    }


def dumps_proof(proof, sig):
    return json.dumps(proof_to_dict(proof, sig), indent=2, ensure_ascii=False)


def _node_from_record(record, sig, premises):
    try:
        rule = RuleId(record["rule"])
    except ValueError:
        raise ITLError(f"regra desconhecida no arquivo de prova: {record.get('rule')}") from None
    conclusion = parse_sequent(record["conclusion"], sig)
    principal = parse_signed(record["principal"], sig) if "principal" in record else None
    hole: Optional[Var] = None
    if "hole" in record:
        hole = Var(record["hole"]["name"], parse_type(record["hole"]["type"]))
    context = parse_term(record["context"], sig, [hole] if hole else None) if "context" in record else None
    terms = tuple(parse_term(t, sig) for t in record.get("terms", []))
    return Proof(conclusion, rule, premises, RuleData(principal=principal, terms=terms, context=context, hole=hole))


def proof_from_dict(payload, sig=None):
    """Reconstrói a prova; se sig for dada, só as constantes reservadas vêm do arquivo."""
    if payload.get("format") != PROOF_FORMAT:
        raise ITLError(f"formato de prova não suportado: {payload.get('format')}")
    declared = parse_signature(payload.get("signature", ""), allow_reserved=True)
    if sig is None:
        sig = declared
    else:
        reserved = [Const(n, t) for n, t in declared.constants if n.startswith(RESERVED_PREFIX)]
        sig = sig.extend(reserved, declared.basic_types)

    done = {}
    stack = [(payload["proof"], False)]
    while stack:
        record, ready = stack.pop()
        if not ready:
            stack.append((record, True))
            stack.extend((p, False) for p in record.get("premises", []))
            continue
        premises = tuple(done[id(p)] for p in record.get("premises", []))
        done[id(record)] = _node_from_record(record, sig, premises)
    return done[id(payload["proof"])], sig


def loads_proof(text, sig=None):
    return proof_from_dict(json.loads(text), sig)


def save_proof(path, proof, sig):
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(dumps_proof(proof, sig))
        logger.info(f"Prova salva em {path}")
        return True
    except OSError as e:
        logger.error(f"Erro ao salvar prova em {path}: {e}")
        return False


def load_proof(path, sig=None):
    with open(path, "r", encoding="utf-8") as f:
        proof, full_sig = loads_proof(f.read(), sig)
    logger.info(f"Prova carregada de {path}")
    return proof, full_sig
