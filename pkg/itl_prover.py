#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Provador limitado: busca em profundidade sobre ramos cumulativos.

As regras do cálculo são invertíveis, então a busca nunca volta atrás: cada
passo só acrescenta sentenças ao ramo. Ordem de prioridade por passo:
fechamento, redução lambda, SubR com constantes novas, SubL com uma premissa
que fecha rápido, SubL proposicional com ramificação e, por fim,
instanciação limitada das inclusões com vetor não vazio.

Toda prova encontrada é conferida pelo verificador antes de ser devolvida.
"""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass, field, fields, replace
from enum import Enum
from typing import Dict, List, Optional, Set, Tuple, Union

from config import (
    FRESH_CONSTANT_PREFIX, INHABITANT_VARIABLE_PREFIX, MAX_AXIOM_INSTANCES, MAX_CARRIER_ROUNDS,
    MAX_DEPTH, MAX_INSTANTIATIONS, QUICK_CLOSE_STEPS, TERM_UNIVERSE_DEPTH, TIME_LIMIT,
)
from itl_calculus import (
    EMPTY_THEORY, Proof, RuleData, RuleId, check_proof, lam_reduct, sub_instances,
    theory_instances,
)
from itl_hintikka import HintikkaReport, ValidationFailed, build_countermodel, check_hintikka, has_witness
from itl_models import FiniteModel
from itl_printer import print_term
from itl_sequent import Sequent, Sign, SignedSentence
from itl_sugar import desugar, fresh_name
from itl_syntax import (
    BOTTOM, App, BudgetExceeded, Const, ITLError, Lam, Subset, Term, Type, Var,
    canonical_inhabitant, closed_subterms, constants_of,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int = MAX_DEPTH
    max_instantiations: int = MAX_INSTANTIATIONS
    max_axiom_instances: int = MAX_AXIOM_INSTANCES
    term_universe_depth: int = TERM_UNIVERSE_DEPTH
    time_limit: float = TIME_LIMIT

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"orçamento inválido: {f.name} deve ser positivo")

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in known})

    def to_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def override(self, **values):
        """Sobrescreve só os valores dados (None é ignorado)."""
        return replace(self, **{k: v for k, v in values.items() if v is not None})


class TermUniverse:
    """Termos fechados da assinatura por tipo, até a profundidade dada.

    Nível 0: constantes e habitantes canônicos. Cada nível seguinte acrescenta
    aplicações f a e abstrações vácuas sobre os níveis anteriores.
    """

    def __init__(self, sig, depth=TERM_UNIVERSE_DEPTH):
        self.sig = sig
        self.depth = depth
        self._by_type: Dict[Type, List[Term]] = {}
        pool = [Const(n, t) for n, t in sig.constants]
        self._add(pool)
        for _ in range(1, depth):
            new = []
            for f in pool:
                if f.type.is_complex and f.type.args:
                    new.extend(App(f, a) for a in self._by_type.get(f.type.args[0], ()))
            new.extend(self._vacuous(pool))
            self._add(new)
            pool = pool + new

    def _vacuous(self, pool):
        result = []
        for ty in sorted({t.type for t in pool}, key=str):
            for arg_ty in sorted({t.type for t in pool if not t.type.is_complex}, key=str):
                x = Var(f"{INHABITANT_VARIABLE_PREFIX}1", arg_ty)
                result.extend(Lam(x, body) for body in self._by_type.get(ty, ()) if ty.is_complex)
        return result

    def _add(self, terms):
        for t in terms:
            bucket = self._by_type.setdefault(t.type, [])
            if t not in bucket:
                bucket.append(t)

    def terms(self, ty):
        result = sorted(self._by_type.get(ty, ()), key=lambda t: (len(print_term(t)), print_term(t)))
        if ty.is_complex:
            inhabitant = canonical_inhabitant(ty)
            if inhabitant not in result:
                result.insert(0, inhabitant)
        return result


# --- Resultados ---

@dataclass(frozen=True)
class SaturationReport:
    hintikka: HintikkaReport
    fresh_constants: Tuple[str, ...] = ()
    instantiations: int = 0
    axioms: int = 0
    steps: int = 0

    def lines(self):
        h = self.hintikka
        lines = [
            f"passos: {self.steps}",
            f"instanciações: {self.instantiations}",
            f"axiomas da teoria: {self.axioms}",
            f"constantes novas: {', '.join(self.fresh_constants) or '-'}",
            f"termos no universo: {h.universe_size}",
            "cobertura: " + ", ".join(f"c{k}={v}" for k, v in sorted(h.coverage.items())),
        ]
        lines += [str(v) for v in h.violations]
        return lines


@dataclass(frozen=True)
class ProofFound:
    proof: Proof
    root: Sequent
    axioms: Tuple[Term, ...] = ()


@dataclass(frozen=True)
class OpenBranch:
    sequent: Sequent
    root: Sequent
    report: SaturationReport
    axioms: Tuple[Term, ...] = ()


@dataclass(frozen=True)
class Exhausted:
    dimension: str
    detail: str = ""


Outcome = Union[ProofFound, OpenBranch, Exhausted]


class _Open(Exception):
    def __init__(self, branch):
        self.branch = branch


class _Limit(Exception):
    def __init__(self, dimension, detail):
        self.dimension = dimension
        self.detail = detail


# --- Passos auxiliares ---

def closing_leaf(seq):
    """BottomL ou Axiom, se o sequente já fecha."""
    if SignedSentence(Sign.L, BOTTOM) in seq:
        return Proof(seq, RuleId.BOTTOM_L)
    lefts = {s.sentence for s in seq.members if s.sign is Sign.L}
    for s in seq.ordered:
        if s.sign is Sign.R and s.sentence in lefts:
            return Proof(seq, RuleId.AXIOM, data=RuleData(principal=s))
    return None


# entrada da cadeia linear: (conclusão, regra, dados, prova irmã, posição da continuação)
_Entry = Tuple[Sequent, RuleId, RuleData, Optional[Proof], int]


def _assemble(chain, leaf):
    proof = leaf
    for concl, rule, data, sibling, pos in reversed(chain):
        if sibling is None:
            premises = (proof,)
        elif pos == 0:
            premises = (proof, sibling)
        else:
            premises = (sibling, proof)
        proof = Proof(concl, rule, premises, data)
    return proof


def _sub_l_premises(seq, member, terms):
    left, right = sub_instances(member.sentence, terms)
    first, second = SignedSentence(Sign.R, left), SignedSentence(Sign.L, right)
    return seq.add(first), seq.add(second), first, second


def quick_close(seq, news, steps=QUICK_CLOSE_STEPS):
    """Tenta fechar com poucos passos determinísticos a partir das sentenças novas."""
    chain = []
    queue = list(news)
    for _ in range(steps + 1):
        leaf = closing_leaf(seq)
        if leaf is not None:
            return _assemble(chain, leaf)
        if not queue:
            return None
        member = queue.pop(0)
        phi = member.sentence
        reduct = lam_reduct(phi)
        if reduct is not None:
            new = SignedSentence(member.sign, reduct)
            if new not in seq:
                rule = RuleId.LAM_L if member.sign is Sign.L else RuleId.LAM_R
                chain.append((seq, rule, RuleData(principal=member), None, 0))
                seq = seq.add(new)
                queue.append(new)
            continue
        if not isinstance(phi, Subset) or phi.left.type.args:
            continue
        if member.sign is Sign.R:
            new = [SignedSentence(Sign.L, phi.left), SignedSentence(Sign.R, phi.right)]
            chain.append((seq, RuleId.SUB_R, RuleData(principal=member), None, 0))
            seq = seq.union(new)
            queue.extend(new)
            continue
        first_seq, second_seq, first, second = _sub_l_premises(seq, member, ())
        if first in seq or second in seq:
            continue
        closed = closing_leaf(second_seq)
        if closed is not None:
            chain.append((seq, RuleId.SUB_L, RuleData(principal=member), closed, 0))
            seq = first_seq
            queue.append(first)
            continue
        closed = closing_leaf(first_seq)
        if closed is not None:
            chain.append((seq, RuleId.SUB_L, RuleData(principal=member), closed, 1))
            seq = second_seq
            queue.append(second)
    return None


@dataclass
class _Branch:
    seq: Sequent
    handled: Set[str] = field(default_factory=set)
    counts: Dict[str, int] = field(default_factory=dict)
    depth: int = 0

    def child(self, seq, counted=None):
        counts = dict(self.counts)
        if counted is not None:
            counts[counted] = counts.get(counted, 0) + 1
        return _Branch(seq, set(self.handled), counts, self.depth + 1)


def _diagonal(pools):
    indexed = itertools.product(*[range(len(p)) for p in pools])
    order = sorted(indexed, key=lambda idx: (sum(idx), idx))
    return [tuple(p[i] for p, i in zip(pools, idx)) for idx in order]


class _Search:
    def __init__(self, sig, budget, extra, avoid):
        self.sig = sig
        self.budget = budget
        self.extra = extra
        self.deadline = time.monotonic() + budget.time_limit
        self.names = set(avoid)
        self.fresh: List[Const] = []
        self.steps = 0
        self.instantiations = 0
        self._occurring: Tuple[Optional[Sequent], Dict[Type, List[Term]]] = (None, {})

    def fresh_constant(self, ty):
        name = fresh_name(FRESH_CONSTANT_PREFIX, self.names)
        self.names.add(name)
        const = Const(name, ty)
        self.fresh.append(const)
        return const

    def pool(self, seq, ty):
        cached_seq, by_type = self._occurring
        if cached_seq is not seq:
            by_type = {}
            for term in seq.closed_subterms():
                by_type.setdefault(term.type, []).append(term)
            self._occurring = (seq, by_type)
        terms = list(by_type.get(ty, ()))
        if ty.is_complex:
            inhabitant = canonical_inhabitant(ty)
            if inhabitant not in terms:
                terms.append(inhabitant)
        for t in self.extra(ty, terms):
            if t not in terms:
                terms.append(t)
        return terms

    def _tick(self, branch):
        self.steps += 1
        if branch.depth > self.budget.max_depth:
            raise _Limit("depth", f"profundidade {self.budget.max_depth} atingida")
        if time.monotonic() > self.deadline:
            raise _Limit("time", f"tempo limite de {self.budget.time_limit}s atingido")

    def solve(self, branch):
        chain = []
        while True:
            self._tick(branch)
            leaf = closing_leaf(branch.seq)
            if leaf is not None:
                return _assemble(chain, leaf)
            action = self._next(branch)
            if action is None:
                raise _Open(branch)
            kind, payload = action
            if kind == "linear":
                entry, branch = payload
                chain.append(entry)
                continue
            concl, data, children = payload
            premises = tuple(self.solve(child) for child in children)
            return _assemble(chain, Proof(concl, RuleId.SUB_L, premises, data))

    def _sub_l_action(self, branch, member, terms, counted=None):
        seq = branch.seq
        first_seq, second_seq, first, second = _sub_l_premises(seq, member, terms)
        data = RuleData(principal=member, terms=tuple(terms))
        closed = quick_close(second_seq, [second])
        if closed is not None:
            return "linear", ((seq, RuleId.SUB_L, data, closed, 0), branch.child(first_seq, counted))
        closed = quick_close(first_seq, [first])
        if closed is not None:
            return "linear", ((seq, RuleId.SUB_L, data, closed, 1), branch.child(second_seq, counted))
        return "split", (seq, data, (branch.child(first_seq, counted), branch.child(second_seq, counted)))

    def _next(self, branch):
        seq = branch.seq
        for member in seq:
            reduct = lam_reduct(member.sentence)
            if reduct is not None and SignedSentence(member.sign, reduct) not in seq:
                rule = RuleId.LAM_L if member.sign is Sign.L else RuleId.LAM_R
                entry = (seq, rule, RuleData(principal=member), None, 0)
                return "linear", (entry, branch.child(seq.add(SignedSentence(member.sign, reduct))))

        for member in seq:
            phi = member.sentence
            if member.sign is not Sign.R or not isinstance(phi, Subset) or member.key in branch.handled:
                continue
            branch.handled.add(member.key)
            if has_witness(seq, member):
                continue
            consts = [self.fresh_constant(ty) for ty in phi.left.type.args]
            left, right = sub_instances(phi, consts)
            new = [SignedSentence(Sign.L, left), SignedSentence(Sign.R, right)]
            entry = (seq, RuleId.SUB_R, RuleData(principal=member, terms=tuple(consts)), None, 0)
            return "linear", (entry, branch.child(seq.union(new)))

        pending = None
        for member in seq:
            phi = member.sentence
            if member.sign is not Sign.L or not isinstance(phi, Subset) or phi.left.type.args:
                continue
            if SignedSentence(Sign.R, phi.left) in seq or SignedSentence(Sign.L, phi.right) in seq:
                continue
            action = self._sub_l_action(branch, member, ())
            if action[0] == "linear":
                return action
            if pending is None:
                pending = action
        if pending is not None:
            return pending

        return self._instantiate(branch)

    def _instantiate(self, branch):
        seq = branch.seq
        principals = [m for m in seq if m.sign is Sign.L and isinstance(m.sentence, Subset)
                      and m.sentence.left.type.args]
        principals.sort(key=lambda m: (branch.counts.get(m.key, 0), m.key))
        limited = None
        for member in principals:
            phi = member.sentence
            pools = [self.pool(seq, ty) for ty in phi.left.type.args]
            for tup in _diagonal(pools):
                left, right = sub_instances(phi, tup)
                if SignedSentence(Sign.R, left) in seq or SignedSentence(Sign.L, right) in seq:
                    continue
                if branch.counts.get(member.key, 0) >= self.budget.max_instantiations:
                    limited = member
                    break
                self.instantiations += 1
                return self._sub_l_action(branch, member, tup, counted=member.key)
        if limited is not None:
            raise _Limit("instantiations", f"limite de {self.budget.max_instantiations} instanciações em {limited.key}")
        return None


# --- Teorias ---

def relevant_axioms(goal, theory):
    """Axiomas fixos ligados ao objetivo por constantes compartilhadas (ponto fixo)."""
    names = {c.name for c in goal.constants}
    chosen = []
    remaining = list(theory.axioms)
    changed = True
    while changed:
        changed = False
        for ax in list(remaining):
            ax_names = {c.name for c in constants_of(desugar(ax))}
            if not ax_names or ax_names & names:
                chosen.append(ax)
                remaining.remove(ax)
                names |= ax_names
                changed = True
    return chosen


def scheme_axioms(goal, theory, limit):
    """Instâncias de esquema pedidas pelo objetivo, cortadas no limite; o bool diz se coube tudo."""
    fixed = set(theory.axioms)
    requests = theory.requests_for(goal.closed_subterms())
    generated = [ax for ax in theory_instances(theory, requests) if ax not in fixed]
    return generated[:limit], len(generated) <= limit


def _with_axioms(goal, axioms):
    return goal.union(SignedSentence(Sign.L, ax) for ax in axioms)


def _theory_stages(goal, theory, budget):
    """Estágios crescentes de axiomas. Só o último pode terminar em ramo aberto."""
    stage = relevant_axioms(goal, theory)
    complete = True
    stages = [stage]
    if theory.generators:
        generated, complete = scheme_axioms(goal, theory, budget.max_axiom_instances)
        if generated:
            stages.append(stage + generated)
    return stages, complete


def _staged(goal, sig, budget, extra, theory):
    stages, complete = _theory_stages(goal, theory, budget)
    outcome = None
    for i, axioms in enumerate(stages):
        outcome = _run(_with_axioms(goal, axioms), sig, budget, extra, axioms)
        if isinstance(outcome, ProofFound):
            return outcome
        if isinstance(outcome, OpenBranch) and i < len(stages) - 1:
            # ramo aberto sem as instâncias de esquema não refuta nada
            logger.info(f"Estágio {i + 1} aberto; acrescentando {len(stages[-1]) - len(axioms)} instâncias de esquema")
    if isinstance(outcome, OpenBranch) and not complete:
        return Exhausted("axioms", f"instâncias de esquema além do limite de {budget.max_axiom_instances}")
    return outcome


def _run(root, sig, budget, extra, axioms):
    avoid = {n for n, _ in sig.constants} | {c.name for c in root.constants}
    search = _Search(sig, budget, extra, avoid)
    try:
        proof = search.solve(_Branch(root))
    except _Open as exc:
        seq = exc.branch.seq
        hintikka = check_hintikka(seq, lambda ty: search.pool(seq, ty))
        report = SaturationReport(hintikka, tuple(c.name for c in search.fresh), search.instantiations,
                                  len(axioms), search.steps)
        if not hintikka.ok:
            return Exhausted("saturation", str(hintikka.violations[0]))
        return OpenBranch(seq, root, report, tuple(axioms))
    except _Limit as exc:
        logger.info(f"Busca interrompida ({exc.dimension}): {exc.detail}")
        return Exhausted(exc.dimension, exc.detail)
    except BudgetExceeded as exc:
        return Exhausted("normalization", str(exc))
    except RecursionError:
        return Exhausted("depth", "recursão excessiva")
    verdict = check_proof(proof, sig)
    if not verdict:
        raise ITLError(f"prova rejeitada pelo verificador: {verdict.reason}")
    logger.info(f"Prova encontrada em {search.steps} passos")
    return ProofFound(proof, root, tuple(axioms))


def _theory_signature(sig, theory):
    return sig.union(theory.signature) if theory.signature is not None else sig


def prove(goal, sig, budget=None, theory=None):
    """Busca de prova com o universo de termos da assinatura."""
    budget = budget or SearchBudget()
    theory = theory or EMPTY_THEORY
    sig = _theory_signature(sig, theory)
    universe = TermUniverse(sig, budget.term_universe_depth)

    def extra(ty, occurring):
        return universe.terms(ty)

    return _staged(goal, sig, budget, extra, theory)


def saturate(goal, sig, budget=None, theory=None, extra_terms=()):
    """Saturação: só termos que ocorrem, habitantes canônicos e termos extras."""
    budget = budget or SearchBudget()
    theory = theory or EMPTY_THEORY
    sig = _theory_signature(sig, theory)
    by_type = {}
    for term in extra_terms:
        for sub in closed_subterms(desugar(term)):
            by_type.setdefault(sub.type, []).append(sub)

    def extra(ty, occurring):
        terms = list(by_type.get(ty, ()))
        if not ty.is_complex and not occurring and not terms:
            terms = sig.constants_of_type(ty)[:1]
        return terms

    return _staged(goal, sig, budget, extra, theory)


# --- Consequência ---

class Answer(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class EntailmentResult:
    answer: Answer
    outcome: Outcome
    model: Optional[FiniteModel] = None
    detail: str = ""


def _countermodel(open_branch, goal, sig, budget, theory):
    sig = _theory_signature(sig, theory or EMPTY_THEORY)
    extra: List[Term] = []
    current = open_branch
    for _ in range(MAX_CARRIER_ROUNDS):
        try:
            model = build_countermodel(current.sequent, sig, target=current.root, extra_terms=extra)
            return model, current, ""
        except ValidationFailed as exc:
            logger.info(f"Contramodelo rejeitado: {exc}")
            if not exc.terms:
                return None, current, str(exc)
            extra.extend(exc.terms)
            again = saturate(goal, sig, budget, theory, extra)
            if not isinstance(again, OpenBranch):
                return None, current, f"ressaturação: {getattr(again, 'dimension', 'prova')}"
            current = again
    return None, current, "portador não estabilizou"


def entails(premises, conclusions, sig, theory=None, budget=None):
    """Consequência relativa à teoria: yes com prova, no com ramo saturado, ou unknown."""
    budget = budget or SearchBudget()
    goal = Sequent.from_sides(premises, conclusions)
    outcome = prove(goal, sig, budget, theory)
    if isinstance(outcome, Exhausted):
        logger.info("Prova não encontrada dentro do orçamento; tentando saturação")
        outcome = saturate(goal, sig, budget, theory)
    if isinstance(outcome, ProofFound):
        return EntailmentResult(Answer.YES, outcome)
    if isinstance(outcome, OpenBranch):
        model, outcome, detail = _countermodel(outcome, goal, sig, budget, theory)
        return EntailmentResult(Answer.NO, outcome, model, detail)
    return EntailmentResult(Answer.UNKNOWN, outcome, detail=f"{outcome.dimension}: {outcome.detail}")


def refute(goal, sig, theory=None, budget=None):
    """Saturação seguida de contramodelo validado; YES aqui significa que o sequente é provável."""
    budget = budget or SearchBudget()
    outcome = saturate(goal, sig, budget, theory)
    if isinstance(outcome, ProofFound):
        return EntailmentResult(Answer.YES, outcome)
    if isinstance(outcome, OpenBranch):
        model, outcome, detail = _countermodel(outcome, goal, sig, budget, theory)
        if model is None:
            return EntailmentResult(Answer.UNKNOWN, outcome, detail=detail)
        return EntailmentResult(Answer.NO, outcome, model)
    return EntailmentResult(Answer.UNKNOWN, outcome, detail=f"{outcome.dimension}: {outcome.detail}")
