#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
ITL Kernel - linha de comando

Comandos: check, prove, saturate, verify-proof, model-eval, refute,
hintikka-check, normalize-model, translate, entail, worlds-goals e corpus.
Códigos de saída: 0 veredito pedido obtido, 1 veredito negativo,
2 desconhecido (orçamento), 3 erro de uso ou de entrada.
"""

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime

from budget_profile_manager import BudgetProfileManager
from config import (
    DEFAULT_PROFILE, EXIT_NEGATIVE, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE, LOG_FORMAT, PROFILES_DIR,
)
from itl_calculus import check_proof, proof_nodes
from itl_fragment import (
    LAMBDA_CONVERSION, NAMES, STRUCTURES, Untranslatable, fragment_entails, load_entailment_corpus,
    normal_translations, parse_structure, postulates,
)
from itl_hintikka import check_hintikka, default_universe
from itl_model_io import load_model, save_model
from itl_models import check_model, is_normal, normalize_model, refutes, sentence_value
from itl_parser import load_signature, parse_sequent, parse_term
from itl_printer import print_term, print_type
from itl_proof_io import load_proof, save_proof
from itl_prover import Answer, OpenBranch, ProofFound, SearchBudget, prove, refute, saturate
from itl_syntax import ITLError, Signature
from itl_worlds import worlds_theory
from itl_worlds_goals import run_corpus

logger = logging.getLogger(__name__)

BASE_DIR = os.path.dirname(os.path.abspath(__file__))


class UsageError(ITLError):
    """Argumentos ausentes ou inconsistentes."""


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: erro: {message}\n")


def theory_registry():
    return {
        "lambda-conv": LAMBDA_CONVERSION,
        "names": NAMES,
        "worlds": worlds_theory(),
        "worlds-w0": worlds_theory(actual_world=True),
    }


class Report:
    """Saída de um comando: linhas para humanos e campos para o formato estruturado."""

    def __init__(self, command, fmt="human", timestamp=True):
        self.command = command
        self.fmt = fmt
        self.timestamp = timestamp
        self.lines = []
        self.fields = {}

    def say(self, text):
        self.lines.append(text)

    def set(self, key, value):
        self.fields[key] = value

    def append(self, key, value):
        self.fields.setdefault(key, []).append(value)

    def render(self):
        if self.fmt == "structured":
            payload = {"command": self.command}
            if self.timestamp:
                payload["timestamp"] = datetime.now().isoformat(timespec="seconds")
            payload.update(self.fields)
            return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)
        return "\n".join(self.lines)


class Application:
    """Executa um comando já analisado pelo argparse."""

    def __init__(self, args):
        self.args = args
        self.report = Report(args.command, args.format, not args.no_timestamp)
        self._sig = None

    # --- entradas ---

    def budget(self):
        args = self.args
        if args.profile:
            manager = BudgetProfileManager(os.path.join(BASE_DIR, PROFILES_DIR))
            budget = manager.load_budget(args.profile)
            if budget is None:
                raise UsageError(f"perfil de orçamento inválido: {args.profile}")
        else:
            budget = SearchBudget()
        return budget.override(
            max_depth=args.budget_depth,
            max_instantiations=args.budget_insts,
            max_axiom_instances=args.budget_axioms,
            term_universe_depth=args.universe_depth,
            time_limit=args.time_limit,
        )

    def theory(self):
        if not self.args.theory:
            return None
        registry = theory_registry()
        theory = None
        for name in self.args.theory:
            if name not in registry:
                raise UsageError(f"teoria desconhecida: {name} (opções: {', '.join(sorted(registry))})")
            theory = registry[name] if theory is None else theory.union(registry[name])
        return theory

    def signature(self):
        if self._sig is None:
            sig = load_signature(self.args.sig) if self.args.sig else Signature()
            theory = self.theory()
            if theory is not None and theory.signature is not None:
                sig = sig.union(theory.signature)
            self._sig = sig
        return self._sig

    def items(self, paths=None):
        """Linhas não vazias dos arquivos de entrada, seguidas das expressões -e."""
        texts = []
        for path in self.args.inputs if paths is None else paths:
            with open(path, "r", encoding="utf-8") as f:
                for line in f:
                    line = line.split("#", 1)[0].strip()
                    if line:
                        texts.append(line)
        texts.extend(self.args.expr or [])
        return texts

    def required_items(self, what):
        texts = self.items()
        if not texts:
            raise UsageError(f"nenhum(a) {what} informado(a)")
        return texts

    def goal(self, text):
        if "=>" in text:
            return parse_sequent(text, self.signature())
        return parse_sequent(f"=> {text}", self.signature())

    def out_path(self, index, count):
        out = self.args.out
        if not out or count == 1:
            return out
        root, ext = os.path.splitext(out)
        return f"{root}-{index + 1}{ext}"

    # --- comandos ---

    def cmd_check(self):
        sig = self.signature()
        for text in self.required_items("termo ou sequente"):
            if "=>" in text:
                seq = parse_sequent(text, sig)
                self.report.say(f"sequente: {seq}")
                self.report.append("items", {"sequent": str(seq)})
            else:
                term = parse_term(text, sig)
                self.report.say(f"{print_term(term)} : {print_type(term.type)}")
                self.report.append("items", {"term": print_term(term), "type": print_type(term.type)})
        return EXIT_OK

    def cmd_prove(self):
        sig, theory, budget = self.signature(), self.theory(), self.budget()
        goals = [self.goal(t) for t in self.required_items("sequente")]
        status = EXIT_OK
        for i, goal in enumerate(goals):
            outcome = prove(goal, sig, budget, theory)
            entry = {"goal": str(goal)}
            if isinstance(outcome, ProofFound):
                entry.update(verdict="proved", nodes=proof_nodes(outcome.proof))
                self.report.say(f"{goal}: provado ({proof_nodes(outcome.proof)} nós)")
                out = self.out_path(i, len(goals))
                if out and not save_proof(out, outcome.proof, sig):
                    status = max(status, EXIT_USAGE)
            elif isinstance(outcome, OpenBranch):
                entry.update(verdict="open", report=outcome.report.lines())
                self.report.say(f"{goal}: ramo aberto saturado")
                status = max(status, EXIT_NEGATIVE)
            else:
                entry.update(verdict="unknown", dimension=outcome.dimension, detail=outcome.detail)
                self.report.say(f"{goal}: orçamento esgotado ({outcome.dimension})")
                status = max(status, EXIT_UNKNOWN)
            self.report.append("goals", entry)
        return status

    def cmd_saturate(self):
        sig, theory, budget = self.signature(), self.theory(), self.budget()
        status = EXIT_OK
        for text in self.required_items("sequente"):
            goal = self.goal(text)
            outcome = saturate(goal, sig, budget, theory)
            entry = {"goal": str(goal)}
            if isinstance(outcome, OpenBranch):
                lines = outcome.report.lines()
                entry.update(verdict="saturated", branch=str(outcome.sequent), report=lines)
                self.report.say(f"{goal}: saturado")
                self.report.lines.extend(f"  {line}" for line in lines)
            elif isinstance(outcome, ProofFound):
                entry.update(verdict="proved")
                self.report.say(f"{goal}: provável, sem ramo aberto")
                status = max(status, EXIT_NEGATIVE)
            else:
                entry.update(verdict="unknown", dimension=outcome.dimension)
                self.report.say(f"{goal}: orçamento esgotado ({outcome.dimension})")
                status = max(status, EXIT_UNKNOWN)
            self.report.append("goals", entry)
        return status

    def cmd_verify_proof(self):
        if not self.args.inputs:
            raise UsageError("nenhum arquivo de prova informado")
        given = load_signature(self.args.sig) if self.args.sig else None
        status = EXIT_OK
        for path in self.args.inputs:
            proof, sig = load_proof(path, given)
            verdict = check_proof(proof, sig)
            entry = {"file": os.path.basename(path), "ok": bool(verdict)}
            if verdict:
                self.report.say(f"{path}: prova aceita ({proof_nodes(proof)} nós)")
            else:
                entry.update(path=list(verdict.path), reason=verdict.reason)
                self.report.say(f"{path}: rejeitada em {list(verdict.path)}: {verdict.reason}")
                status = EXIT_NEGATIVE
            self.report.append("proofs", entry)
        return status

    def _model_and_sentences(self):
        if not self.args.inputs:
            raise UsageError("nenhum arquivo de modelo informado")
        m = load_model(self.args.inputs[0])
        return m, self.items(self.args.inputs[1:])

    def cmd_model_eval(self):
        m, texts = self._model_and_sentences()
        sentences = []
        for text in texts:
            if "=>" in text:
                seq = parse_sequent(text, m.signature)
                sentences.extend(s.sentence for s in seq)
                verdict = refutes(m, seq)
                self.report.say(f"{seq}: {'refutado' if verdict else 'não refutado'}")
                self.report.append("sequents", {"sequent": str(seq), "refuted": verdict})
            else:
                term = parse_term(text, m.signature)
                sentences.append(term)
                value = sentence_value(m, term)
                self.report.say(f"{print_term(term)} = {value}")
                self.report.append("sentences", {"sentence": print_term(term), "value": value})
        report = check_model(m, sentences)
        self.report.set("well_formed", report.ok)
        self.report.set("checked", report.checked)
        for v in report.violations:
            self.report.say(f"violação ({v.kind}): {v.detail}")
            self.report.append("violations", {"kind": v.kind, "detail": v.detail})
        self.report.say("modelo bem formado" if report.ok else "modelo com violações")
        return EXIT_OK if report.ok else EXIT_NEGATIVE

    def cmd_refute(self):
        sig, theory, budget = self.signature(), self.theory(), self.budget()
        goals = [self.goal(t) for t in self.required_items("sequente")]
        status = EXIT_OK
        for i, goal in enumerate(goals):
            result = refute(goal, sig, theory, budget)
            entry = {"goal": str(goal), "verdict": result.answer.value}
            if result.answer is Answer.NO:
                m = result.model
                sizes = {print_type(ty): len(toks) for ty, toks in sorted(m.domains.items(), key=lambda kv: str(kv[0]))}
                entry["domains"] = sizes
                self.report.say(f"{goal}: refutado por modelo com {sum(sizes.values())} tokens")
                out = self.out_path(i, len(goals))
                if out and not save_model(out, m):
                    status = max(status, EXIT_USAGE)
            elif result.answer is Answer.YES:
                self.report.say(f"{goal}: provável, não há contramodelo")
                status = max(status, EXIT_NEGATIVE)
            else:
                entry["detail"] = result.detail
                self.report.say(f"{goal}: sem veredito ({result.detail})")
                status = max(status, EXIT_UNKNOWN)
            self.report.append("goals", entry)
        return status

    def cmd_hintikka_check(self):
        sig = self.signature()
        status = EXIT_OK
        for text in self.required_items("sequente"):
            seq = self.goal(text)
            report = check_hintikka(seq, default_universe(seq, sig))
            violations = [str(v) for v in report.violations]
            self.report.append("sequents", {
                "sequent": str(seq),
                "ok": report.ok,
                "violations": violations,
                "coverage": {str(k): n for k, n in sorted(report.coverage.items())},
                "universe_size": report.universe_size,
            })
            self.report.say(f"{seq}: {'Hintikka' if report.ok else f'{len(violations)} violações'}")
            self.report.lines.extend(f"  {v}" for v in violations)
            if not report.ok:
                status = EXIT_NEGATIVE
        return status

    def cmd_normalize_model(self):
        m, texts = self._model_and_sentences()
        sentences = [parse_term(t, m.signature) for t in texts]
        before = sum(len(d) for d in m.domains.values())
        normal = normalize_model(m, sentences)
        after = sum(len(d) for d in normal.domains.values())
        ok = is_normal(normal)
        self.report.set("tokens_before", before)
        self.report.set("tokens_after", after)
        self.report.set("normal", ok)
        self.report.say(f"tokens: {before} -> {after}; {'normal' if ok else 'ainda não normal'}")
        if self.args.out and not save_model(self.args.out, normal):
            return EXIT_USAGE
        return EXIT_OK if ok else EXIT_NEGATIVE

    def cmd_translate(self):
        status = EXIT_OK
        for text in self.required_items("estrutura"):
            structure = parse_structure(STRUCTURES.get(text, text))
            translations = [print_term(t) for t in normal_translations(structure)]
            self.report.append("structures", {"structure": str(structure), "translations": translations})
            if not translations:
                self.report.say(f"{structure}: sem tradução")
                status = EXIT_NEGATIVE
                continue
            self.report.say(f"{structure}:")
            self.report.lines.extend(f"  {t}" for t in translations)
        return status

    def cmd_entail(self):
        if not self.args.premise or not self.args.conclusion:
            raise UsageError("entail exige --premise e --conclusion")
        posts = self.args.theory or ["lambda-conv"]
        premises = [STRUCTURES.get(p, p) for p in self.args.premise]
        conclusion = STRUCTURES.get(self.args.conclusion, self.args.conclusion)
        verdict = fragment_entails(premises, conclusion, posts, self.budget())
        result = verdict.result
        self.report.set("verdict", result.answer.value)
        self.report.set("premises", [print_term(p) for p in verdict.premises])
        self.report.set("conclusion", print_term(verdict.conclusion))
        if result.answer is Answer.YES:
            self.report.say("consequência provada")
            if self.args.out and not save_proof(self.args.out, result.outcome.proof, postulates(posts).signature):
                return EXIT_USAGE
            return EXIT_OK
        if result.answer is Answer.NO:
            certified = result.model is not None
            self.report.set("certified", certified)
            self.report.say("não é consequência" + (" (contramodelo validado)" if certified else f" ({result.detail})"))
            if certified and self.args.out and not save_model(self.args.out, result.model):
                return EXIT_USAGE
            return EXIT_NEGATIVE
        self.report.say(f"sem veredito: {result.detail}")
        return EXIT_UNKNOWN

    def cmd_worlds_goals(self):
        results = run_corpus(budget=self.budget(), names=self.items())
        if not results:
            raise UsageError("nenhum objetivo selecionado")
        for r in results:
            self.report.append("goals", {"name": r.name, "mode": r.mode, "passed": r.passed, "detail": r.detail})
            mark = "ok" if r.passed else f"FALHOU {r.detail}"
            self.report.say(f"[{r.mode}] {r.name}: {mark}")
        passed = sum(r.passed for r in results)
        self.report.set("passed", passed)
        self.report.set("total", len(results))
        self.report.say(f"{passed}/{len(results)} objetivos aprovados")
        return EXIT_OK if passed == len(results) else EXIT_NEGATIVE

    def _run_case(self, case, budget):
        try:
            verdict = fragment_entails(list(case.premises), case.conclusion, case.postulates, budget)
        except Untranslatable as exc:
            return "error", str(exc)
        return verdict.answer.value, verdict.result.detail

    def cmd_corpus(self):
        if not self.args.inputs:
            raise UsageError("nenhum arquivo de corpus informado")
        cases = [case for path in self.args.inputs for case in load_entailment_corpus(path)]
        budget = self.budget()
        with ThreadPoolExecutor(max_workers=self.args.jobs) as pool:
            outcomes = list(pool.map(lambda case: self._run_case(case, budget), cases))
        passed = 0
        for case, (answer, detail) in zip(cases, outcomes):
            ok = answer == case.expected
            passed += ok
            self.report.append("cases", {"name": case.name, "expected": case.expected, "answer": answer, "ok": ok})
            self.report.say(f"{case.name}: {answer} (esperado {case.expected}){'' if ok else ' <- divergente'}")
        self.report.set("passed", passed)
        self.report.set("total", len(cases))
        self.report.say(f"{passed}/{len(cases)} consultas conferem")
        return EXIT_OK if passed == len(cases) else EXIT_NEGATIVE

    def run(self):
        handler = getattr(self, "cmd_" + self.args.command.replace("-", "_"))
        status = handler()
        print(self.report.render())
        return status


COMMANDS = {
    "check": "lê e verifica tipos de termos e sequentes",
    "prove": "busca uma prova do sequente",
    "saturate": "satura o sequente e relata o ramo aberto",
    "verify-proof": "confere arquivos de prova com o verificador",
    "model-eval": "avalia sentenças num modelo e confere sua boa formação",
    "refute": "saturação, contramodelo e validação",
    "hintikka-check": "confere as condições de Hintikka de um sequente",
    "normalize-model": "quociente de um modelo pela similaridade",
    "translate": "traduções normais de estruturas do fragmento",
    "entail": "consequência entre sentenças do fragmento",
    "worlds-goals": "roda o corpus de objetivos de mundos",
    "corpus": "roda um corpus de consultas de consequência",
}


def build_parser():
    common = ArgumentParser(add_help=False)
    common.add_argument("inputs", nargs="*", help="arquivos de entrada")
    common.add_argument("-e", "--expr", action="append", help="termo, sequente ou estrutura em linha")
    common.add_argument("--sig", help="arquivo de assinatura")
    common.add_argument("--theory", action="append", help="teoria ou conjunto de postulados (repetível)")
    common.add_argument("--profile", help=f"perfil de orçamento (ex.: {DEFAULT_PROFILE})")
    common.add_argument("--budget-depth", type=int)
    common.add_argument("--budget-insts", type=int)
    common.add_argument("--budget-axioms", type=int)
    common.add_argument("--universe-depth", type=int)
    common.add_argument("--time-limit", type=float)
    common.add_argument("--out", help="arquivo de saída (prova ou modelo)")
    common.add_argument("--format", choices=("human", "structured"), default="human")
    common.add_argument("--no-timestamp", action="store_true")
    common.add_argument("--verbose", action="store_true")

    parser = ArgumentParser(prog="itl", description="Kernel de prova e modelos da lógica de tipos intensional")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)
    for name, text in COMMANDS.items():
        cmd = sub.add_parser(name, parents=[common], help=text)
        if name == "entail":
            cmd.add_argument("--premise", action="append", help="estrutura ou nome do corpus (repetível)")
            cmd.add_argument("--conclusion")
        if name == "corpus":
            cmd.add_argument("--jobs", type=int, default=4)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format=LOG_FORMAT)
    try:
        return Application(args).run()
    except ITLError as e:
        logger.error(f"Erro: {e}")
        print(f"erro: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as e:
        logger.error(f"Erro de entrada: {e}")
        print(f"erro de entrada: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
