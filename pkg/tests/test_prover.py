import numpy as np
import pytest

from itl_calculus import RuleId, Theory, check_proof, proof_rules
from itl_fragment import LAMBDA_CONVERSION
from itl_model_io import TermSampler
from itl_models import CarrierEscape, check_model, refutes
from itl_parser import parse_sequent, parse_signature, parse_term, parse_type
from itl_prover import (
    Answer, Exhausted, OpenBranch, ProofFound, SearchBudget, TermUniverse, closing_leaf,
    _theory_stages, entails, prove, refute, saturate,
)
from itl_sequent import Sequent
from itl_syntax import BOTTOM, Imp, PROP, canonical_inhabitant

TAUTOLOGIES = [
    "p => p",
    "=> p -> p",
    "=> p | ~p",
    "p & q => q & p",
    "=> ((p -> q) -> p) -> p",
    "p, p -> q, q -> r => r",
    "bot => p",
    "=> top",
]

HIGHER_GOALS = [
    "forall x:e . P x => P a",
    "P a => exists x:e . P x",
    "=> forall X:<e> . X a -> X a",
    "(lam x:e . P x) a => P a",
    "F P => F P",
]


@pytest.mark.parametrize("text", TAUTOLOGIES)
def test_propositional_tautologies(prop_sig, budget, text):
    goal = parse_sequent(text, prop_sig)
    outcome = prove(goal, prop_sig, budget)
    assert isinstance(outcome, ProofFound)
    assert outcome.proof.conclusion == goal
    assert check_proof(outcome.proof, prop_sig)


@pytest.mark.parametrize("text", HIGHER_GOALS)
def test_higher_order_goals_are_sound(higher_sig, budget, model_pool, text):
    goal = parse_sequent(text, higher_sig)
    outcome = prove(goal, higher_sig, budget)
    assert isinstance(outcome, ProofFound)
    assert not any(refutes(m, goal) for m in model_pool)


def test_unprovable_atom_gives_open_branch(prop_sig, budget):
    goal = parse_sequent("=> p", prop_sig)
    outcome = saturate(goal, prop_sig, budget)
    assert isinstance(outcome, OpenBranch)
    assert outcome.root == goal
    assert outcome.report.hintikka.ok
    assert outcome.report.lines()[0].startswith("passos:")


def test_refute_builds_validated_countermodel(prop_sig, budget):
    goal = parse_sequent("p -> q => q -> p", prop_sig)
    result = refute(goal, prop_sig, budget=budget)
    assert result.answer is Answer.NO
    assert refutes(result.model, goal)
    assert check_model(result.model, [m.sentence for m in goal]).ok
    assert refute(parse_sequent("p => p", prop_sig), prop_sig, budget=budget).answer is Answer.YES


def test_coextensive_propositions_need_not_be_equal(prop_sig, budget):
    goal = parse_sequent("p <-> q => p = q", prop_sig)
    result = refute(goal, prop_sig, budget=budget)
    assert result.answer is Answer.NO
    assert refutes(result.model, goal)
    assert check_model(result.model, [m.sentence for m in goal]).ok


def test_lambda_conversion_is_not_built_in(higher_sig, budget):
    goal = parse_sequent("F P => F (lam x:e . P x)", higher_sig)
    outcome = prove(goal, higher_sig, budget)
    assert not isinstance(outcome, ProofFound)


def test_entailment_answers(prop_sig, budget):
    p, q = prop_sig.const("p"), prop_sig.const("q")
    imp = parse_term("p -> q", prop_sig)
    yes = entails([p, imp], [q], prop_sig, budget=budget)
    assert yes.answer is Answer.YES
    assert RuleId.SUB_L in proof_rules(yes.outcome.proof)
    no = entails([p], [q], prop_sig, budget=budget)
    assert no.answer is Answer.NO
    assert no.model is not None
    assert refutes(no.model, parse_sequent("p => q", prop_sig))


def test_theory_axioms_are_used(prop_sig, budget):
    q = prop_sig.const("q")
    theory = Theory("teste", (parse_term("p", prop_sig), parse_term("p -> q", prop_sig)))
    result = entails([], [q], prop_sig, theory, budget)
    assert result.answer is Answer.YES
    assert len(result.outcome.axioms) == 2


def test_depth_budget_is_reported(prop_sig):
    goal = parse_sequent("=> ((p -> q) -> p) -> p", prop_sig)
    outcome = prove(goal, prop_sig, SearchBudget(max_depth=1))
    assert isinstance(outcome, Exhausted)
    assert outcome.dimension == "depth"


def test_closing_leaf(prop_sig):
    assert closing_leaf(parse_sequent("p => p", prop_sig)).rule is RuleId.AXIOM
    assert closing_leaf(parse_sequent("bot => q", prop_sig)).rule is RuleId.BOTTOM_L
    assert closing_leaf(parse_sequent("p => q", prop_sig)) is None


def test_term_universe(ind_sig):
    universe = TermUniverse(ind_sig, depth=1)
    pred = ind_sig.const("P").type
    terms = universe.terms(pred)
    assert terms[0] == canonical_inhabitant(pred)
    assert ind_sig.const("P") in terms and ind_sig.const("Q") in terms
    deeper = TermUniverse(ind_sig, depth=2).terms(pred)
    assert parse_term("R a", ind_sig) in deeper


def test_budget_values():
    budget = SearchBudget()
    assert SearchBudget.from_dict(budget.to_dict()) == budget
    assert SearchBudget.from_dict({"max_depth": 7, "desconhecido": 1}).max_depth == 7
    changed = budget.override(max_depth=10, time_limit=None)
    assert changed.max_depth == 10
    assert changed.time_limit == budget.time_limit
    with pytest.raises(ValueError):
        SearchBudget(max_instantiations=0)


BETA_SIG_TEXT = """
type e
const a : e
const P : <e>
const K : <<>>
"""


def test_open_branch_without_scheme_instances_is_not_a_refutation():
    sig = parse_signature(BETA_SIG_TEXT)
    premise = parse_term("K ((lam x:e . P x) a)", sig)
    conclusion = parse_term("K (P a)", sig)
    for depth in (1, 2):
        tight = SearchBudget(max_depth=depth, time_limit=5.0)
        result = entails([premise], [conclusion], sig, LAMBDA_CONVERSION, tight)
        assert result.answer is Answer.UNKNOWN
        assert result.model is None
    roomy = SearchBudget(max_depth=600, max_instantiations=8, max_axiom_instances=32, time_limit=20.0)
    result = entails([premise], [conclusion], sig, LAMBDA_CONVERSION, roomy)
    assert result.answer is Answer.YES


def test_truncated_scheme_instances_block_open_branches():
    sig = parse_signature(BETA_SIG_TEXT)
    goal = parse_sequent("K ((lam x:e . P x) a), K ((lam y:e . P y) a) => P a", sig)
    outcome = saturate(goal, sig, SearchBudget(max_axiom_instances=1, time_limit=5.0), LAMBDA_CONVERSION)
    assert not isinstance(outcome, OpenBranch)



def test_theory_without_requested_instances_runs_one_stage(prop_sig, budget):
    stages, complete = _theory_stages(parse_sequent("p => q", prop_sig), LAMBDA_CONVERSION, budget)
    assert complete
    assert len(stages) == 1

    sig = parse_signature(BETA_SIG_TEXT)
    goal = parse_sequent("K ((lam x:e . P x) a) => K (P a)", sig)
    stages, complete = _theory_stages(goal, LAMBDA_CONVERSION, budget)
    assert complete
    assert len(stages) == 2 and len(stages[1]) > len(stages[0])


PROVABLE_SHAPES = [
    lambda phi, psi: Sequent.from_sides([phi], [phi]),
    lambda phi, psi: Sequent.from_sides([], [Imp(phi, phi)]),
    lambda phi, psi: Sequent.from_sides([phi, Imp(phi, psi)], [psi]),
    lambda phi, psi: Sequent.from_sides([phi, psi], [phi]),
    lambda phi, psi: Sequent.from_sides([phi], [Imp(psi, phi)]),
    lambda phi, psi: Sequent.from_sides([BOTTOM], [phi]),
]


def test_found_proofs_are_not_refuted_by_random_models(higher_sig, budget, model_pool):
    types = [parse_type(t) for t in ("e", "<>", "<e>", "<<>>")]
    sampler = TermSampler(higher_sig, np.random.default_rng(5), types)
    proved = []
    for i in range(72):
        phi, psi = sampler.term(PROP, depth=2), sampler.term(PROP, depth=2)
        goal = PROVABLE_SHAPES[i % len(PROVABLE_SHAPES)](phi, psi)
        outcome = prove(goal, higher_sig, budget)
        if isinstance(outcome, ProofFound):
            assert check_proof(outcome.proof, higher_sig)
            proved.append(goal)
    assert len(proved) >= 50
    evaluated = 0
    for goal in proved:
        for m in model_pool:
            try:
                assert not refutes(m, goal), str(goal)
            except CarrierEscape:
                continue
            evaluated += 1
    assert evaluated >= len(proved) * len(model_pool) // 2
