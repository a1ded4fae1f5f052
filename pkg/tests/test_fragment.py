import os

import pytest

from itl_calculus import check_proof
from itl_fragment import (
    FRAGMENT_SIGNATURE, LAMBDA_CONVERSION, NAMES, NAMES_SIGNATURE, STRUCTURES, Pair,
    UnknownWord, Untranslatable, Word, fragment_entails, load_entailment_corpus,
    load_structure_corpus, normal_translations, parse_structure, postulates, translate,
)
from itl_hintikka import build_countermodel, check_hintikka, default_universe
from itl_lambda import alpha_eq
from itl_models import check_model, refutes
from itl_parser import parse_term
from itl_prover import Answer, SearchBudget
from itl_sequent import L, R, Sequent
from itl_syntax import App, ITLError, ITLSyntaxError, PROP, is_closed


def test_parse_structure():
    assert parse_structure("[Tully runs]") == Pair(Word("Tully"), Word("runs"))
    assert str(parse_structure("[Tully [is Cicero]]")) == "[Tully [is Cicero]]"
    with pytest.raises(UnknownWord):
        parse_structure("[Tully walks]")
    with pytest.raises(ITLSyntaxError):
        parse_structure("[Tully runs")
    with pytest.raises(ITLSyntaxError):
        parse_structure("[Tully runs laughs]")


def test_translation_picks_well_typed_application():
    sig = FRAGMENT_SIGNATURE
    assert translate(parse_structure("[Tully runs]")) == frozenset({App(sig.const("tully"), sig.const("run"))})
    assert translate(parse_structure("[runs laughs]")) == frozenset()


def test_conditional_translation():
    normal = normal_translations(parse_structure(STRUCTURES["1a"]))
    assert len(normal) == 1
    expected = parse_term("(exists x:e . unicorn x & run x) -> ~(exists x:e . man x & laugh x)",
                          FRAGMENT_SIGNATURE)
    assert alpha_eq(normal[0], expected)


@pytest.mark.parametrize("name", sorted(STRUCTURES))
def test_structures_translate_to_closed_sentences(name):
    normal = normal_translations(parse_structure(STRUCTURES[name]))
    assert normal
    assert all(t.type == PROP and is_closed(t) for t in normal)


def test_postulate_sets():
    assert postulates([]).signature == FRAGMENT_SIGNATURE
    both = postulates(["names", "lambda-conv"])
    assert both.signature == NAMES_SIGNATURE
    assert len(both.axioms) == len(NAMES.axioms)
    assert {g.name for g in both.generators} == {"alpha", "beta", "eta"}
    with pytest.raises(ITLError):
        postulates(["outra"])


def test_lambda_conversion_instances():
    sig = NAMES_SIGNATURE
    redex = parse_term("(lam x:e . run x) a", sig)
    requests = LAMBDA_CONVERSION.requests_for([redex])
    assert ("beta", (redex,)) in requests
    beta = LAMBDA_CONVERSION.generator("beta").build((redex,))
    assert beta == parse_term("(lam x:e . run x) a = run a", sig)
    lam = parse_term("lam y:e . run y", sig)
    eta = LAMBDA_CONVERSION.generator("eta").build((lam,))
    assert eta == parse_term("(lam y:e . run y) = run", sig)
    alpha = LAMBDA_CONVERSION.requests_for([lam, parse_term("lam z:e . run z", sig)])
    assert any(name == "alpha" for name, _ in alpha)


def test_propositional_equivalence_in_fragment(budget):
    verdict = fragment_entails(STRUCTURES["1a"], STRUCTURES["1c"], budget=budget)
    assert verdict.answer is Answer.YES
    assert len(verdict.premises) == 1


def refuted(verdict):
    assert verdict.answer is Answer.NO
    model = verdict.result.model
    assert model is not None
    goal = Sequent.from_sides(verdict.premises, [verdict.conclusion])
    assert refutes(model, goal)
    assert check_model(model, [*verdict.premises, verdict.conclusion]).ok
    return model


def test_attitude_contexts_do_not_license_substitution():
    budget = SearchBudget(max_depth=300, max_instantiations=4, max_axiom_instances=8, time_limit=5.0)
    refuted(fragment_entails(STRUCTURES["2a"], STRUCTURES["2c"], budget=budget))


def test_knowing_one_equivalent_is_not_knowing_the_other():
    sig = NAMES_SIGNATURE
    first = normal_translations(parse_structure(STRUCTURES["1a"]))[0]
    second = normal_translations(parse_structure(STRUCTURES["1c"]))[0]
    assert first != second
    know, c = sig.const("know"), sig.const("c")
    seq = Sequent.of([L(App(App(know, c), first)), R(App(App(know, c), second))])
    assert check_hintikka(seq, default_universe(seq, sig)).ok
    model = build_countermodel(seq, sig)
    assert refutes(model, seq)
    assert check_model(model, [s.sentence for s in seq]).ok


def test_names_license_extensional_substitution():
    premises = [STRUCTURES["tully-runs"], STRUCTURES["tully-is-cicero"]]
    verdict = fragment_entails(premises, STRUCTURES["cicero-runs"], posts=["names"])
    assert verdict.answer is Answer.YES
    assert check_proof(verdict.result.outcome.proof, NAMES_SIGNATURE)


def test_belief_is_opaque_even_with_names():
    premises = [STRUCTURES["ann-believes-tully"], STRUCTURES["tully-is-cicero"]]
    refuted(fragment_entails(premises, STRUCTURES["ann-believes-cicero"], posts=["names", "lambda-conv"]))


def test_untranslatable_conclusion(budget):
    with pytest.raises(Untranslatable) as info:
        fragment_entails("[Tully runs]", "[runs laughs]", budget=budget)
    assert info.value.side == "conclusão"


def test_corpus_files(root_dir):
    structures = load_structure_corpus(os.path.join(root_dir, "corpus", "fragment.txt"))
    assert len(structures) == 11
    cases = load_entailment_corpus(os.path.join(root_dir, "corpus", "entailments.json"))
    assert [c.name for c in cases][:2] == ["1a-1c", "1c-1a"]
    assert cases[0].premises == (STRUCTURES["1a"],)
    assert {c.expected for c in cases} <= {"yes", "no", "unknown"}
