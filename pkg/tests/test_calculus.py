import pytest

from itl_calculus import (
    BASE_RULES, EMPTY_THEORY, Proof, RuleData, RuleId, SchemeGenerator, Theory, check_proof,
    lam_reduct, proof_nodes, proof_rules, sub_instances, theory_instances, weaken,
)
from itl_derived import derived_node, expand_derived
from itl_parser import parse_sequent, parse_term
from itl_sequent import L, R, Sequent
from itl_sugar import TOP_EXPANDED
from itl_syntax import App, BOTTOM, Const, ITLError, TypeMismatch, Var


def axiom(sequent, sentence):
    return Proof(sequent, RuleId.AXIOM, (), RuleData(principal=L(sentence)))


def test_axiom_and_bottom(prop_sig):
    p = prop_sig.const("p")
    assert check_proof(axiom(parse_sequent("p => p", prop_sig), p), prop_sig)
    assert check_proof(Proof(parse_sequent("bot => q", prop_sig), RuleId.BOTTOM_L), prop_sig)
    verdict = check_proof(axiom(parse_sequent("p => q", prop_sig), p), prop_sig)
    assert not verdict
    assert "Axiom" in verdict.reason


def test_implication_by_sub_r(prop_sig):
    p = prop_sig.const("p")
    concl = parse_sequent("=> p -> p", prop_sig)
    imp = parse_term("p -> p", prop_sig)
    premise = concl.add(L(p), R(p))
    proof = Proof(concl, RuleId.SUB_R, (axiom(premise, p),), RuleData(principal=R(imp)))
    assert check_proof(proof, prop_sig)
    assert proof_nodes(proof) == 2
    assert proof_rules(proof) == [RuleId.SUB_R, RuleId.AXIOM]


def test_modus_ponens_by_sub_l(prop_sig):
    p, q = prop_sig.const("p"), prop_sig.const("q")
    imp = parse_term("p -> q", prop_sig)
    concl = parse_sequent("p, p -> q => q", prop_sig)
    first = axiom(concl.add(R(p)), p)
    second = axiom(concl.add(L(q)), q)
    proof = Proof(concl, RuleId.SUB_L, (first, second), RuleData(principal=L(imp)))
    assert check_proof(proof, prop_sig)


def test_premise_that_drops_a_sentence_is_rejected(prop_sig):
    p = prop_sig.const("p")
    concl = parse_sequent("q => p -> p", prop_sig)
    imp = parse_term("p -> p", prop_sig)
    premise = Sequent.of([L(p), R(p), R(imp)])
    proof = Proof(concl, RuleId.SUB_R, (axiom(premise, p),), RuleData(principal=R(imp)))
    verdict = check_proof(proof, prop_sig)
    assert not verdict
    assert "perdeu" in verdict.reason
    assert verdict.path == ()


def test_weakening(prop_sig):
    p = prop_sig.const("p")
    inner = axiom(parse_sequent("p => p", prop_sig), p)
    target = parse_sequent("p, q => p, r", prop_sig)
    proof = weaken(inner, target)
    assert proof.rule is RuleId.W
    assert check_proof(proof, prop_sig)
    assert weaken(inner, inner.conclusion) is inner
    with pytest.raises(ITLError):
        weaken(inner, parse_sequent("q => r", prop_sig))


def test_lambda_rules(ind_sig):
    redex = parse_term("(lam x:e . P x) a", ind_sig)
    reduct = parse_term("P a", ind_sig)
    assert lam_reduct(redex) == reduct
    assert lam_reduct(reduct) is None
    concl = Sequent.of([L(redex), R(reduct)])
    proof = Proof(concl, RuleId.LAM_L, (axiom(concl.add(L(reduct)), reduct),),
                  RuleData(principal=L(redex)))
    assert check_proof(proof, ind_sig)


def test_sub_r_requires_fresh_constants(ind_sig):
    a = ind_sig.const("a")
    inclusion = parse_term("R a sub R a", ind_sig)
    concl = Sequent.of([R(inclusion)])

    def with_witness(c):
        atom = parse_term("R a", ind_sig)
        instance = App(atom, c)
        premise = concl.add(L(instance), R(instance))
        return Proof(concl, RuleId.SUB_R, (axiom(premise, instance),),
                     RuleData(principal=R(inclusion), terms=(c,)))

    verdict = check_proof(with_witness(a), ind_sig)
    assert not verdict
    assert "frescor" in verdict.reason
    assert check_proof(with_witness(Const("_c0", a.type)), ind_sig)
    undeclared = check_proof(with_witness(Const("d", a.type)), ind_sig)
    assert not undeclared


def test_sub_l_rejects_open_instantiation(ind_sig):
    inclusion = parse_term("P sub Q", ind_sig)
    concl = Sequent.of([L(inclusion)])
    x = Var("x", ind_sig.const("a").type)
    proof = Proof(concl, RuleId.SUB_L, (Proof(concl, RuleId.BOTTOM_L), Proof(concl, RuleId.BOTTOM_L)),
                  RuleData(principal=L(inclusion), terms=(x,)))
    verdict = check_proof(proof, ind_sig)
    assert not verdict
    assert "aberto" in verdict.reason


def test_sub_instances_checks_arity(ind_sig):
    inclusion = parse_term("P sub Q", ind_sig)
    with pytest.raises(TypeMismatch):
        sub_instances(inclusion, ())
    left, right = sub_instances(inclusion, (ind_sig.const("a"),))
    assert left == parse_term("P a", ind_sig)
    assert right == parse_term("Q a", ind_sig)


def test_derived_rules_must_be_expanded(prop_sig):
    concl = parse_sequent("=> top", prop_sig)
    node = derived_node(concl, RuleId.TOP_R)
    verdict = check_proof(node, prop_sig)
    assert not verdict
    assert "derivada" in verdict.reason
    expanded = expand_derived(node)
    assert check_proof(expanded, prop_sig)
    assert set(proof_rules(expanded)) <= BASE_RULES
    assert expanded.conclusion == concl


def test_undeclared_constant_in_conclusion(prop_sig):
    s = Const("s", BOTTOM.type)
    proof = axiom(Sequent.of([L(s), R(s)]), s)
    verdict = check_proof(proof, prop_sig)
    assert not verdict
    assert "s" in verdict.reason


def test_theory_instances_are_closed_and_deduplicated(prop_sig):
    p = prop_sig.const("p")
    gen = SchemeGenerator("refl", lambda tup: parse_term("p -> p", prop_sig) if tup[0] == p else tup[0],
                          lambda terms: [(t,) for t in terms])
    theory = Theory("teste", (TOP_EXPANDED,), (gen,))
    instances = theory_instances(theory, [("refl", (p,)), ("refl", (p,))])
    assert instances == [TOP_EXPANDED, parse_term("p -> p", prop_sig)]
    assert theory.requests_for([p]) == [("refl", (p,))]
    with pytest.raises(ITLError):
        theory.generator("outro")
    assert EMPTY_THEORY.union(theory).axioms == (TOP_EXPANDED,)
