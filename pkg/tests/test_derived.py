import pytest

from itl_calculus import BASE_RULES, RuleId, check_proof, proof_rules
from itl_derived import ExpansionError, all_l_premise, all_r_premise, derived_node, eq_l_premise, expand_derived
from itl_parser import parse_sequent, parse_term
from itl_prover import closing_leaf
from itl_sequent import L, R
from itl_syntax import BOTTOM, Const, Var


def leaf(seq):
    proof = closing_leaf(seq)
    assert proof is not None, str(seq)
    return proof


def accepted(node, sig):
    proof = expand_derived(node)
    assert proof.conclusion == node.conclusion
    assert set(proof_rules(proof)) <= BASE_RULES
    verdict = check_proof(proof, sig)
    assert verdict, verdict.reason
    return proof


@pytest.mark.parametrize("text", ["=> top", "p => top, q"])
def test_top_r(prop_sig, text):
    accepted(derived_node(parse_sequent(text, prop_sig), RuleId.TOP_R), prop_sig)


@pytest.mark.parametrize("text,left,right", [
    ("=> p -> p", "p", "p"),
    ("q => p -> q", "p", "q"),
])
def test_imp_r(prop_sig, text, left, right):
    goal = parse_sequent(text, prop_sig)
    principal = R(goal.right()[0])
    premise = goal.add(L(parse_term(left, prop_sig))).add(R(parse_term(right, prop_sig)))
    accepted(derived_node(goal, RuleId.IMP_R, [leaf(premise)], principal), prop_sig)


@pytest.mark.parametrize("text,antecedent,consequent", [
    ("p -> q, p => q", "p", "q"),
    ("p -> bot, p => r", "p", "bot"),
])
def test_imp_l(prop_sig, text, antecedent, consequent):
    goal = parse_sequent(text, prop_sig)
    imp = parse_term(f"{antecedent} -> {consequent}", prop_sig)
    first = goal.add(R(parse_term(antecedent, prop_sig)))
    second = goal.add(L(parse_term(consequent, prop_sig)))
    node = derived_node(goal, RuleId.IMP_L, [leaf(first), leaf(second)], L(imp))
    accepted(node, prop_sig)


@pytest.mark.parametrize("text,witness", [
    ("forall x:e . P x => P a", "a"),
    ("forall x:e . P x, Q b => P b", "b"),
])
def test_all_l(ind_sig, text, witness):
    goal = parse_sequent(text, ind_sig)
    principal = L(parse_term("forall x:e . P x", ind_sig))
    w = ind_sig.const(witness)
    premise = all_l_premise(goal, principal, w)
    accepted(derived_node(goal, RuleId.ALL_L, [leaf(premise)], principal, [w]), ind_sig)


def test_all_r(ind_sig):
    e = ind_sig.const("a").type
    c = Const("_c0", e)

    goal = parse_sequent("bot => forall x:e . P x", ind_sig)
    principal = R(goal.right()[0])
    premise = all_r_premise(goal, principal, c)
    accepted(derived_node(goal, RuleId.ALL_R, [leaf(premise)], principal, [c]), ind_sig)

    goal = parse_sequent("=> forall x:e . top", ind_sig)
    principal = R(goal.right()[0])
    premise = all_r_premise(goal, principal, c)
    top = derived_node(premise, RuleId.TOP_R)
    accepted(derived_node(goal, RuleId.ALL_R, [top], principal, [c]), ind_sig)


@pytest.mark.parametrize("text", ["a = b, P a => P b", "b = a, P a => P b"])
def test_eq_l_both_directions(ind_sig, text):
    goal = parse_sequent(text, ind_sig)
    a, b = ind_sig.const("a"), ind_sig.const("b")
    x = Var("x", a.type)
    context = parse_term("P x", ind_sig, [x])
    premise = eq_l_premise(goal, a, x, context)
    node = derived_node(goal, RuleId.EQ_L, [leaf(premise)], terms=[a, b], context=context, hole=x)
    accepted(node, ind_sig)


@pytest.mark.parametrize("text,term", [("=> a = a", "a"), ("Q b => P = P", "P")])
def test_eq_r(ind_sig, text, term):
    goal = parse_sequent(text, ind_sig)
    accepted(derived_node(goal, RuleId.EQ_R, terms=[ind_sig.const(term)]), ind_sig)


def test_bad_rule_data(ind_sig):
    goal = parse_sequent("a = b, P a => P b", ind_sig)
    a, b = ind_sig.const("a"), ind_sig.const("b")
    x, y = Var("x", a.type), Var("y", a.type)
    context = parse_term("R x y", ind_sig, [x, y])
    with pytest.raises(ExpansionError):
        expand_derived(derived_node(goal, RuleId.EQ_L, [leaf(goal.add(L(BOTTOM)))],
                                    terms=[a, b], context=context, hole=x))
    with pytest.raises(ExpansionError):
        expand_derived(derived_node(goal, RuleId.EQ_R, terms=[a]))
    with pytest.raises(ExpansionError):
        expand_derived(derived_node(goal, RuleId.TOP_R))
