import pytest

from itl_calculus import BASE_RULES, RuleId, check_proof, proof_rules
from itl_derived import ExpansionError, derived_node, expand_derived
from itl_parser import parse_sequent, parse_term
from itl_script import ProofScript, ScriptError
from itl_sequent import L, R, Sign
from itl_syntax import App, Imp, Var


def certified(script, sig):
    proof = script.certify()
    assert check_proof(proof, sig)
    assert set(proof_rules(proof)) <= BASE_RULES
    return proof


def test_implication_steps(prop_sig):
    s = ProofScript(parse_sequent("p -> q, p => q", prop_sig), prop_sig)
    s.imp_l(parse_term("p -> q", prop_sig))
    assert len(s.open_goals) == 2
    assert s.close(0) and s.close(0)
    assert s.done
    proof = s.build()
    assert proof.rule is RuleId.IMP_L
    certified(s, prop_sig)


def test_conjunction_on_the_left(prop_sig):
    s = ProofScript(parse_sequent("p & q => q", prop_sig), prop_sig)
    s.conj_l(prop_sig.const("p"), prop_sig.const("q"))
    assert s.close()
    certified(s, prop_sig)


def test_quantifier_steps(ind_sig):
    s = ProofScript(parse_sequent("forall x:e . P x => P a", ind_sig), ind_sig)
    instance = s.all_l(parse_term("forall x:e . P x", ind_sig), ind_sig.const("a"))
    assert instance == parse_term("P a", ind_sig)
    assert s.close()
    certified(s, ind_sig)

    s = ProofScript(parse_sequent("=> forall x:e . P x -> P x", ind_sig), ind_sig)
    c = s.all_r(parse_term("forall x:e . P x -> P x", ind_sig))
    assert c.name.startswith("_c")
    P = ind_sig.const("P")
    s.imp_r(Imp(App(P, c), App(P, c)))
    assert s.close()
    certified(s, ind_sig)


def test_equality_substitution(ind_sig):
    s = ProofScript(parse_sequent("a = b, P a => P b", ind_sig), ind_sig)
    x = Var("x", ind_sig.const("a").type)
    s.eq_l(ind_sig.const("a"), ind_sig.const("b"), parse_term("P x", ind_sig, [x]), x)
    assert s.close()
    certified(s, ind_sig)


def test_lambda_step_and_auto(ind_sig):
    s = ProofScript(parse_sequent("(lam x:e . P x) a => P a", ind_sig), ind_sig)
    s.lam(parse_term("(lam x:e . P x) a", ind_sig), Sign.L)
    assert s.auto_all()
    certified(s, ind_sig)


def test_weakening_and_open_goals(prop_sig):
    s = ProofScript(parse_sequent("p, q => p", prop_sig), prop_sig)
    s.keep([L(prop_sig.const("p")), *[m for m in s.goal().ordered if m.sign is Sign.R]])
    assert len(s.goal()) == 2
    with pytest.raises(ScriptError):
        s.build()
    assert s.auto()
    certified(s, prop_sig)


def test_script_errors(prop_sig):
    s = ProofScript(parse_sequent("p => q", prop_sig), prop_sig)
    with pytest.raises(ScriptError):
        s.imp_r(parse_term("p -> q", prop_sig))
    with pytest.raises(ScriptError):
        s.goal(3)
    assert not s.close()
    assert not s.auto()
    with pytest.raises(ScriptError):
        s.certify()


def test_expansion_rejects_stale_fresh_constant(ind_sig):
    goal = parse_sequent("P a => forall x:e . P x", ind_sig)
    principal = R(goal.right()[0])
    node = derived_node(goal, RuleId.ALL_R, [], principal, [ind_sig.const("a")])
    with pytest.raises(ExpansionError):
        expand_derived(node)
