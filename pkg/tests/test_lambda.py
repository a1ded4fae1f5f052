import numpy as np
import pytest

from itl_lambda import alpha_eq, beta_eta_normalize, beta_normalize, eta_contract, is_redex
from itl_model_io import TermSampler, random_model
from itl_models import CarrierEscape, eval_extension
from itl_parser import parse_signature, parse_term, parse_type
from itl_syntax import App, BudgetExceeded, Lam, PROP, Var, free_vars, is_closed


@pytest.fixture(scope="module")
def sig():
    return parse_signature("""
type e
const a : e
const b : e
const P : <e>
const R : <e e>
const F : <<e>>
""")


def test_beta_reduces_nested_redexes(sig):
    term = parse_term("(lam X:<e> . X a) (lam y:e . R y b)", sig)
    assert beta_normalize(term) == parse_term("R a b", sig)


def test_beta_renames_to_avoid_capture(sig):
    # (lam x. lam y. R x y) y, com y livre
    y = Var("y", sig.const("a").type)
    term = parse_term("(lam x:e . lam y:e . R x y) y", sig, [y])
    normal = beta_normalize(term)
    assert isinstance(normal, Lam)
    assert normal.var.name != "y"
    assert free_vars(normal) == frozenset({y})


def test_eta_contraction(sig):
    assert eta_contract(parse_term("lam x:e . P x", sig)) == sig.const("P")
    # x livre na cabeça: não contrai
    term = parse_term("lam x:e . R x x", sig)
    assert eta_contract(term) == term


def test_beta_eta_normal_form_is_closed_and_redex_free(sig):
    term = parse_term("F (lam x:e . (lam y:e . P y) x)", sig)
    normal = beta_eta_normalize(term)
    assert normal == parse_term("F P", sig)
    assert is_closed(normal)
    assert not is_redex(normal)


def test_alpha_equivalence(sig):
    first = parse_term("lam x:e . R x a", sig)
    second = parse_term("lam z:e . R z a", sig)
    third = parse_term("lam z:e . R a z", sig)
    assert alpha_eq(first, second)
    assert not alpha_eq(first, third)


def test_step_limit(sig):
    term = parse_term("(lam X:<e> . X a) (lam y:e . (lam z:e . P z) y)", sig)
    with pytest.raises(BudgetExceeded):
        beta_normalize(term, step_limit=1)


def test_normal_forms_keep_their_value(sig):
    # sem tokens duplicados a avaliação é extensional, então beta e eta não mudam valores
    generator = np.random.default_rng(13)
    models = [random_model(sig, generator, duplicates=False) for _ in range(25)]
    types = [parse_type(t) for t in ("e", "<>", "<e>")]
    sampler = TermSampler(sig, generator, types)
    terms = [sampler.term(PROP, depth=3) for _ in range(30)]
    for ty in types * 10:
        x = sampler.variable(ty)
        terms.append(App(Lam(x, sampler.term(PROP, 2, (x,))), sampler.term(ty, 1)))
    changed = [t for t in terms if beta_eta_normalize(t) != t]
    assert len(changed) >= 30
    checked = 0
    for m in models:
        for term in changed:
            try:
                assert eval_extension(m, {}, beta_eta_normalize(term)) == eval_extension(m, {}, term)
            except CarrierEscape:
                continue
            checked += 1
    assert checked >= len(changed) * len(models) // 2
