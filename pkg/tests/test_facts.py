import numpy as np
import pytest

from itl_facts import FACT_KINDS, Fact, check_fact, fact_suite, sample_facts
from itl_model_io import random_model
from itl_models import holds
from itl_parser import parse_term
from itl_syntax import Var


@pytest.fixture(scope="module")
def small_models(higher_sig):
    # |e| <= 2 mantém todos os domínios complexos com powerset completo
    generator = np.random.default_rng(23)
    return [random_model(higher_sig, generator, basic_size=(1, 2)) for _ in range(100)]


def test_sampled_facts_cover_every_kind(higher_sig):
    facts = sample_facts(higher_sig, np.random.default_rng(5), per_kind=4)
    assert {f.kind for f in facts} == set(FACT_KINDS)
    assert all(f.var is not None for f in facts if f.kind in ("forall", "beta", "eq_subst"))


def test_facts_hold_on_random_models(higher_sig, small_models):
    facts = sample_facts(higher_sig, np.random.default_rng(29), per_kind=6)
    report = fact_suite(small_models, facts, workers=4)
    assert report.ok, [str(v) for v in report.violations[:5]]
    assert report.checked >= 1000


def test_pool_separates_coextensive_from_identical(higher_sig, small_models):
    # com um token duplicado em D<>, p e ~~p têm o mesmo valor mas não são iguais
    equivalent = parse_term("p <-> ~~p", higher_sig)
    identical = parse_term("p = ~~p", higher_sig)
    assert all(holds(m, equivalent) for m in small_models)
    assert any(not holds(m, identical) for m in small_models)


def test_check_fact_by_hand(higher_sig, small_models):
    m = small_models[0]
    x = Var("x", higher_sig.const("a").type)
    assert check_fact(m, Fact("forall", (parse_term("P x -> P x", higher_sig, [x]),), x))
    assert check_fact(m, Fact("eq_refl", (higher_sig.const("P"),)))
    with pytest.raises(ValueError):
        check_fact(m, Fact("unknown", ()))
