import pytest

from itl_models import ModelError, check_model, holds
from itl_sugar import desugar
from itl_syntax import App, Iff, Imp, Not, OMEGA, Or
from itl_worlds import (
    W0, actual_world_axioms, box, dia, negation_statement, requested_instances, w1_axiom,
    w4_axiom,
)
from itl_worlds_model import (
    DEFAULT_VALUATIONS, MODEL_SIGNATURE, ProfileModelBuilder, validate_statement, worlds_model,
)

p = MODEL_SIGNATURE.const("p")
q = MODEL_SIGNATURE.const("q")
P = MODEL_SIGNATURE.const("P")
K1 = MODEL_SIGNATURE.const("k1")


@pytest.fixture(scope="module")
def sentences():
    return [
        w1_axiom(), w4_axiom(), *actual_world_axioms(),
        box(OMEGA, p), box(OMEGA, Or(p, Not(p))), App(W0, p), App(W0, q),
        Iff(box(OMEGA, p), Not(dia(OMEGA, Not(p)))),
        Iff(box(OMEGA, q), Not(dia(OMEGA, Not(q)))),
        App(P, K1),
    ]


@pytest.fixture(scope="module")
def model(sentences):
    return worlds_model(sentences)


def test_world_axioms_hold(model):
    for axiom in (w1_axiom(), w4_axiom(), *actual_world_axioms()):
        assert holds(model, axiom)


def test_actual_world_follows_first_valuation(model):
    assert holds(model, App(W0, p))
    assert not holds(model, App(W0, q))
    assert holds(model, App(P, K1))
    assert len(model.domain(W0.type)) == len(DEFAULT_VALUATIONS)


def test_necessity(model):
    assert not holds(model, box(OMEGA, p))
    assert holds(model, box(OMEGA, Or(p, Not(p))))


def test_box_and_diamond_agree_without_duplicates(model):
    assert holds(model, Iff(box(OMEGA, p), Not(dia(OMEGA, Not(p)))))
    assert holds(model, Iff(box(OMEGA, q), Not(dia(OMEGA, Not(q)))))


def test_settled_model_is_well_formed(model):
    assert check_model(model).ok


def test_statement_validation():
    statement = negation_statement(p)
    instances = requested_instances([statement], actual_world=True)
    m = worlds_model(instances + [statement])
    check = validate_statement(m, statement, instances)
    assert check.ok, check.failed
    wrong = validate_statement(m, box(OMEGA, q))
    assert not wrong.ok


def test_valuations_are_required():
    with pytest.raises(ModelError):
        ProfileModelBuilder(MODEL_SIGNATURE, [])
    with pytest.raises(ModelError):
        worlds_model([App(P, K1)], valuations=[{"P": ("nobody",)}])


def test_layers_share_intensions():
    builder = ProfileModelBuilder(MODEL_SIGNATURE, DEFAULT_VALUATIONS)
    token = builder.resolve(desugar(Imp(p, q)))
    assert token.startswith("s")
    assert builder.resolve(desugar(Imp(p, q))) == token
    assert builder.model(0).intensions == builder.model(1).intensions
