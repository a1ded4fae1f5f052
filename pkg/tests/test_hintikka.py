import pytest

from itl_hintikka import ValidationFailed, build_countermodel, check_hintikka, default_universe
from itl_models import check_model, holds, is_normal, normalize_model, refutes
from itl_parser import parse_sequent, parse_signature, parse_signed, parse_term
from itl_prover import Answer, refute
from itl_sequent import R, Sequent
from itl_syntax import BOTTOM, PROP

SIG_TEXT = """
const p : <>
const q : <>
const r : <>
const c1 : <<>>
const c2 : <<>>
const c3 : <<>>
"""

# ramo aberto de "=> p = q, q = r, r = p", escrito com z : <<>>
EXTENDED = [
    "R: (lam z:<<>> . top) sub (lam z:<<>> . z p -> z q)",
    "L: (lam z:<<>> . top) c1",
    "R: (lam z:<<>> . z p -> z q) c1",
    "L: top",
    "R: c1 p -> c1 q",
    "L: c1 p",
    "R: c1 q",
    "R: (lam z:<<>> . top) sub (lam z:<<>> . z q -> z r)",
    "L: (lam z:<<>> . top) c2",
    "R: (lam z:<<>> . z q -> z r) c2",
    "R: c2 q -> c2 r",
    "L: c2 q",
    "R: c2 r",
    "R: (lam z:<<>> . top) sub (lam z:<<>> . z r -> z p)",
    "L: (lam z:<<>> . top) c3",
    "R: (lam z:<<>> . z r -> z p) c3",
    "R: c3 r -> c3 p",
    "L: c3 r",
    "R: c3 p",
]


@pytest.fixture(scope="module")
def sig():
    return parse_signature(SIG_TEXT)


@pytest.fixture(scope="module")
def extended(sig):
    return Sequent.of(parse_signed(line, sig) for line in EXTENDED)


def test_extension_leaves_only_the_top_instance_open(extended):
    report = check_hintikka(extended)
    assert len(report.violations) == 1
    violation = report.violations[0]
    assert violation.clause == 5
    assert violation.member == "L:bot sub bot"
    assert violation.missing == (R(BOTTOM),)
    assert report.coverage[6] == 6


def test_adding_right_bottom_gives_hintikka_sequent(extended):
    closed = extended.add(R(BOTTOM))
    report = check_hintikka(closed)
    assert report.ok
    assert all(count > 0 for clause, count in report.coverage.items() if clause != 2)


def test_countermodel_from_hintikka_sequent(sig, extended):
    hintikka = extended.add(R(BOTTOM))
    target = Sequent.of(parse_signed(line, sig) for line in (EXTENDED[0], EXTENDED[7], EXTENDED[13]))
    model = build_countermodel(hintikka, sig, target=target)
    assert refutes(model, hintikka)
    assert refutes(model, target)


def test_clause_violations(ind_sig):
    assert [v.clause for v in check_hintikka(parse_sequent("P a => P a", ind_sig)).violations] == [1]
    assert [v.clause for v in check_hintikka(parse_sequent("bot =>", ind_sig)).violations] == [2]
    beta = check_hintikka(parse_sequent("=> (lam x:e . P x) a", ind_sig))
    assert [v.clause for v in beta.violations] == [4]
    assert beta.violations[0].missing == (R(parse_term("P a", ind_sig)),)
    witness = check_hintikka(parse_sequent("=> P sub Q", ind_sig))
    assert [v.clause for v in witness.violations] == [6]


def test_left_inclusion_needs_every_universe_instance(ind_sig):
    seq = parse_sequent("P sub Q, Q a => Q b", ind_sig)
    report = check_hintikka(seq, default_universe(seq, ind_sig))
    shown = [v.detail for v in report.violations if v.clause == 5]
    # a: decidido por L:Q a; b: nada decide
    assert len(shown) == 1
    assert "[b]" in shown[0]


def test_countermodel_must_refute_target(ind_sig):
    seq = parse_sequent("P a => Q a", ind_sig)
    with pytest.raises(ValidationFailed):
        build_countermodel(seq, ind_sig, target=parse_sequent("P a => P a", ind_sig))


def test_three_propositions_need_not_be_pairwise_equal(prop_sig, budget):
    goal = parse_sequent("=> p = q, q = r, r = p", prop_sig)
    result = refute(goal, prop_sig, budget=budget)
    assert result.answer is Answer.NO
    model = result.model
    assert refutes(model, goal)
    sentences = [m.sentence for m in goal]
    assert check_model(model, sentences).ok
    normal = normalize_model(model, sentences)
    assert is_normal(normal)
    assert refutes(normal, goal)
    assert [holds(normal, s) for s in sentences] == [holds(model, s) for s in sentences]
    # p, q, r ficam em classes distintas de similaridade
    assert len(normal.domain(PROP)) >= 3
