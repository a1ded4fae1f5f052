import pytest

from itl_calculus import BASE_RULES, check_proof, proof_rules
from itl_sugar import desugar
from itl_syntax import ITLError, PROP, is_closed
from itl_worlds_goals import (
    MODES, SIG, WorldGoal, box_top_goal, distribution_goals, euclidean_goal, goal_corpus,
    negation_script_goal, results_summary, run_corpus, run_goal, seriality_goal, transitivity_goal,
)

MODEL_GOALS = [g.name for g in distribution_goals()]


def is_sentence(term):
    term = desugar(term)
    return term.type == PROP and is_closed(term)


def test_corpus_names_and_modes():
    goals = goal_corpus()
    names = [g.name for g in goals]
    assert len(names) == len(set(names))
    assert {"a-p", "b", "c", "d", "box-top", "a-p-script", "D", "4", "5"} <= set(names)
    assert {g.mode for g in goals} == set(MODES)
    for g in goals:
        assert is_sentence(g.statement)
        assert all(is_sentence(h) for h in g.hints)
        assert len(g.sequent.right()) == 1


@pytest.mark.parametrize("goal", [transitivity_goal(), euclidean_goal()], ids=lambda g: g.name)
def test_belief_goals_have_scripts(goal):
    assert goal.mode == "check-script"
    assert goal.script is not None
    assert len(goal.hints) >= 10


def test_distribution_statements_hold_in_the_corpus_model():
    results = run_corpus(names=MODEL_GOALS)
    assert [r.name for r in results] == MODEL_GOALS
    assert all(r.passed for r in results), [r.detail for r in results if not r.passed]
    assert results_summary(results)["model-validate"] == len(MODEL_GOALS)


def test_box_top_is_proved():
    result = run_goal(box_top_goal())
    assert result.passed, result.detail
    assert check_proof(result.proof, SIG)


@pytest.mark.parametrize("goal", [negation_script_goal(), seriality_goal(), transitivity_goal(), euclidean_goal()],
                         ids=lambda g: g.name)
def test_scripted_goals_are_certified(goal):
    result = run_goal(goal)
    assert result.passed, result.detail
    assert check_proof(result.proof, SIG)
    assert set(proof_rules(result.proof)) <= BASE_RULES


def test_unknown_mode_is_rejected():
    goal = WorldGoal("x", "outro", SIG.const("p"))
    with pytest.raises(ITLError):
        run_goal(goal)


def test_summary_counts_only_passed():
    results = run_corpus(names=["a-p", "box-top"])
    summary = results_summary(results)
    assert set(summary) == set(MODES)
    assert summary["check-script"] == 0
    assert summary["prove"] + summary["model-validate"] == sum(r.passed for r in results)
