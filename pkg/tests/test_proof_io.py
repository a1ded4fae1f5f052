import json

import pytest

from itl_calculus import check_proof
from itl_parser import parse_sequent, parse_term
from itl_proof_io import PROOF_FORMAT, dumps_proof, load_proof, loads_proof, proof_to_dict, save_proof
from itl_prover import ProofFound, prove
from itl_script import ProofScript
from itl_syntax import ITLError, Var


@pytest.fixture
def quantified_proof(higher_sig, budget):
    goal = parse_sequent("=> forall X:<e> . X a -> X a", higher_sig)
    outcome = prove(goal, higher_sig, budget)
    assert isinstance(outcome, ProofFound)
    return outcome.proof


def test_reloaded_proof_is_accepted(higher_sig, quantified_proof):
    text = dumps_proof(quantified_proof, higher_sig)
    payload = json.loads(text)
    assert payload["format"] == PROOF_FORMAT
    assert "_c" in payload["signature"]
    proof, sig = loads_proof(text, higher_sig)
    assert proof.conclusion == quantified_proof.conclusion
    assert check_proof(proof, sig)


def test_reload_without_signature(higher_sig, quantified_proof):
    proof, sig = loads_proof(dumps_proof(quantified_proof, higher_sig))
    assert sig.has("P") and sig.has("a")
    assert check_proof(proof, sig)


def test_rule_data_survives(ind_sig):
    s = ProofScript(parse_sequent("a = b, P a => P b", ind_sig), ind_sig)
    x = Var("x", ind_sig.const("a").type)
    s.eq_l(ind_sig.const("a"), ind_sig.const("b"), parse_term("P x", ind_sig, [x]), x)
    s.close()
    derived = s.build()
    record = proof_to_dict(derived, ind_sig)["proof"]
    assert record["rule"] == derived.rule.value
    assert record["hole"]["name"] == "x"
    proof, _ = loads_proof(dumps_proof(derived, ind_sig), ind_sig)
    assert proof.data.hole == x
    assert proof.data.context == derived.data.context


def test_file_round_trip(tmp_path, higher_sig, quantified_proof):
    path = str(tmp_path / "prova.json")
    assert save_proof(path, quantified_proof, higher_sig)
    proof, sig = load_proof(path, higher_sig)
    assert check_proof(proof, sig)
    assert not save_proof(str(tmp_path / "nada" / "prova.json"), quantified_proof, higher_sig)


def test_bad_payloads(higher_sig, quantified_proof):
    payload = proof_to_dict(quantified_proof, higher_sig)
    with pytest.raises(ITLError):
        loads_proof(json.dumps(dict(payload, format="outro/1")))
    payload["proof"]["rule"] = "Inventada"
    with pytest.raises(ITLError):
        loads_proof(json.dumps(payload))
