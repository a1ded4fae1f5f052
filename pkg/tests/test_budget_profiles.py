import json
import os

from budget_profile_manager import BudgetProfileManager
from itl_prover import SearchBudget


def test_create_and_load(tmp_path):
    manager = BudgetProfileManager(str(tmp_path / "perfis"))
    budget = SearchBudget(max_depth=50, max_instantiations=3)
    assert manager.create_profile("Curto", budget, "teste")
    assert manager.list_profiles() == ["Curto"]
    assert manager.load_budget("Curto") == budget
    assert manager.load_profile_config("Curto")["description"] == "teste"


def test_update_and_delete(tmp_path):
    manager = BudgetProfileManager(str(tmp_path))
    manager.create_profile("Padrao")
    assert manager.load_budget("Padrao") == SearchBudget()
    assert manager.save_profile_budget("Padrao", SearchBudget(max_depth=9))
    assert manager.load_budget("Padrao").max_depth == 9
    assert manager.delete_profile("Padrao")
    assert not manager.delete_profile("Padrao")
    assert manager.load_budget("Padrao") is None
    assert not manager.save_profile_budget("Padrao", SearchBudget())


def test_invalid_profiles(tmp_path):
    manager = BudgetProfileManager(str(tmp_path))
    with open(os.path.join(str(tmp_path), "Lista.json"), "w", encoding="utf-8") as f:
        json.dump([1, 2], f)
    with open(os.path.join(str(tmp_path), "Negativo.json"), "w", encoding="utf-8") as f:
        json.dump({"max_depth": -1}, f)
    assert manager.load_budget("Lista") is None
    assert manager.load_budget("Negativo") is None


def test_shipped_profiles(root_dir):
    manager = BudgetProfileManager(os.path.join(root_dir, "profiles"))
    assert {"Padrao", "Rapido", "Profundo"} <= set(manager.list_profiles())
    for name in manager.list_profiles():
        assert isinstance(manager.load_budget(name), SearchBudget)
