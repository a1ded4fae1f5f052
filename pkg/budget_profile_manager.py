import json
import os
import logging
from datetime import datetime

from config import DEFAULT_PROFILE, PROFILES_DIR
from itl_prover import SearchBudget

logger = logging.getLogger(__name__)

DATE_FORMAT = "%d/%m/%Y %H:%M:%S"


class BudgetProfileManager:
    """Perfis de orçamento de busca, um arquivo JSON por perfil."""

    def __init__(self, profiles_dir=PROFILES_DIR):
        self.profiles_dir = profiles_dir
        os.makedirs(self.profiles_dir, exist_ok=True)

    def _path(self, name):
        return os.path.join(self.profiles_dir, f"{name}.json")

    def _write(self, name, data, action):
        try:
            with open(self._path(name), "w", encoding="utf-8") as f:
                json.dump(data, f, indent=4, ensure_ascii=False)
        except (OSError, TypeError, ValueError) as e:
            logger.error(f"Falha ao {action} o perfil de orçamento '{name}': {e}")
            return False
        logger.info(f"Perfil de orçamento '{name}': {action} ok ({self._path(name)})")
        return True

    def create_profile(self, profile_name, budget=None, description=""):
        """Grava o orçamento dado (ou o padrão do config) como novo perfil."""
        if os.path.exists(self._path(profile_name)):
            logger.warning(f"Perfil de orçamento '{profile_name}' já existe e será substituído")
        stamp = datetime.now().strftime(DATE_FORMAT)
        data = {"created_date": stamp, "last_modified": stamp}
        data.update((budget or SearchBudget()).to_dict())
        data["description"] = description
        return self._write(profile_name, data, "criar")

    def save_profile_budget(self, profile_name, budget):
        data = self.load_profile_config(profile_name)
        if data is None:
            return False
        data.update(budget.to_dict(), last_modified=datetime.now().strftime(DATE_FORMAT))
        return self._write(profile_name, data, "atualizar")

    def load_profile_config(self, profile_name):
        """Conteúdo bruto do perfil; None se ausente, ilegível ou não for objeto."""
        path = self._path(profile_name)
        if not os.path.isfile(path):
            logger.error(f"Perfil de orçamento '{profile_name}' não encontrado em {self.profiles_dir}")
            return None
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, ValueError) as e:
            logger.error(f"Perfil de orçamento '{profile_name}' ilegível: {e}")
            return None
        if not isinstance(data, dict):
            logger.error(f"Perfil de orçamento '{profile_name}' não contém um objeto JSON")
            return None
        logger.debug(f"Perfil de orçamento '{profile_name}' lido")
        return data

    def load_budget(self, profile_name=DEFAULT_PROFILE):
        """SearchBudget do perfil; campos ausentes ficam com os valores do config."""
        data = self.load_profile_config(profile_name)
        if data is None:
            return None
        try:
            budget = SearchBudget.from_dict(data)
        except (TypeError, ValueError) as e:
            logger.error(f"Orçamento inválido no perfil '{profile_name}': {e}")
            return None
        logger.info(f"Orçamento do perfil '{profile_name}': profundidade {budget.max_depth}, "
                    f"instanciações {budget.max_instantiations}, tempo {budget.time_limit}s")
        return budget

    def list_profiles(self):
        if not os.path.isdir(self.profiles_dir):
            return []
        return sorted(os.path.splitext(n)[0] for n in os.listdir(self.profiles_dir) if n.endswith(".json"))

    def delete_profile(self, profile_name):
        path = self._path(profile_name)
        if not os.path.isfile(path):
            logger.warning(f"Perfil de orçamento '{profile_name}' não existe; nada a apagar")
            return False
        try:
            os.remove(path)
        except OSError as e:
            logger.error(f"Falha ao apagar o perfil de orçamento '{profile_name}': {e}")
            return False
        logger.info(f"Perfil de orçamento '{profile_name}' apagado")
        return True
