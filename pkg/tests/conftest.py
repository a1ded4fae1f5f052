import os
import sys

import numpy as np
import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

from itl_model_io import random_model  # noqa: E402
from itl_parser import parse_signature  # noqa: E402
from itl_prover import SearchBudget  # noqa: E402

PROP_SIG_TEXT = """
const p : <>
const q : <>
const r : <>
"""

INDIVIDUALS_SIG_TEXT = """
type e
const a : e
const b : e
const P : <e>
const Q : <e>
const R : <e e>
"""

HIGHER_SIG_TEXT = """
type e
const a : e
const p : <>
const P : <e>
const F : <<e>>
const G : <<>>
"""


@pytest.fixture(scope="session")
def root_dir():
    return ROOT


@pytest.fixture(scope="session")
def prop_sig():
    return parse_signature(PROP_SIG_TEXT)


@pytest.fixture(scope="session")
def ind_sig():
    return parse_signature(INDIVIDUALS_SIG_TEXT)


@pytest.fixture(scope="session")
def higher_sig():
    return parse_signature(HIGHER_SIG_TEXT)


@pytest.fixture
def budget():
    return SearchBudget(max_depth=600, max_instantiations=8, max_axiom_instances=32, time_limit=20.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


@pytest.fixture(scope="session")
def model_pool(higher_sig):
    """Modelos aleatórios reprodutíveis sobre a assinatura de ordem superior."""
    generator = np.random.default_rng(7)
    return [random_model(higher_sig, generator) for _ in range(100)]
