"""
Shared fixtures for the phantomqec test suite.
"""

import numpy as np
import pytest

from phantomqec.config import QecConfig
from phantomqec.construct import four_two_two, steane
from phantomqec.phantom import is_phantom_bruteforce


@pytest.fixture
def code_422():
    """The [[4,2,2]] code with its standard-form logical basis."""
    return four_two_two()


@pytest.fixture
def witness_422(code_422):
    """Brute-force phantom witness for [[4,2,2]]."""
    witness = is_phantom_bruteforce(code_422)
    assert witness is not None
    return witness


@pytest.fixture
def steane_code():
    """The [[7,1,3]] Steane code."""
    return steane()


@pytest.fixture
def rng():
    """Seeded generator so randomised tests are reproducible."""
    return np.random.default_rng(20240611)


@pytest.fixture
def config():
    """Fresh settings object, isolated from the module-level default."""
    return QecConfig()
