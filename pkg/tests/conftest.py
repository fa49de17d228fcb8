"""
Shared fixtures for the archdia test suite
"""

import sys
from pathlib import Path

import pytest

# Add project root to path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.dsl.parser import load_architecture, load_diagram  # noqa: E402
from src.utils.config import get_settings  # noqa: E402

CORPUS = PROJECT_ROOT / "data" / "corpus"


@pytest.fixture
def corpus_diagram():
    """Load a corpus diagram by file stem"""
    def load(stem):
        return load_diagram(CORPUS / f"{stem}.archd")
    return load


@pytest.fixture
def corpus_architecture():
    """Load a corpus architecture by file stem, resolved against a corpus diagram"""
    def load(stem, diagram_stem):
        return load_architecture(CORPUS / f"{stem}.archa", load_diagram(CORPUS / f"{diagram_stem}.archd"))
    return load


@pytest.fixture
def fresh_settings():
    """Re-read ARCHDIA_* variables for the duration of a test"""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
