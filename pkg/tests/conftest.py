import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dataref.dictionary import load_base_terms, load_wordlists
from dataref.registry import DatasetRecord, RegistryIndex


@pytest.fixture(scope="session")
def wordlists():
    return load_wordlists()


@pytest.fixture(scope="session")
def base_terms():
    return load_base_terms()


PIAAC_RECORDS = [
    DatasetRecord("10.4232/piaac-cy",
                  "Programme for the International Assessment of Adult Competencies (PIAAC), Cyprus"),
    DatasetRecord("10.4232/piaac-de",
                  "Programme for the International Assessment of Adult Competencies (PIAAC), Germany"),
    DatasetRecord("10.4232/evs-it", "EVS - European Values Study 1999 - Italy"),
]


@pytest.fixture
def small_index():
    return RegistryIndex.build(PIAAC_RECORDS)
