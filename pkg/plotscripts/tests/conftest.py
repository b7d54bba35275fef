import pathlib
import sys

import pytest

SCRIPTS_DIR = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(SCRIPTS_DIR))


@pytest.fixture(scope="session")
def fixtures():
    return SCRIPTS_DIR / "fixtures"
