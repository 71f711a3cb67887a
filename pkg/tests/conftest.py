import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import FIXTURE_CSV  # noqa: E402


@pytest.fixture
def fixture_csv() -> str:
    return FIXTURE_CSV
