import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

CORPUS = Path(__file__).resolve().parent.parent / "src" / "ribbonknots" / "corpus"


@pytest.fixture
def corpus():
    return CORPUS
