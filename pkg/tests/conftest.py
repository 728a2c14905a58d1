import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dualforget.parser import parse_theory

THEORY_DIR = Path(__file__).parent.parent / "theories"


def load_theory(name: str):
    path = THEORY_DIR / name
    return parse_theory(path.read_text(encoding="utf-8"), name=path.stem)


@pytest.fixture
def theories_dir() -> Path:
    return THEORY_DIR
