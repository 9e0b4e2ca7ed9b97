import json
from pathlib import Path

import numpy as np
import pytest

from src.control.state_space import SparseState
from src.converters.jsonio import state_to_json


@pytest.fixture
def rng():
    return np.random.default_rng(2163)


@pytest.fixture
def write_state(tmp_path: Path):
    """Write a state file under tmp_path and return its path as str."""

    def _write(name: str, entries: dict[int, complex]) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(state_to_json(SparseState(entries))), encoding="utf-8")
        return str(path)

    return _write
