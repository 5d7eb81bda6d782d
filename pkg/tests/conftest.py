import os
import sys
from pathlib import Path

import pytest

# Add project root to python path to allow importing modules from src
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

# Tests always read the repository config, wherever pytest is started from
os.environ.setdefault("ARCHLAB_CONFIG", str(project_root / "config.yaml"))

from src.utils.config_loader import ConfigLoader  # noqa: E402


@pytest.fixture
def fresh_config():
    """Drops the ConfigLoader singleton before and after the test."""
    ConfigLoader._instance = None
    yield
    ConfigLoader._instance = None


@pytest.fixture
def matrix_file(tmp_path):
    def write(text: str, name: str = "matrix.txt") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write
