"""
Pytest Configuration for the forest counting suites
"""

import io
import sys
from pathlib import Path
from typing import NamedTuple, Optional

import pytest

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from forestcount.cli import ForestCLI
from forestcount.forest_model import ROOT, PPRForest


def pytest_configure(config):
    """Configure pytest with custom markers"""
    config.addinivalue_line(
        "markers", "slow: marks tests as slow (deselect with '-m \"not slow\"')"
    )
    config.addinivalue_line(
        "markers", "integration: marks tests that drive the CLI end to end"
    )


class CLIResult(NamedTuple):
    code: int
    stdout: str
    stderr: str


@pytest.fixture
def run_cli():
    """Run the CLI in-process with captured streams"""
    def _run(*argv: str, stdin: Optional[str] = None) -> CLIResult:
        out, err = io.StringIO(), io.StringIO()
        cli = ForestCLI(stdin=io.StringIO(stdin or ""), stdout=out, stderr=err)
        code = cli.run(list(argv))
        return CLIResult(code, out.getvalue(), err.getvalue())
    return _run


@pytest.fixture
def golden_dir() -> Path:
    return Path(__file__).parent / "golden"


# ============================================================================
# Hand-traced forests
# ============================================================================

@pytest.fixture
def star_n2() -> PPRForest:
    """Both vertices hang from 0; special"""
    return PPRForest(2, (ROOT, 0, 0), ())


@pytest.fixture
def path_n2() -> PPRForest:
    """0 -> 1 -> 2; special"""
    return PPRForest(2, (ROOT, 0, 1), ())


@pytest.fixture
def inverted_n2() -> PPRForest:
    """0 -> 2 -> 1; child 2 is inversion-initiating"""
    return PPRForest(2, (ROOT, 2, 0), ())


@pytest.fixture
def paired_n2() -> PPRForest:
    """T0 = {0} and the pair {1}, {2}"""
    return PPRForest(2, (ROOT, ROOT, ROOT), ((1, 2),))
