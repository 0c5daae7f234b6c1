import json
import sys
from pathlib import Path

import pytest
from hypothesis import settings

from ftqc_estimator.presets import PresetStore, packaged_root

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

HERE = Path(__file__).parent


@pytest.fixture(scope="session")
def derived():
    return json.loads((HERE / "data" / "derived.json").read_text())


@pytest.fixture(scope="session")
def store():
    return PresetStore()


@pytest.fixture(scope="session")
def fixtures_dir():
    return packaged_root() / "fixtures"


@pytest.fixture(scope="session")
def published_values(fixtures_dir):
    return json.loads((fixtures_dir / "published_values.json").read_text())


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for text in sorted(mod.RESULTS, key=lambda t: int(t.split()[1][2:])):
            terminalreporter.write_line(text)
