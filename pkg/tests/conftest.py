import os

import hypothesis
import pytest

hypothesis.settings.register_profile("fast", max_examples=10)
hypothesis.settings.register_profile("thorough", max_examples=500)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

from swarmtrack.geometry import Rect
from swarmtrack.planner import SensorSpec


@pytest.fixture
def field_50x20():
    return Rect(50.0, 20.0)


@pytest.fixture
def spec_2_4():
    return SensorSpec(2.0, 4.0)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
