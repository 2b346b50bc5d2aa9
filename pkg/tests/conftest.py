import math

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from bellkey.attack import AttackParams

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

angle = st.floats(min_value=0.0, max_value=math.pi / 2, allow_nan=False)
attack_params = st.builds(AttackParams, angle, angle)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def grid_params(n: int = 5, margin: float = 0.0):
    angles = np.linspace(margin, math.pi / 2 - margin, n)
    return [AttackParams(float(a), float(b)) for a in angles for b in angles]


# one PASS/FAIL line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}
ACCEPTANCE_TITLES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_TITLES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_TITLES):
        title, ok, detail = ACCEPTANCE.get(n, (ACCEPTANCE_TITLES[n], False, "did not complete"))
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title} ({detail})")
