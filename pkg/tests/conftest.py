import sys

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from teichtangent.quadrature import PolarGrid

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

small_floats = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, small_floats, small_floats)


def random_field_coeffs(rng, K):
    """Random real-field coefficient array of length 2K + 1."""
    pos = rng.normal(size=K) + 1j * rng.normal(size=K)
    c = np.zeros(2 * K + 1, dtype=complex)
    c[K + 1:] = pos
    c[:K] = np.conj(pos)[::-1]
    c[K] = rng.normal()
    return c


@pytest.fixture(scope="session")
def grid():
    return PolarGrid()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split()[0])):
            terminalreporter.line(line)
