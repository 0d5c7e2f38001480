import numpy as np
import pytest

from arma_renyi.verification import random_stable_model

_CRITERIA = []


@pytest.fixture
def record():
    """Record one acceptance line; printed in the terminal summary."""
    def _record(number, ok, detail):
        _CRITERIA.append((number, ok, detail))
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(_CRITERIA, key=lambda c: c[0]):
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def stable_models(rng):
    return [random_stable_model(rng, family="gaussian" if k % 2 else "laplace") for k in range(12)]
