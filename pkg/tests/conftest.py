import pytest

import findim

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


@pytest.fixture(scope="session")
def example():
    """Example algebra over GF(2) together with its named modules."""
    return findim.example_algebra(2)


@pytest.fixture(scope="session")
def example_by_prime():
    cache = {}

    def get(p):
        if p not in cache:
            cache[p] = findim.example_algebra(p)
        return cache[p]

    return get


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        tr.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
