import pytest

from simplexcoh.simplex_core import catalog_map, hietarinta_catalog

CATALOG_NAMES = [name for name, _ in hietarinta_catalog()]

# Expected (n, d, h) for each catalog matrix.
EXPECTED_TABLE = {
    "A1": (50, 9, 16),
    "A2": (37, 7, 31),
    "A3": (54, 9, 12),
    "A4": (50, 9, 16),
    "A1T": (50, 9, 16),
    "A2T": (50, 9, 16),
    "A3T": (40, 7, 28),
    "A4T": (50, 9, 16),
}


@pytest.fixture(scope="session")
def a1():
    return catalog_map("A1")


@pytest.fixture(params=CATALOG_NAMES)
def catalog_entry(request):
    return request.param, catalog_map(request.param)


# Filled by tests/test_acceptance.py: criterion number -> (passed, summary).
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, text = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {text}")
