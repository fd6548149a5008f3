import pytest

from degencheck.catalog import builtin


@pytest.fixture(scope="session")
def catalog():
    return builtin()
