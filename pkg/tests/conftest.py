import pytest

from semispec.potential import builtin


@pytest.fixture(scope="session")
def v1():
    return builtin("v1")


@pytest.fixture(scope="session")
def v2():
    return builtin("v2")


@pytest.fixture(scope="session")
def v3():
    return builtin("v3")


@pytest.fixture(scope="session")
def v4():
    return builtin("v4")
