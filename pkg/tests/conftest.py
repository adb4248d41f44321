import pytest

from hallalg.quivers import a_n_quiver


@pytest.fixture(scope="session")
def a1():
    return a_n_quiver(1)


@pytest.fixture(scope="session")
def a2():
    return a_n_quiver(2)
