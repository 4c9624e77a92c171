import pytest

from dyadiclat import make_field


@pytest.fixture(scope="session")
def q2():
    return make_field(1)


@pytest.fixture(scope="session")
def f2():
    return make_field(2)
