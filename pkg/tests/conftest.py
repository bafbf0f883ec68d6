import random

import pytest

from coltrs.galois import field_new
from coltrs.golden import reference_spec


@pytest.fixture
def rng():
    return random.Random(20261018)


@pytest.fixture(scope="session")
def gf29():
    return field_new(29)


@pytest.fixture(scope="session")
def gf27():
    return field_new(3, 3)


@pytest.fixture(scope="session")
def gf64():
    return field_new(2, 6)


@pytest.fixture(scope="session")
def example1():
    return reference_spec(1)


@pytest.fixture(scope="session")
def example2():
    return reference_spec(2)


@pytest.fixture(scope="session")
def example3():
    return reference_spec(3)
