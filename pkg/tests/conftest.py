import random

import pytest

from mdsrepair.bundled import bundled_code
from mdsrepair.gf import FieldSpec


@pytest.fixture(scope="session")
def f4():
    return FieldSpec(2, [1, 1, 1])


@pytest.fixture(scope="session")
def f16():
    return FieldSpec(2, [1, 1, 0, 0, 1])


@pytest.fixture(scope="session")
def f256():
    return FieldSpec(2, [1, 0, 1, 1, 1, 0, 0, 0, 1])


@pytest.fixture(scope="session")
def rs53():
    return bundled_code("rs53")


@pytest.fixture(scope="session")
def rs64():
    return bundled_code("rs64")


@pytest.fixture(scope="session")
def fb1410():
    return bundled_code("fb1410")


@pytest.fixture
def rng():
    return random.Random(0xC0DE)
