import random

import pytest

from ncmotives.corpus import corpus_algebra


@pytest.fixture(scope="session")
def q():
    return corpus_algebra("Q")


@pytest.fixture(scope="session")
def qxq():
    return corpus_algebra("QxQ")


@pytest.fixture(scope="session")
def a2():
    return corpus_algebra("A2")


@pytest.fixture(scope="session")
def a3():
    return corpus_algebra("A3")


@pytest.fixture(scope="session")
def kronecker():
    return corpus_algebra("Kronecker")


@pytest.fixture()
def rng():
    return random.Random(20240501)
