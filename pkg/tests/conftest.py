import random

import pytest

from labeled_thompson.diagrams import Context
from labeled_thompson.groups import (
    CyclicGroup,
    FiniteTableGroup,
    WreathRecursion,
    symmetric_table,
)


def make_context(backend, rule, **kw) -> Context:
    return Context(backend, WreathRecursion(backend, rule, **kw))


@pytest.fixture(scope="session")
def z2_diag():
    return make_context(CyclicGroup(2), "diagonal")


@pytest.fixture(scope="session")
def z3_diag():
    return make_context(CyclicGroup(3), "diagonal")


@pytest.fixture(scope="session")
def s3_diag():
    return make_context(symmetric_table(3), "diagonal")


@pytest.fixture(scope="session")
def z3_right():
    return make_context(CyclicGroup(3), "right")


@pytest.fixture(scope="session")
def z_adding():
    return make_context(CyclicGroup(None), "adding")


@pytest.fixture(scope="session")
def trivial_diag():
    return make_context(FiniteTableGroup([[0]]), "diagonal")


@pytest.fixture()
def rng():
    return random.Random(20240901)
