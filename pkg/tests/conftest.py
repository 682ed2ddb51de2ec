import pytest

from substlyap import Substitution, parse


@pytest.fixture
def tm() -> Substitution:
    return parse("a->ab;b->ba")


@pytest.fixture
def pd() -> Substitution:
    return parse("a->ab;b->aa")


@pytest.fixture
def ex2() -> Substitution:
    return parse("a->abbab;b->baaba")


@pytest.fixture
def rs() -> Substitution:
    # four-letter rule with the bar-swap symmetry a<->A, b<->B
    return parse("a->ab;b->aB;B->Ab;A->AB")
