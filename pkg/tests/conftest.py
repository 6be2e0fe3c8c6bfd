import pytest

from nscartan.finite_algebra import GF, build_ext_field


@pytest.fixture(scope="session")
def small_fields():
    return [GF(q) for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27)]


@pytest.fixture(scope="session")
def F4():
    return build_ext_field(2, 2)
