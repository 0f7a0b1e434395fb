import pytest

from multipath.algebra import dual_numbers, ground_field
from multipath.fields import GF, QQ


@pytest.fixture
def K():
    return ground_field()[0]


@pytest.fixture
def dual():
    return dual_numbers()


@pytest.fixture(params=[QQ, GF(5)], ids=["Q", "GF5"])
def field(request):
    return request.param
