import pytest

from heitdim import chain, present
from heitdim.lattice import Relation


@pytest.fixture
def chain3():
    """0 < m < 1."""
    return present(["m"])


@pytest.fixture
def square():
    """Boolean 2^2 with atoms a and b = not a."""
    return present(["a", "b"], [Relation.leq(["a", "b"], []), Relation.leq([], ["a", "b"])])


@pytest.fixture
def free2():
    return present(["x", "y"])


@pytest.fixture(params=[2, 3, 4, 5, 6])
def any_chain(request):
    return request.param, chain(request.param)
