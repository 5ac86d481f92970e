import pytest

from ditop import fixtures as fx

ALL_FIXTURES = ("seg", "wedge", "pv1", "sf", "hs", "matchbox", "topface")


@pytest.fixture(params=ALL_FIXTURES)
def any_fixture(request):
    return request.param, fx.get_fixture(request.param)


@pytest.fixture
def seg():
    return fx.seg()


@pytest.fixture
def wedge():
    return fx.wedge()


@pytest.fixture
def pv1():
    return fx.pv1()


@pytest.fixture
def sf():
    return fx.sf()


@pytest.fixture
def hs():
    return fx.hs()


@pytest.fixture
def matchbox():
    return fx.matchbox()


@pytest.fixture
def topface():
    return fx.topface()
