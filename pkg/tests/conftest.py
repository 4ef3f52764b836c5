import pytest

from pertlab import RationalPoly, build_series

X4 = RationalPoly.from_terms({4: 1})
X2 = RationalPoly.from_terms({2: 1})
ONE = RationalPoly((1,))


@pytest.fixture(scope="session")
def series_x4():
    return build_series(X4, 3)


@pytest.fixture(scope="session")
def series_x2():
    return build_series(X2, 6)
