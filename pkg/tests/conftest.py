import pytest

from cohfun import BaseRing, FpModule, Matrix, ModMorphism


@pytest.fixture(scope="session")
def zz():
    return BaseRing.integers()


@pytest.fixture(scope="session")
def f5():
    return BaseRing.prime_field(5)


def mat(ring, rows, cols=None):
    return Matrix.from_rows(ring, rows, cols=cols)


def cyclic(ring, d):
    return FpModule.cyclic(ring, d)


def free(ring, n):
    return FpModule.free(ring, n)


def mor(a, b, rows):
    return ModMorphism(a, b, Matrix.from_rows(a.ring, rows, cols=a.gens))
