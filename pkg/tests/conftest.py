"""
Shared polynomials for the test suite
"""
import pytest

from cli.parser import parse
from lg_model.polynomial import chain, fermat, loop, transpose


@pytest.fixture
def quintic():
    return fermat(5, 5, 5, 5, 5)


@pytest.fixture
def chain_quintic():
    return chain(4, 4, 4, 4, 5)


@pytest.fixture
def chain_quintic_transpose(chain_quintic):
    return transpose(chain_quintic)


@pytest.fixture
def d4():
    return parse("x^3+x*y^2")


@pytest.fixture
def p8():
    return parse("x^3+y^3+z^3")


@pytest.fixture
def loop33():
    return loop(3, 3)


@pytest.fixture
def a_r():
    """x^r, the A_{r-1} singularity"""
    return lambda r: fermat(r)
