from fractions import Fraction

import pytest
from sympy import Matrix, Rational, eye

from lg_model.errors import SingularMatrix
from lg_model.exactmath import (
    bernoulli_eval,
    fraction_str,
    hermite_basis,
    invert,
    mod1,
    parse_fraction,
    rank,
    smith_normal_form,
)


def test_invert_scalar_matrix():
    assert invert(5 * eye(5)) == eye(5) / 5


def test_invert_two_by_two():
    m = Matrix([[3, 0], [1, 2]])
    assert invert(m) == Matrix([[2, 0], [-1, 3]]) / 6
    assert m * invert(m) == eye(2)


def test_invert_is_an_involution():
    for m in (Matrix([[3, 0], [1, 2]]), Matrix([[4, 1, 0], [0, 4, 1], [0, 0, 5]]), 5 * eye(3)):
        assert invert(invert(m)) == m


def test_invert_singular():
    with pytest.raises(SingularMatrix):
        invert(Matrix([[1, 1], [1, 1]]))


def test_smith_normal_form():
    assert smith_normal_form(Matrix([[3, 0], [1, 2]])).diagonal == (1, 6)
    assert smith_normal_form(5 * eye(5)).diagonal == (5, 5, 5, 5, 5)
    assert smith_normal_form(eye(3)).diagonal == (1, 1, 1)


def test_smith_transforms():
    m = Matrix([[3, 0], [1, 2]])
    snf = smith_normal_form(m)
    assert snf.left * m * snf.right == Matrix.diag(*snf.diagonal)
    assert snf.invariant_factors == (6,)
    assert snf.exponent == 6


def test_smith_diagonal_product_is_determinant():
    for m in (Matrix([[3, 0], [1, 2]]), Matrix([[4, 1, 0], [0, 4, 1], [0, 0, 5]]), Matrix([[3, 1], [1, 3]])):
        snf = smith_normal_form(m)
        product = 1
        for d in snf.diagonal:
            product *= d
        assert product == abs(m.det())


def test_hermite_basis_of_rational_typed_matrix():
    # integer entries produced by rational arithmetic
    m = Matrix([[Rational(1, 2), 0], [0, Rational(3, 2)]]) * 2
    basis = hermite_basis(m)
    assert abs(basis.det()) == 3
    assert all(v.is_Integer for v in basis)


def test_bernoulli():
    assert bernoulli_eval(1, 0) == Fraction(-1, 2)
    assert bernoulli_eval(2, Fraction(1, 5)) == Fraction(1, 150)
    assert bernoulli_eval(0, Fraction(7, 3)) == 1
    with pytest.raises(ValueError):
        bernoulli_eval(-1, 0)


@pytest.mark.parametrize("n", range(6))
def test_bernoulli_reflection(n):
    for x in (Fraction(0), Fraction(1, 5), Fraction(2, 3), Fraction(7, 4)):
        assert bernoulli_eval(n, 1 - x) == (-1) ** n * bernoulli_eval(n, x)


def test_fraction_helpers():
    assert fraction_str(Fraction(3, 1)) == "3"
    assert fraction_str(Fraction(-2, 6)) == "-1/3"
    assert parse_fraction(" 4/10 ") == Fraction(2, 5)
    assert mod1(Fraction(-1, 5)) == Fraction(4, 5)
    assert mod1(Fraction(7, 5)) == Fraction(2, 5)


def test_rank():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[Fraction(1, 2), 0], [0, Fraction(1, 3)]]) == 2
    assert rank([]) == 0
