"""
Exact Math
Rational arithmetic, integer lattices and Bernoulli polynomials shared by every other module.
Values are Python Fractions; matrices are sympy Matrices with integer or rational entries.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import lcm
from typing import Iterable, Mapping, Sequence, Union

from sympy import Matrix, Rational as SympyRational
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_decomp
from sympy.polys.appellseqs import bernoulli_poly
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from lg_model.errors import SingularMatrix

Rational = Fraction
RationalLike = Union[Fraction, int, SympyRational]


def as_fraction(value: RationalLike) -> Fraction:
    """Convert an int, Fraction or sympy Rational into a reduced Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if hasattr(value, "p") and hasattr(value, "q"):
        return Fraction(int(value.p), int(value.q))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    return Fraction(value)


def as_sympy(value: RationalLike) -> SympyRational:
    value = as_fraction(value)
    return SympyRational(value.numerator, value.denominator)


def fraction_str(value: RationalLike) -> str:
    """Serialize a rational as "p/q" (or "p" when integral), never as a float"""
    return str(as_fraction(value))


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


def mod1(value: Fraction) -> Fraction:
    return value - (value.numerator // value.denominator)


def is_integral(value: Fraction) -> bool:
    return as_fraction(value).denominator == 1


def denominator_lcm(values: Iterable[RationalLike]) -> int:
    return reduce(lcm, (as_fraction(v).denominator for v in values), 1)


# ============ Matrices ============

def to_fraction_rows(m: Matrix) -> tuple:
    return tuple(tuple(as_fraction(m[i, j]) for j in range(m.cols)) for i in range(m.rows))


def to_int_rows(m: Matrix) -> tuple:
    return tuple(tuple(int(m[i, j]) for j in range(m.cols)) for i in range(m.rows))


def invert(m: Matrix) -> Matrix:
    """
    Exact inverse of a square rational matrix

    Args:
        m: Square sympy Matrix with rational entries

    Returns:
        The inverse, with m * m^-1 equal to the identity

    Raises:
        SingularMatrix: if the determinant vanishes
    """
    if m.rows != m.cols:
        raise SingularMatrix({"message": "matrix is not square", "shape": [m.rows, m.cols]})
    if m.det() == 0:
        raise SingularMatrix({"message": "determinant is zero"})
    return m.inv()


def mat_vec(rows: Sequence[Sequence[Fraction]], vector: Sequence[RationalLike]) -> tuple:
    """Multiply a matrix given as nested tuples by a vector, staying in Fractions"""
    return tuple(sum((a * b for a, b in zip(row, vector)), Fraction(0)) for row in rows)


@dataclass(frozen=True)
class SmithDecomposition:
    """left * E * right = diag(diagonal), diagonal positive with d_1 | d_2 | ... | d_N"""
    diagonal: tuple
    left: Matrix
    right: Matrix

    @property
    def exponent(self) -> int:
        return self.diagonal[-1] if self.diagonal else 1

    @property
    def invariant_factors(self) -> tuple:
        return tuple(d for d in self.diagonal if d != 1)


def smith_normal_form(m: Matrix) -> SmithDecomposition:
    """
    Smith decomposition of a square nonsingular integer matrix

    Args:
        m: Square integer sympy Matrix

    Returns:
        SmithDecomposition with unimodular left/right transforms

    Raises:
        SingularMatrix: if det(m) = 0
    """
    if m.rows != m.cols or m.det() == 0:
        raise SingularMatrix({"message": "Smith form needs a square nonsingular matrix"})
    diag, left, right = smith_normal_decomp(m, domain=ZZ)
    right = Matrix(right)
    entries = []
    for i in range(m.rows):
        d = int(diag[i, i])
        if d < 0:
            right[:, i] = -right[:, i]
            d = -d
        entries.append(d)
    for a, b in zip(entries, entries[1:]):
        if b % a != 0:
            raise ArithmeticError(f"Smith diagonal {entries} breaks the divisibility chain")
    return SmithDecomposition(diagonal=tuple(entries), left=Matrix(left), right=right)


def integer_matrix(m: Matrix) -> Matrix:
    """Rebuild m from Python ints so sympy keeps it over ZZ rather than QQ"""
    entries = [as_fraction(v) for v in m]
    if any(v.denominator != 1 for v in entries):
        raise ArithmeticError("matrix has non-integral entries")
    return Matrix(m.rows, m.cols, [int(v) for v in entries])


def hermite_basis(columns: Matrix) -> Matrix:
    """Canonical basis (columns, upper triangular) of the full-rank lattice spanned by the columns"""
    return hermite_normal_form(integer_matrix(columns))


def annihilator_lattice(c: Matrix) -> Matrix:
    """
    Integer lattice {k in Z^N : c * k in Z^r} for a rational r x N matrix c

    The lattice is the dual of Z^N + (rows of c), computed through one Hermite
    reduction of the scaled generators and an inverse transpose.

    Returns:
        Canonical Hermite basis of the lattice, as columns of an N x N matrix
    """
    n = c.cols
    scale = denominator_lcm(as_fraction(v) for v in c)
    generators = (c.T.row_join(Matrix.eye(n))) * scale
    h = hermite_basis(generators)
    basis = h.inv().T * scale
    if any(as_fraction(v).denominator != 1 for v in basis):
        raise ArithmeticError("annihilator basis is not integral")
    return hermite_basis(basis)


# ============ Sparse row reduction ============

def row_reduce(rows: Sequence[Mapping[int, Fraction]], n_cols: int) -> dict:
    """
    Reduced row echelon form of a sparse rational matrix

    Args:
        rows: One {column: value} mapping per row
        n_cols: Number of columns

    Returns:
        {pivot column: {column: value}} for each nonzero row of the reduced form
    """
    if not rows:
        return {}
    data = {
        i: {j: QQ(v.numerator, v.denominator) for j, v in row.items() if v}
        for i, row in enumerate(rows)
    }
    data = {i: row for i, row in data.items() if row}
    if not data:
        return {}
    dm = DomainMatrix(data, (len(rows), n_cols), QQ)
    reduced, pivots = dm.rref()
    entries = reduced.to_dok()
    by_row = {}
    for (i, j), v in entries.items():
        by_row.setdefault(i, {})[j] = Fraction(int(v.numerator), int(v.denominator))
    result = {}
    for i, pivot in enumerate(pivots):
        result[pivot] = by_row.get(i, {})
    return result


def rank(rows: Sequence[Sequence[RationalLike]]) -> int:
    """Exact rank of a dense rational matrix given as nested rows"""
    if not rows:
        return 0
    sparse = [{j: as_fraction(v) for j, v in enumerate(row) if v} for row in rows]
    return len(row_reduce(sparse, len(rows[0])))


# ============ Bernoulli polynomials ============

@lru_cache(maxsize=None)
def _bernoulli(n: int):
    return bernoulli_poly(n, polys=True)


def bernoulli_eval(n: int, x: RationalLike) -> Fraction:
    """
    Exact value B_n(x) of the n-th Bernoulli polynomial

    Args:
        n: Index, n >= 0
        x: Rational argument

    Returns:
        B_n(x) as a Fraction
    """
    if n < 0:
        raise ValueError("Bernoulli index must be non-negative")
    return as_fraction(_bernoulli(n).eval(as_sympy(x)))
