from fractions import Fraction

import pytest

from lg_model.errors import ChargeOutOfRange, NotInvertibleType, NotSquare, SingularMatrix
from lg_model.polynomial import (
    CHAIN,
    FERMAT,
    LOOP,
    InvertiblePolynomial,
    canonical_id,
    charges,
    decompose,
    predicates,
    transpose,
    transversality,
)

FIFTH = Fraction(1, 5)


def test_quintic_charges(quintic):
    cv = charges(quintic)
    assert cv.charges == (FIFTH,) * 5
    assert cv.degree == 5
    assert cv.weights == (1, 1, 1, 1, 1)
    assert cv.central_charge == 3


def test_small_charges(p8, d4):
    assert charges(p8).charges == (Fraction(1, 3),) * 3
    assert charges(p8).central_charge == 1
    assert charges(d4).charges == (Fraction(1, 3), Fraction(1, 3))


def test_decompose(quintic, chain_quintic, loop33):
    atoms = decompose(quintic).atoms
    assert len(atoms) == 5 and all(a.kind == FERMAT and a.exponents == (5,) for a in atoms)

    (atom,) = decompose(chain_quintic).atoms
    assert atom.kind == CHAIN and atom.exponents == (4, 4, 4, 4, 5)

    (atom,) = decompose(loop33).atoms
    assert atom.kind == LOOP and atom.exponents == (3, 3)


def test_canonical_id_ignores_variable_order():
    a = InvertiblePolynomial(((2, 1), (0, 3)))
    b = InvertiblePolynomial(((3, 0), (1, 2)))
    assert canonical_id(a) == canonical_id(b) == "chain(2,3)"


def test_loop_rotation_is_canonical():
    a = InvertiblePolynomial(((2, 1, 0), (0, 3, 1), (1, 0, 4)))
    b = InvertiblePolynomial(((3, 1, 0), (0, 4, 1), (1, 0, 2)))
    assert canonical_id(a) == canonical_id(b) == "loop(2,3,4)"


def test_not_invertible_type():
    # x1^2 x3 + x2^2 x3 + x3^3 has valid charges but x3 is pointed to twice
    tree = InvertiblePolynomial(((2, 0, 1), (0, 2, 1), (0, 0, 3)))
    with pytest.raises(NotInvertibleType):
        decompose(tree)


def test_transpose(quintic, chain_quintic, loop33):
    assert transpose(quintic) == quintic
    assert canonical_id(transpose(loop33)) == canonical_id(loop33)

    mirror = transpose(chain_quintic)
    assert mirror.to_dsl() == "x1^4+x1*x2^4+x2*x3^4+x3*x4^4+x4*x5^5"
    cv = charges(mirror)
    assert cv.weights == (64, 48, 52, 51, 41)
    assert cv.degree == 256
    assert transpose(mirror) == chain_quintic


def test_predicates(quintic, chain_quintic_transpose, d4):
    preds = predicates(quintic)
    assert preds.is_calabi_yau and preds.is_gorenstein
    assert preds.milnor_number == 1024
    assert preds.is_transverse

    preds = predicates(chain_quintic_transpose)
    assert preds.is_calabi_yau
    assert not preds.is_gorenstein

    preds = predicates(d4)
    assert not preds.is_calabi_yau
    assert preds.milnor_number == 4


def test_transversality(quintic, chain_quintic):
    assert transversality(quintic) == ()
    # no monomial of the chain lives on {x1, x3}
    assert (0, 2) in transversality(chain_quintic)
    assert (0,) not in transversality(chain_quintic)
    assert not predicates(chain_quintic).is_transverse


def test_atom_milnor_numbers(chain_quintic, loop33):
    assert decompose(chain_quintic).atoms[0].milnor_number() == predicates(chain_quintic).milnor_number
    assert decompose(loop33).atoms[0].milnor_number() == 9


def test_invalid_matrices():
    with pytest.raises(SingularMatrix):
        InvertiblePolynomial(((1, 1), (1, 1)))
    with pytest.raises(NotSquare):
        InvertiblePolynomial(((2, 0, 1), (0, 2, 0)))
    with pytest.raises(ChargeOutOfRange):
        charges(InvertiblePolynomial(((1, 0), (0, 2))))
