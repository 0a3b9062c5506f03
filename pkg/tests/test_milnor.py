import random
from collections import Counter
from fractions import Fraction

import pytest

from cli.parser import parse
from lg_model.errors import DegenerateRestriction
from lg_model.exactmath import rank
from lg_model.milnor import action_character, build, invariant_basis, residue_pairing
from lg_model.symmetry import aut_subgroup, j_element, j_subgroup, trivial_subgroup


def test_a_r_ring(a_r):
    ring = build(a_r(4), (0,))
    assert ring.mu == 3
    assert ring.basis == ((0,), (1,), (2,))
    assert ring.top_monomial == (2,)


def test_empty_restriction(quintic):
    ring = build(quintic, ())
    assert ring.mu == 1
    assert ring.basis == ((),)
    assert ring.hessian_nf == {(): 1}


def test_quintic_ring(quintic):
    ring = build(quintic, tuple(range(5)))
    assert ring.mu == 1024
    assert ring.top_degree == 3
    by_weight = Counter(ring.weight(m) for m in ring.basis)
    assert by_weight[5] == 101
    assert by_weight[15] == 1


def test_residue_pairing(a_r):
    ring = build(a_r(3), (0,))
    # hess = 6x and mu = 2, so x = (1/3) hess/mu
    assert residue_pairing(ring, (0,), (1,)) == Fraction(1, 3)
    assert residue_pairing(ring, (0,), (0,)) == 0


def test_gram_matrix_nondegenerate(d4):
    ring = build(d4, (0, 1))
    assert ring.mu == 4
    assert rank(ring.gram_matrix()) == 4


def test_normal_form_reduces_jacobian(a_r):
    ring = build(a_r(5), (0,))
    assert ring.normal_form({(4,): 1}) == {}
    assert ring.multiply((2,), (2,)) == {}
    assert ring.multiply((1,), (2,)) == {(3,): 1}


def test_action_character(quintic):
    ring = build(quintic, tuple(range(5)))
    j = j_element(quintic)
    assert action_character(ring, (0, 0, 0, 0, 0), j) == 0
    assert action_character(ring, (1, 0, 0, 0, 0), j) == Fraction(1, 5)
    # x1^3 x2 x3 dx: sum (m + 1) = 10
    assert action_character(ring, (3, 1, 1, 0, 0), j) == 0


def test_d4_form_is_aut_invariant(d4):
    ring = build(d4, (0, 1))
    assert (0, 1) in ring.basis
    assert all(action_character(ring, (0, 1), g) == 0 for g in aut_subgroup(d4).elements)


def test_invariant_basis(quintic, a_r):
    ring = build(quintic, tuple(range(5)))
    dims = Counter(inv.charge_degree for inv in invariant_basis(ring, j_subgroup(quintic)))
    assert dims == {1: 1, 2: 101, 3: 101, 4: 1}

    p = a_r(5)
    assert invariant_basis(build(p, (0,)), j_subgroup(p)) == ()
    assert len(invariant_basis(build(p, (0,)), trivial_subgroup(p))) == 4


def test_degenerate_restriction(chain_quintic):
    # x1^4 x2 needs x2, so W restricted to x1 misses x1
    with pytest.raises(DegenerateRestriction):
        build(chain_quintic, (0,))


@pytest.mark.parametrize("text", ["x^3+x*y^2", "x1^3*x2+x2^2*x3+x3^3"])
def test_pairing_is_invariant(text):
    p = parse(text)
    ring = build(p, tuple(range(p.n_vars)))
    rng = random.Random(7)

    def sample():
        return {m: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for m in ring.basis}

    for _ in range(10):
        a, b, c = sample(), sample(), sample()
        assert ring.residue_pairing(ring.multiply(a, b), c) == ring.residue_pairing(a, ring.multiply(b, c))
