from collections import Counter
from fractions import Fraction

import pytest

from lg_model.errors import NotAAdmissible, NotCalabiYau
from lg_model.polynomial import charges, transpose
from lg_model.statespace import (
    a_state_space,
    aut_invariant_subspace,
    b_state_space,
    krawitz_compare,
    krawitz_map,
    lg_cy_diamond,
    mirror_check,
    narrow_subspace,
    pairing,
    pairing_rank,
)
from lg_model.symmetry import aut_subgroup, j_element, j_subgroup, sl_subgroup, trivial_subgroup

F = Fraction


def test_quintic_narrow_degrees(quintic):
    space = a_state_space(quintic, j_subgroup(quintic))
    narrow = narrow_subspace(space)
    assert narrow.total_dim == 4
    assert narrow.poincare_polynomial() == {0: 1, 2: 1, 4: 1, 6: 1}


def test_quintic_a_table(quintic):
    space = a_state_space(quintic, j_subgroup(quintic))
    table = space.table
    assert table[(F(0), F(3))] == 1
    assert table[(F(1), F(2))] == 101
    assert table[(F(2), F(1))] == 101
    assert table[(F(3), F(0))] == 1
    assert table[(F(1), F(1))] == 1
    assert table[(F(2), F(2))] == 1
    assert space.total_dim == 208


def test_trivial_group_b_space(quintic):
    space = b_state_space(quintic, trivial_subgroup(quintic))
    # every basis form is invariant; integral degrees sit on the diagonal
    assert space.total_dim == 1024
    assert space.table[(F(0), F(0))] == 1
    assert space.table[(F(1), F(1))] == 101
    assert space.table[(F(3), F(3))] == 1
    assert all(a == b for a, b in space.table)


def test_a_model_needs_j(quintic):
    with pytest.raises(NotAAdmissible):
        a_state_space(quintic, trivial_subgroup(quintic))


def test_quintic_diamond(quintic):
    diamond = lg_cy_diamond(quintic, j_subgroup(quintic))
    assert diamond.dimension == 3
    assert diamond.h(1, 1) == 1
    assert diamond.h(2, 1) == 101
    assert diamond.h(3, 0) == 1
    assert diamond.fractional == {}
    assert diamond.euler_characteristic == -200
    assert diamond.quotient_order == 1


def test_quintic_mirror_diamond(quintic):
    diamond = lg_cy_diamond(quintic, sl_subgroup(quintic))
    assert diamond.h(1, 1) == 101
    assert diamond.h(2, 1) == 1
    assert diamond.euler_characteristic == 200
    assert diamond.quotient_order == 125


def test_chain_quintic_diamonds(chain_quintic, chain_quintic_transpose):
    diamond = lg_cy_diamond(chain_quintic, j_subgroup(chain_quintic))
    assert diamond.h(1, 1) == 1
    assert diamond.h(0, 3) == 1
    assert diamond.h(1, 2) == 101

    diamond = lg_cy_diamond(chain_quintic_transpose, j_subgroup(chain_quintic_transpose))
    assert diamond.h(1, 1) == 101
    assert diamond.h(0, 3) == 1
    assert diamond.h(1, 2) == 1


def test_diamond_rows(p8):
    diamond = lg_cy_diamond(p8, j_subgroup(p8))
    assert diamond.rows() == ((1,), (1, 1), (1,))
    assert diamond.euler_characteristic == 0


def test_diamond_needs_calabi_yau(d4):
    with pytest.raises(NotCalabiYau):
        lg_cy_diamond(d4, j_subgroup(d4))


def test_mirror_check(quintic, chain_quintic, p8):
    assert mirror_check(quintic, j_subgroup(quintic)).passed
    report = mirror_check(chain_quintic, j_subgroup(chain_quintic))
    assert report.passed
    assert report.mismatches == ()
    assert mirror_check(p8, j_subgroup(p8)).passed


def test_krawitz_compare(quintic, d4, loop33):
    assert krawitz_compare(quintic, j_subgroup(quintic)).passed
    assert krawitz_compare(d4, j_subgroup(d4)).passed
    assert krawitz_compare(loop33, aut_subgroup(loop33)).passed


@pytest.mark.slow
def test_krawitz_full_group(quintic):
    # (W, Aut(W)) against (W^T, {1})
    assert krawitz_compare(quintic, aut_subgroup(quintic)).passed


def test_pairing_rank(p8, quintic):
    space = a_state_space(p8, j_subgroup(p8))
    assert pairing_rank(space) == space.total_dim == 4
    space = a_state_space(quintic, j_subgroup(quintic))
    assert pairing_rank(space) == 208


def test_aut_invariant_subspace(quintic):
    space = a_state_space(quintic, j_subgroup(quintic))
    invariant = aut_invariant_subspace(space)
    assert set(invariant.classes) == set(narrow_subspace(space).classes)
    assert invariant.total_dim == 4


def test_krawitz_map(quintic):
    space = a_state_space(quintic, j_subgroup(quintic))
    (state,) = [c for c in space.classes if c.element == j_element(quintic)]
    image = krawitz_map(space, state)
    assert image.element.is_identity
    assert image.monomial == (0, 0, 0, 0, 0)
    assert image.bidegree == state.bidegree

    untwisted = [c for c in space.classes if c.element.is_identity and c.monomial == (0, 0, 0, 0, 0)]
    image = krawitz_map(space, untwisted[0])
    assert image.element == j_element(transpose(quintic))
    assert image.bidegree == untwisted[0].bidegree


def test_krawitz_map_needs_fermat(chain_quintic):
    space = a_state_space(chain_quintic, j_subgroup(chain_quintic))
    with pytest.raises(ValueError):
        krawitz_map(space, space.classes[0])


def test_a_total_degree(quintic, p8, d4):
    for p, group in ((quintic, j_subgroup(quintic)), (p8, j_subgroup(p8)), (d4, aut_subgroup(d4))):
        q = charges(p).total
        for c in a_state_space(p, group).classes:
            assert c.total_degree == c.element.n_fixed + 2 * c.element.age - 2 * q


def test_pairing_pairs_complementary_degrees(p8, d4):
    for p, group in ((p8, aut_subgroup(p8)), (d4, aut_subgroup(d4))):
        space = a_state_space(p, group)
        target = 2 * charges(p).central_charge
        nonzero = 0
        for a in space.classes:
            for b in space.classes:
                if pairing(space, a, b):
                    nonzero += 1
                    assert a.total_degree + b.total_degree == target
        assert nonzero > 0


def test_inverse_sectors_have_equal_dimension(quintic, p8):
    for space in (a_state_space(quintic, j_subgroup(quintic)), b_state_space(p8, aut_subgroup(p8))):
        dims = Counter(c.element for c in space.classes)
        for g in space.group.elements:
            assert dims[g] == dims[g.inverse()]
