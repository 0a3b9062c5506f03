from fractions import Fraction

import pytest

from cli.parser import parse
from lg_model.errors import GroupTooLarge, InvalidElement
from lg_model.polynomial import transpose
from lg_model.symmetry import (
    admissibility,
    aut_subgroup,
    dual_group,
    element,
    enumerate_subgroups,
    full_group,
    identity,
    intersection,
    j_element,
    j_subgroup,
    rho,
    sl_subgroup,
    subgroup_generated_by,
    trivial_subgroup,
)

THIRD = Fraction(1, 3)


def test_full_group_orders(quintic, d4, loop33):
    aut = full_group(quintic)
    assert aut.order == 3125
    assert aut.invariant_factors == (5, 5, 5, 5, 5)

    aut = full_group(d4)
    assert aut.order == 6
    assert aut.invariant_factors == (6,)
    assert aut.exponent == 6

    assert full_group(loop33).order == 8


def test_j_element(quintic, d4, p8):
    j = j_element(quintic)
    assert j.phases == (Fraction(1, 5),) * 5
    assert j.order == 5
    assert j.is_narrow

    # order of j is 3 while the exponent of Aut(D4) is 6
    assert j_element(d4).phases == (THIRD, THIRD)
    assert j_element(d4).order == 3
    assert j_element(p8).order == 3


def test_age(quintic):
    j = j_element(quintic)
    assert identity(quintic).age == 0
    assert (j ** 2).age == 2
    assert (j ** 5).is_identity


def test_element_validation(quintic):
    with pytest.raises(InvalidElement):
        element(quintic, [Fraction(1, 2), 0, 0, 0, 0])
    with pytest.raises(InvalidElement):
        element(quintic, [Fraction(1, 5)] * 4)


def test_sl_subgroup(quintic):
    sl = sl_subgroup(quintic)
    assert sl.order == 625
    assert sl.in_sl
    assert sl_subgroup(full_group(quintic)) == sl
    assert intersection(aut_subgroup(quintic), sl) == sl


def test_admissibility(quintic):
    verdict = admissibility(j_subgroup(quintic))
    assert verdict.a_admissible and verdict.b_admissible
    verdict = admissibility(trivial_subgroup(quintic))
    assert not verdict.a_admissible and verdict.b_admissible


def test_subgroup_membership(quintic):
    g = j_subgroup(quintic)
    assert g.order == 5
    assert j_element(quintic) ** 3 in g
    assert rho(quintic, 0) not in g
    assert g.is_subgroup_of(sl_subgroup(quintic))
    assert len(g.elements) == 5


def test_dual_group_exchanges_trivial_and_aut(quintic, chain_quintic):
    for p in (quintic, chain_quintic):
        assert dual_group(trivial_subgroup(p)) == aut_subgroup(transpose(p))
        assert dual_group(aut_subgroup(p)) == trivial_subgroup(transpose(p))


def test_dual_group_exchanges_j_and_sl(quintic, chain_quintic):
    dual = dual_group(j_subgroup(quintic))
    assert dual.order == 625
    assert dual == sl_subgroup(transpose(quintic))
    assert dual_group(j_subgroup(chain_quintic)) == sl_subgroup(transpose(chain_quintic))


def test_dual_group_order_and_involution(loop33):
    aut_order = full_group(loop33).order
    for g in enumerate_subgroups(loop33):
        dual = dual_group(g)
        assert g.order * dual.order == aut_order
        assert dual_group(dual) == g


def test_dual_group_reverses_inclusion(p8):
    subgroups = enumerate_subgroups(p8)
    for g in subgroups:
        for h in subgroups:
            if g.is_subgroup_of(h):
                assert dual_group(h).is_subgroup_of(dual_group(g))


def test_enumerate_subgroups(d4, p8):
    # Aut(D4) is cyclic of order 6
    assert [g.order for g in enumerate_subgroups(d4)] == [1, 2, 3, 6]
    # (Z/3)^3 has 1 + 13 + 13 + 1 subgroups
    assert len(enumerate_subgroups(p8)) == 28


def test_enumerate_subgroups_cap(quintic):
    with pytest.raises(GroupTooLarge):
        enumerate_subgroups(quintic, max_group=200)


def test_subgroup_generated_by(p8):
    g = subgroup_generated_by(p8, [rho(p8, 0), rho(p8, 1)])
    assert g.order == 9
    assert g.invariant_factors == (3, 3)
    assert not g.contains_j


def test_sl_subgroup_of_two_cubics():
    p = parse("x^3+y^3")
    sl = sl_subgroup(p)
    assert sl.order == 3
    assert element(p, [THIRD, 2 * THIRD]) in sl
    assert j_element(p) not in sl


def test_age_of_inverse(p8, d4):
    for p in (p8, d4):
        for g in aut_subgroup(p).elements:
            assert g.age + g.inverse().age == p.n_vars - g.n_fixed


def test_cy_type_is_preserved_by_duality(p8):
    subgroups = enumerate_subgroups(p8)
    assert any(g.is_cy_type for g in subgroups)
    for g in subgroups:
        assert dual_group(g).is_cy_type == g.is_cy_type
