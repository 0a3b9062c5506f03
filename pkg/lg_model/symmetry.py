"""
Diagonal Symmetries
Aut(W), the exponent-matrix generators rho_j, j_W, SL_W, subgroups as integer lattices
and the Berglund-Hubsch-Krawitz dual group
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import lcm
from typing import Iterable, Optional, Sequence

from sympy import Matrix

from lg_model.errors import GroupTooLarge, InvalidElement
from lg_model.exactmath import (
    annihilator_lattice,
    as_fraction,
    as_sympy,
    hermite_basis,
    mat_vec,
    mod1,
    smith_normal_form,
    to_fraction_rows,
    to_int_rows,
)
from lg_model.polynomial import InvertiblePolynomial, charges, transpose

logger = logging.getLogger(__name__)

DEFAULT_MAX_GROUP = 200


@dataclass(frozen=True)
class SymmetryElement:
    """
    Diag(exp(2 pi i a_1), ..., exp(2 pi i a_N)) with phases a_j in [0, 1)
    Membership in Aut(W) means E * phases is an integer vector.
    """
    phases: tuple
    host: InvertiblePolynomial = field(compare=False, repr=False)

    def __post_init__(self):
        reduced = tuple(mod1(as_fraction(a)) for a in self.phases)
        if len(reduced) != self.host.n_vars:
            raise InvalidElement({"message": "phase vector has the wrong length",
                                  "phases": [str(a) for a in reduced]})
        object.__setattr__(self, "phases", reduced)
        if any(v.denominator != 1 for v in mat_vec(self.host.exponents, reduced)):
            raise InvalidElement({"message": "element does not preserve W",
                                  "phases": [str(a) for a in reduced]})

    @property
    def coordinates(self) -> tuple:
        """k with phases = E^-1 k mod 1; defined up to E Z^N"""
        return tuple(int(v) for v in mat_vec(self.host.exponents, self.phases))

    @property
    def age(self) -> Fraction:
        return sum(self.phases, Fraction(0))

    @property
    def fixed_indices(self) -> tuple:
        return tuple(j for j, a in enumerate(self.phases) if a == 0)

    @property
    def n_fixed(self) -> int:
        return len(self.fixed_indices)

    @property
    def is_narrow(self) -> bool:
        return self.n_fixed == 0

    @property
    def is_identity(self) -> bool:
        return all(a == 0 for a in self.phases)

    @property
    def order(self) -> int:
        return lcm(*(a.denominator for a in self.phases))

    def inverse(self) -> "SymmetryElement":
        return SymmetryElement(tuple(-a for a in self.phases), self.host)

    def __mul__(self, other: "SymmetryElement") -> "SymmetryElement":
        return SymmetryElement(tuple(a + b for a, b in zip(self.phases, other.phases)), self.host)

    def __pow__(self, k: int) -> "SymmetryElement":
        return SymmetryElement(tuple(a * k for a in self.phases), self.host)

    def __str__(self) -> str:
        return "(" + ",".join(str(a) for a in self.phases) + ")"


def element(p: InvertiblePolynomial, phases: Sequence) -> SymmetryElement:
    return SymmetryElement(tuple(as_fraction(a) for a in phases), p)


def identity(p: InvertiblePolynomial) -> SymmetryElement:
    return SymmetryElement(tuple(Fraction(0) for _ in range(p.n_vars)), p)


def rho(p: InvertiblePolynomial, j: int) -> SymmetryElement:
    """Generator rho_j: the j-th column of E^-1"""
    return SymmetryElement(tuple(row[j] for row in p.inverse), p)


def j_element(p: InvertiblePolynomial) -> SymmetryElement:
    """j_W with phases equal to the charges"""
    return SymmetryElement(charges(p).charges, p)


def age(g: SymmetryElement) -> Fraction:
    return g.age


def fixed_indices(g: SymmetryElement) -> tuple:
    return g.fixed_indices


# ============ Groups ============

@dataclass(frozen=True, eq=False)
class Subgroup:
    """
    Subgroup of Aut(W) stored as its preimage lattice {k : E^-1 k mod 1 in G}, which contains E Z^N
    The basis is the Hermite normal form of the lattice (columns), so equality is exact.
    """
    polynomial: InvertiblePolynomial
    basis: tuple

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and self.polynomial == other.polynomial
                and self.basis == other.basis)

    def __hash__(self) -> int:
        return hash((self.polynomial, self.basis))

    @cached_property
    def basis_matrix(self) -> Matrix:
        return Matrix(self.basis)

    @cached_property
    def _smith(self):
        # E = B * M with M integer; Smith form of M gives the quotient B Z^N / E Z^N
        m = self.basis_matrix.inv() * self.polynomial.matrix
        return smith_normal_form(m)

    @property
    def order(self) -> int:
        return abs(self.polynomial.determinant) // abs(int(self.basis_matrix.det()))

    @property
    def invariant_factors(self) -> tuple:
        return self._smith.invariant_factors

    @property
    def exponent(self) -> int:
        return self._smith.exponent

    @cached_property
    def _element_map(self) -> tuple:
        """Rows of E^-1 B S^-1: phases of the element indexed by a box vector u"""
        s_inv = self._smith.left.inv()
        return to_fraction_rows(Matrix(self.polynomial.inverse) * self.basis_matrix * s_inv)

    @cached_property
    def generators(self) -> tuple:
        """One generator per nontrivial invariant factor"""
        n = self.polynomial.n_vars
        gens = []
        for i, d in enumerate(self._smith.diagonal):
            if d == 1:
                continue
            u = [0] * n
            u[i] = 1
            gens.append(SymmetryElement(mat_vec(self._element_map, u), self.polynomial))
        return tuple(gens)

    @cached_property
    def elements(self) -> tuple:
        """All elements, sorted by phase vector (identity first)"""
        box = [range(d) for d in self._smith.diagonal]
        found = {
            SymmetryElement(mat_vec(self._element_map, u), self.polynomial)
            for u in product(*box)
        }
        if len(found) != self.order:
            raise ArithmeticError(f"enumerated {len(found)} elements for a group of order {self.order}")
        return tuple(sorted(found, key=lambda g: g.phases))

    @cached_property
    def _inverse_basis(self) -> tuple:
        return to_fraction_rows(self.basis_matrix.inv())

    def _contains_coordinates(self, k: Sequence[int]) -> bool:
        return all(v.denominator == 1 for v in mat_vec(self._inverse_basis, k))

    def contains(self, g: SymmetryElement) -> bool:
        return self._contains_coordinates(g.coordinates)

    def __contains__(self, g: SymmetryElement) -> bool:
        return self.contains(g)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        columns = zip(*self.basis)
        return all(other._contains_coordinates(c) for c in columns)

    def join(self, other: "Subgroup") -> "Subgroup":
        return _from_columns(self.polynomial, self.basis_matrix.row_join(other.basis_matrix))

    @cached_property
    def contains_j(self) -> bool:
        return self.contains(j_element(self.polynomial))

    @cached_property
    def in_sl(self) -> bool:
        return all(g.age.denominator == 1 for g in self.generators)

    @property
    def is_cy_type(self) -> bool:
        return self.contains_j and self.in_sl

    def dual(self) -> "Subgroup":
        return dual_group(self)

    def describe(self) -> str:
        gens = ", ".join(str(g) for g in self.generators) or "1"
        return f"<{gens}> of order {self.order}"


@dataclass(frozen=True)
class SymmetryGroup:
    polynomial: InvertiblePolynomial
    order: int
    invariant_factors: tuple
    exponent: int
    generators: tuple

    def as_subgroup(self) -> Subgroup:
        return aut_subgroup(self.polynomial)


@dataclass(frozen=True)
class Admissibility:
    a_admissible: bool
    b_admissible: bool


def _from_columns(p: InvertiblePolynomial, columns: Matrix) -> Subgroup:
    return Subgroup(p, to_int_rows(hermite_basis(columns)))


def subgroup_generated_by(p: InvertiblePolynomial, elements: Iterable[SymmetryElement]) -> Subgroup:
    """
    Smallest subgroup containing the given elements

    Args:
        p: Host polynomial
        elements: Elements of Aut(W)

    Returns:
        Subgroup with canonical Hermite basis of [E k_1 ... | E]
    """
    columns = p.matrix
    for g in elements:
        columns = columns.row_join(Matrix(list(g.coordinates)))
    return _from_columns(p, columns)


@lru_cache(maxsize=None)
def full_group(p: InvertiblePolynomial) -> SymmetryGroup:
    """
    Aut(W) as the cokernel Z^N / E Z^N, read off the Smith form of E

    Args:
        p: Invertible polynomial

    Returns:
        SymmetryGroup with order |det E|, invariant factors and exponent delta
    """
    snf = smith_normal_form(p.matrix)
    return SymmetryGroup(
        polynomial=p,
        order=abs(p.determinant),
        invariant_factors=snf.invariant_factors,
        exponent=snf.exponent,
        generators=tuple(rho(p, j) for j in range(p.n_vars)),
    )


def aut_subgroup(p: InvertiblePolynomial) -> Subgroup:
    return Subgroup(p, to_int_rows(Matrix.eye(p.n_vars)))


def trivial_subgroup(p: InvertiblePolynomial) -> Subgroup:
    return _from_columns(p, p.matrix)


def j_subgroup(p: InvertiblePolynomial) -> Subgroup:
    return subgroup_generated_by(p, [j_element(p)])


def sl_subgroup(group) -> Subgroup:
    """
    SL_W: elements whose phases sum to an integer

    Args:
        group: SymmetryGroup, Subgroup or InvertiblePolynomial of the host

    Returns:
        Subgroup {k : 1^T E^-1 k in Z}
    """
    p = group if isinstance(group, InvertiblePolynomial) else group.polynomial
    row_sums = [sum((row[j] for row in p.inverse), Fraction(0)) for j in range(p.n_vars)]
    lattice = annihilator_lattice(Matrix([[as_sympy(v) for v in row_sums]]))
    sl = Subgroup(p, to_int_rows(lattice))
    if isinstance(group, Subgroup):
        return intersection(group, sl)
    return sl


def intersection(a: Subgroup, b: Subgroup) -> Subgroup:
    """Intersection via duality: (A^v v B^v)^v"""
    return dual_group(dual_group(a).join(dual_group(b)))


def admissibility(g: Subgroup) -> Admissibility:
    return Admissibility(a_admissible=g.contains_j, b_admissible=g.in_sl)


def dual_group(g: Subgroup) -> Subgroup:
    """
    Dual group G^v in Aut(W^T): all sum_i l_i rho^v_i such that x^l is G-invariant

    Args:
        g: Subgroup of Aut(W)

    Returns:
        Subgroup of Aut(W^T) with lattice {l : l^T E^-1 k in Z for every k in G}
    """
    p = g.polynomial
    pairing = (Matrix(p.inverse) * g.basis_matrix).T
    lattice = annihilator_lattice(pairing)
    return Subgroup(transpose(p), to_int_rows(lattice))


def cyclic_subgroups(p: InvertiblePolynomial) -> tuple:
    seen = {}
    for g in aut_subgroup(p).elements:
        h = subgroup_generated_by(p, [g])
        seen.setdefault(h, None)
    return tuple(seen)


def enumerate_subgroups(p: InvertiblePolynomial, max_group: Optional[int] = None) -> tuple:
    """
    Every subgroup of Aut(W), as joins of cyclic subgroups

    Args:
        p: Invertible polynomial
        max_group: Cap on |Aut(W)|

    Returns:
        Subgroups sorted by (order, basis)

    Raises:
        GroupTooLarge: if |Aut(W)| exceeds the cap
    """
    limit = DEFAULT_MAX_GROUP if max_group is None else max_group
    order = abs(p.determinant)
    if order > limit:
        raise GroupTooLarge({"message": "Aut(W) is too large for subgroup enumeration",
                             "order": order, "limit": limit})
    cyclics = cyclic_subgroups(p)
    found = {trivial_subgroup(p)}
    frontier = list(found)
    while frontier:
        next_frontier = []
        for h in frontier:
            for c in cyclics:
                joined = h.join(c)
                if joined not in found:
                    found.add(joined)
                    next_frontier.append(joined)
        frontier = next_frontier
    logger.debug("🔧 %d subgroups of Aut(%s)", len(found), p)
    return tuple(sorted(found, key=lambda s: (s.order, s.basis)))
