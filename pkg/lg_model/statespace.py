"""
State Spaces
Bigraded A-model (H_{W,G}) and B-model (Q_{W,G}) state spaces assembled from sector Milnor rings,
their pairings, LG-CY Hodge diamonds, and the Krawitz and mirror comparisons
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from lg_model.errors import NotAAdmissible, NotCalabiYau
from lg_model.exactmath import rank
from lg_model.milnor import GradedMilnorRing, action_character, build, invariant_basis
from lg_model.polynomial import FERMAT, InvertiblePolynomial, charges, decompose, transpose
from lg_model.symmetry import (
    Subgroup,
    SymmetryElement,
    dual_group,
    element,
    rho,
)

logger = logging.getLogger(__name__)

A_MODEL = "A"
B_MODEL = "B"


@dataclass(frozen=True)
class Sector:
    element: SymmetryElement
    ring: GradedMilnorRing = field(repr=False)
    invariants: tuple = field(repr=False)

    @property
    def fixed(self) -> tuple:
        return self.element.fixed_indices

    @property
    def n_fixed(self) -> int:
        return self.element.n_fixed

    @property
    def narrow(self) -> bool:
        return self.element.is_narrow

    @property
    def age(self) -> Fraction:
        return self.element.age

    @property
    def age_inverse(self) -> Fraction:
        return self.element.inverse().age


@dataclass(frozen=True)
class StateClass:
    """x^m dx_{Fix(g)} in sector g, with its bidegree"""
    element: SymmetryElement
    monomial: tuple
    charge_degree: Fraction
    bidegree: tuple

    @property
    def total_degree(self) -> Fraction:
        return self.bidegree[0] + self.bidegree[1]


@dataclass(frozen=True)
class StateSpace:
    flavor: str
    polynomial: InvertiblePolynomial
    group: Subgroup
    sectors: tuple = field(repr=False)
    classes: tuple = field(repr=False)

    @property
    def total_dim(self) -> int:
        return len(self.classes)

    @property
    def table(self) -> dict:
        """bidegree -> dimension, sorted by bidegree"""
        counts = Counter(c.bidegree for c in self.classes)
        return dict(sorted(counts.items()))

    def poincare_polynomial(self) -> dict:
        """total degree -> dimension"""
        counts = Counter(c.total_degree for c in self.classes)
        return dict(sorted(counts.items()))

    def restricted(self, classes) -> "StateSpace":
        return StateSpace(self.flavor, self.polynomial, self.group, self.sectors, tuple(classes))


def _sectors(p: InvertiblePolynomial, group: Subgroup) -> tuple:
    contains_j = group.contains_j
    sectors = []
    for g in group.elements:
        ring = build(p, g.fixed_indices)
        sectors.append(Sector(g, ring, invariant_basis(ring, group, contains_j=contains_j)))
    return tuple(sectors)


def a_state_space(p: InvertiblePolynomial, group: Subgroup) -> StateSpace:
    """
    A-model state space H_{W,G}

    Args:
        p: Invertible polynomial
        group: A-admissible subgroup (contains j_W)

    Returns:
        StateSpace where an invariant form of degree l in sector g sits at
        (l + age(g) - q, N_g - l + age(g) - q)

    Raises:
        NotAAdmissible: if j_W is not in the group
    """
    if not group.contains_j:
        raise NotAAdmissible({"message": "A-model needs j_W in the group", "group": group.describe()})
    q = charges(p).total
    sectors = _sectors(p, group)
    classes = []
    for s in sectors:
        for inv in s.invariants:
            ell = inv.charge_degree
            bidegree = (ell + s.age - q, s.n_fixed - ell + s.age - q)
            classes.append(StateClass(s.element, inv.monomial, ell, bidegree))
    return StateSpace(A_MODEL, p, group, sectors, tuple(classes))


def b_state_space(p: InvertiblePolynomial, group: Subgroup) -> StateSpace:
    """
    B-model state space Q_{W,G}

    Args:
        p: Invertible polynomial
        group: Any subgroup of Aut(W)

    Returns:
        StateSpace where an invariant form of degree p in sector g sits at
        (p + age(g) - q, p + age(g^-1) - q)
    """
    if not group.in_sl:
        logger.info("⚠️  %s is not B-admissible; bidegrees may be fractional", group.describe())
    q = charges(p).total
    sectors = _sectors(p, group)
    classes = []
    for s in sectors:
        for inv in s.invariants:
            ell = inv.charge_degree
            bidegree = (ell + s.age - q, ell + s.age_inverse - q)
            classes.append(StateClass(s.element, inv.monomial, ell, bidegree))
    return StateSpace(B_MODEL, p, group, sectors, tuple(classes))


def pairing(space: StateSpace, a: StateClass, b: StateClass) -> Fraction:
    """Residue pairing of sector g against sector g^-1, zero otherwise"""
    if b.element != a.element.inverse():
        return Fraction(0)
    ring = build(space.polynomial, a.element.fixed_indices)
    return ring.residue_pairing(a.monomial, b.monomial)


def pairing_matrix(space: StateSpace) -> tuple:
    """
    Gram matrix of the state-space pairing in class order

    Returns:
        Nested tuples of Fractions, block-structured by (g, g^-1)
    """
    by_sector = {}
    for i, c in enumerate(space.classes):
        by_sector.setdefault(c.element, []).append(i)
    n = space.total_dim
    gram = [[Fraction(0)] * n for _ in range(n)]
    for i, a in enumerate(space.classes):
        for j in by_sector.get(a.element.inverse(), []):
            gram[i][j] = pairing(space, a, space.classes[j])
    return tuple(tuple(row) for row in gram)


def pairing_rank(space: StateSpace) -> int:
    return rank(pairing_matrix(space))


# ============ Diamonds ============

@dataclass(frozen=True)
class HodgeDiamond:
    polynomial: InvertiblePolynomial
    group: Subgroup
    dimension: int
    entries: dict
    fractional: dict
    quotient_order: int

    def h(self, p: int, q: int) -> int:
        return self.entries.get((p, q), 0)

    def rows(self) -> tuple:
        """Rows of the diamond from h^{D,D} at the top down to h^{0,0}"""
        n = self.dimension
        rows = []
        for total in range(2 * n, -1, -1):
            row = tuple(
                self.h(p, total - p)
                for p in range(n, -1, -1)
                if 0 <= total - p <= n
            )
            rows.append(row)
        return tuple(rows)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** (p + q) * dim for (p, q), dim in self.entries.items())


def lg_cy_diamond(p: InvertiblePolynomial, group: Subgroup) -> HodgeDiamond:
    """
    Chen-Ruan Hodge diamond of [X_W / G~] read off the A-model state space

    Args:
        p: Calabi-Yau type invertible polynomial
        group: Subgroup containing j_W

    Returns:
        HodgeDiamond of dimension N - 2; non-integral bidegrees are kept apart

    Raises:
        NotCalabiYau: if the charges do not sum to 1
        NotAAdmissible: if j_W is not in the group
    """
    cv = charges(p)
    if cv.total != 1:
        raise NotCalabiYau({"message": "charges must sum to 1", "sum": str(cv.total)})
    space = a_state_space(p, group)
    entries = {}
    fractional = {}
    for (a, b), dim in space.table.items():
        if a.denominator == 1 and b.denominator == 1:
            entries[(int(a), int(b))] = dim
        else:
            fractional[(a, b)] = dim
    return HodgeDiamond(
        polynomial=p,
        group=group,
        dimension=p.n_vars - 2,
        entries=dict(sorted(entries.items())),
        fractional=dict(sorted(fractional.items())),
        quotient_order=group.order // cv.degree,
    )


@dataclass(frozen=True)
class MirrorReport:
    passed: bool
    left: HodgeDiamond
    right: HodgeDiamond
    mismatches: tuple
    passes_up_to_conjugation: bool


def mirror_check(p: InvertiblePolynomial, group: Subgroup) -> MirrorReport:
    """
    Compare h^{p,q}([X_W/G~]) with h^{N-2-p,q}([X_{W^T}/G~^v]) entrywise

    Args:
        p: Calabi-Yau type invertible polynomial
        group: Calabi-Yau type subgroup

    Returns:
        MirrorReport; a mismatch is an outcome, not an error
    """
    left = lg_cy_diamond(p, group)
    right = lg_cy_diamond(transpose(p), dual_group(group))
    n = left.dimension
    mismatches = []
    conjugate_ok = True
    for a in range(n + 1):
        for b in range(n + 1):
            if left.h(a, b) != right.h(n - a, b):
                mismatches.append({"p": a, "q": b, "left": left.h(a, b), "right": right.h(n - a, b)})
            if left.h(a, b) != right.h(b, n - a):
                conjugate_ok = False
    flipped = {(n - a, b) for (a, b) in left.fractional}
    if set(right.fractional) != flipped:
        mismatches.append({"fractional_left": [list(map(str, k)) for k in left.fractional],
                           "fractional_right": [list(map(str, k)) for k in right.fractional]})
    if mismatches:
        logger.warning("❌ mirror check failed for %s with %s", p, group.describe())
    return MirrorReport(
        passed=not mismatches,
        left=left,
        right=right,
        mismatches=tuple(mismatches),
        passes_up_to_conjugation=conjugate_ok,
    )


@dataclass(frozen=True)
class KrawitzReport:
    passed: bool
    a_table: dict
    b_table: dict
    differences: tuple


def krawitz_compare(p: InvertiblePolynomial, group: Subgroup) -> KrawitzReport:
    """
    Bigraded dimensions of H_{W,G} against Q_{W^T,G^v}

    Args:
        p: Invertible polynomial
        group: A-admissible subgroup

    Returns:
        KrawitzReport listing every bidegree whose dimensions differ
    """
    a_space = a_state_space(p, group)
    b_space = b_state_space(transpose(p), dual_group(group))
    a_table = a_space.table
    b_table = b_space.table
    keys = sorted(set(a_table) | set(b_table))
    differences = tuple(
        {"bidegree": [str(k[0]), str(k[1])], "a": a_table.get(k, 0), "b": b_table.get(k, 0)}
        for k in keys if a_table.get(k, 0) != b_table.get(k, 0)
    )
    return KrawitzReport(not differences, a_table, b_table, differences)


def aut_invariant_subspace(space: StateSpace) -> StateSpace:
    """
    Classes of an A-space invariant under the whole of Aut(W)

    For Fermat W this is the narrow part of the space; a difference is logged.
    """
    p = space.polynomial
    generators = [rho(p, j) for j in range(p.n_vars)]
    kept = []
    for c in space.classes:
        ring = build(p, c.element.fixed_indices)
        if all(action_character(ring, c.monomial, h) == 0 for h in generators):
            kept.append(c)
    result = space.restricted(kept)
    if is_fermat(p) and set(result.classes) != set(narrow_subspace(space).classes):
        logger.warning("⚠️  Aut-invariant classes differ from the narrow span for %s", p)
    return result


def narrow_subspace(space: StateSpace) -> StateSpace:
    return space.restricted([c for c in space.classes if c.element.is_narrow])


def is_fermat(p: InvertiblePolynomial) -> bool:
    return all(atom.kind == FERMAT for atom in decompose(p).atoms)


def krawitz_map(space: StateSpace, state: StateClass) -> StateClass:
    """
    Explicit Krawitz bijection for Fermat W, from H_{W,G} to Q_{W^T,G^v}

    A fixed coordinate with exponent m_i becomes phase (m_i + 1)/a_i; a moved coordinate with
    phase (k_i + 1)/a_i becomes exponent k_i on a fixed coordinate.
    """
    p = space.polynomial
    if not is_fermat(p) or any(v for i, row in enumerate(p.exponents) for j, v in enumerate(row) if i != j):
        raise ValueError("the explicit map needs a diagonal Fermat exponent matrix")
    mirror = transpose(p)
    exps = [p.exponents[j][j] for j in range(p.n_vars)]
    monomial = dict(zip(state.element.fixed_indices, state.monomial))
    phases = []
    new_monomial = []
    for j, a in enumerate(exps):
        phase = state.element.phases[j]
        if phase == 0:
            phases.append(Fraction(monomial[j] + 1, a))
        else:
            phases.append(Fraction(0))
            new_monomial.append(int(phase * a) - 1)
    g = element(mirror, phases)
    ring = build(mirror, g.fixed_indices)
    m = tuple(new_monomial)
    ell = ring.charge_degree(m)
    q = charges(mirror).total
    return StateClass(g, m, ell, (ell + g.age - q, ell + g.inverse().age - q))


def space_for(p: InvertiblePolynomial, group: Subgroup, flavor: str) -> StateSpace:
    return a_state_space(p, group) if flavor == A_MODEL else b_state_space(p, group)
