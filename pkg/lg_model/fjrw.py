"""
W-Curves
Selection rules, line-bundle degrees, virtual codimensions and cover degrees on the moduli of
W-curves, Chern characters of the pushforwards via Bernoulli polynomials, and genus-zero
concave correlators with three or four narrow insertions.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial
from typing import Iterable, Optional, Sequence

from lg_model.errors import BroadNodeEncountered, InvalidElement, NotConcave, UnstableCurve
from lg_model.exactmath import bernoulli_eval, is_integral, mod1
from lg_model.polynomial import InvertiblePolynomial, charges, fermat
from lg_model.symmetry import Subgroup, SymmetryElement, aut_subgroup, element, full_group

logger = logging.getLogger(__name__)

VALUE = "value"
EMPTY = "empty"
UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class InsertionList:
    genus: int
    insertions: tuple

    @property
    def n(self) -> int:
        return len(self.insertions)

    @property
    def euler_term(self) -> int:
        """2g - 2 + n"""
        return 2 * self.genus - 2 + self.n

    def multiplicity(self, i: int, j: int) -> Fraction:
        return self.insertions[i].phases[j]


def insertion_list(genus: int, insertions: Iterable[SymmetryElement]) -> InsertionList:
    if genus < 0:
        raise ValueError("genus must be non-negative")
    return InsertionList(genus, tuple(insertions))


@dataclass(frozen=True)
class ModuliProfile:
    nonempty: bool
    line_degrees: tuple
    euler_characteristics: tuple
    virtual_codim: Fraction
    cycle_degree: Fraction
    cover_degree: Fraction
    group_cover_degree: Fraction


@dataclass(frozen=True)
class GRRRow:
    """
    Degree-h part of ch(R pi_* L_j):
    kappa * kappa_h + sum_i psi[i] * psi_i^h + sum_Theta boundary[Theta] * j_*(sum psi^a (-psi')^a')
    with a + a' = h - 1 on the boundary stratum whose node carries multiplicity Theta
    """
    coordinate: int
    h: int
    kappa: Fraction
    psi: tuple
    boundary: dict = field(default_factory=dict)
    delta: int = 1

    def euler_characteristic(self, genus: int) -> Fraction:
        """Contract the h = 0 row: kappa_0 = 2g - 2 + n, psi^0 = 1 and no boundary term"""
        if self.h != 0:
            raise ValueError("only the h = 0 row contracts to an Euler characteristic")
        return self.kappa * (2 * genus - 2 + len(self.psi)) + sum(self.psi, Fraction(0))


@dataclass(frozen=True)
class Degeneration:
    """One boundary point of the genus-zero four-pointed moduli: markings {a, b} | {c, d}"""
    left: tuple
    right: tuple
    node_left: tuple
    node_right: tuple

    @property
    def broad(self) -> bool:
        return any(t == 0 for t in self.node_left)


@dataclass(frozen=True)
class CorrelatorResult:
    """value is the unnormalized intersection number; normalized_value = normalization * value"""
    status: str
    value: Fraction = Fraction(0)
    virtual_codim: Optional[Fraction] = None
    normalization: Optional[Fraction] = None
    normalized_value: Optional[Fraction] = None
    reason: Optional[str] = None
    degenerations: tuple = ()


# ============ Selection rules ============

def _check_insertions(group: Optional[Subgroup], ins: InsertionList):
    if group is None:
        return
    for h in ins.insertions:
        if h not in group:
            raise InvalidElement({"message": "insertion does not lie in G", "element": str(h)})


def line_degrees(p: InvertiblePolynomial, ins: InsertionList) -> tuple:
    """deg |L_j| = q_j (2g - 2 + n) - sum_i Theta^i_j"""
    q = charges(p).charges
    return tuple(
        q[j] * ins.euler_term - sum((ins.multiplicity(i, j) for i in range(ins.n)), Fraction(0))
        for j in range(p.n_vars)
    )


def virtual_codim(p: InvertiblePolynomial, ins: InsertionList) -> Fraction:
    """D = (g - 1) c_hat + sum_i (age(h_i) - q)"""
    cv = charges(p)
    return (ins.genus - 1) * cv.central_charge + sum(
        (h.age - cv.total for h in ins.insertions), Fraction(0)
    )


def moduli_profile(p: InvertiblePolynomial, group: Optional[Subgroup], ins: InsertionList) -> ModuliProfile:
    """
    Selection-rule verdict and numerical invariants of W_{g,n,G}(h_1, ..., h_n)

    Args:
        p: Invertible polynomial
        group: Admissible group the insertions are drawn from; Aut(W) when None
        ins: Genus and insertion list

    Returns:
        ModuliProfile; line degrees are integers exactly when the moduli space is nonempty

    Raises:
        UnstableCurve: if n > 0 and 2g - 2 + n <= 0
        InvalidElement: if an insertion lies outside the group
    """
    if ins.n > 0 and ins.euler_term <= 0:
        raise UnstableCurve({"message": "2g - 2 + n must be positive",
                             "genus": ins.genus, "markings": ins.n})
    group = aut_subgroup(p) if group is None else group
    _check_insertions(group, ins)

    aut = full_group(p)
    delta = aut.exponent
    degrees = line_degrees(p, ins)
    if ins.n > 0:
        nonempty = all(is_integral(v) for v in degrees)
        exponent = 2 * ins.genus - 1 + ins.n
    else:
        nonempty = (2 * ins.genus - 2) % charges(p).degree == 0
        exponent = 2 * ins.genus
    codim = virtual_codim(p, ins)
    cycle = 2 * ((charges(p).central_charge - 3) * (1 - ins.genus) + ins.n
                 - sum((h.age - charges(p).total for h in ins.insertions), Fraction(0)))
    return ModuliProfile(
        nonempty=nonempty,
        line_degrees=degrees,
        euler_characteristics=tuple(v + 1 - ins.genus for v in degrees),
        virtual_codim=codim,
        cycle_degree=cycle,
        cover_degree=Fraction(aut.order ** exponent, delta ** p.n_vars),
        group_cover_degree=Fraction(group.order ** exponent, delta ** p.n_vars),
    )


def r_spin_rank(r: int, genus: int, thetas: Sequence) -> Fraction:
    """
    Virtual rank for x^r: (g - 1)(1 - 2/r) + sum_i (Theta_i - 1/r)

    Args:
        r: Exponent, r >= 2
        genus: Genus g
        thetas: Multiplicities in {0, 1/r, ..., (r-1)/r}
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    values = tuple(Fraction(t) for t in thetas)
    if any(v < 0 or v >= 1 or (v * r).denominator != 1 for v in values):
        raise ValueError("multiplicities must lie in {0, 1/r, ..., (r-1)/r}")
    return (genus - 1) * (1 - Fraction(2, r)) + sum((v - Fraction(1, r) for v in values), Fraction(0))


# ============ Chern characters ============

def grr_expansion(p: InvertiblePolynomial, ins: InsertionList, j: int, h: int) -> GRRRow:
    """
    Coefficients of ch_h(R pi_* L_j) in kappa, psi and boundary classes

    Args:
        p: Invertible polynomial
        ins: Insertion list
        j: Coordinate index of the line bundle
        h: Degree, h >= 0

    Returns:
        GRRRow with kappa B_{h+1}(q_j)/(h+1)!, psi_i -B_{h+1}(Theta^i_j)/(h+1)! and boundary
        (delta/2) B_{h+1}(Theta)/(h+1)! for every Theta in (1/delta)Z/Z where it is nonzero
    """
    if h < 0:
        raise ValueError("degree must be non-negative")
    q = charges(p).charges[j]
    delta = full_group(p).exponent
    scale = Fraction(1, factorial(h + 1))
    kappa = bernoulli_eval(h + 1, q) * scale
    psi = tuple(-bernoulli_eval(h + 1, ins.multiplicity(i, j)) * scale for i in range(ins.n))
    boundary = {}
    if h > 0:
        for k in range(delta):
            theta = Fraction(k, delta)
            coefficient = Fraction(delta, 2) * bernoulli_eval(h + 1, theta) * scale
            if coefficient:
                boundary[theta] = coefficient
    return GRRRow(coordinate=j, h=h, kappa=kappa, psi=psi, boundary=boundary, delta=delta)


# ============ Genus-zero correlators ============

def degenerations(p: InvertiblePolynomial, ins: InsertionList) -> tuple:
    """
    The three boundary points of the genus-zero four-pointed moduli with their node multiplicities

    Marking 0 sits on the left branch; the left node multiplicity solves the three-point
    selection rule q - Theta_a - Theta_b - Theta' in Z on that branch, and the right one is its
    complement, so Theta' + Theta'' is an integer.
    """
    if ins.n != 4 or ins.genus != 0:
        raise ValueError("degenerations are defined for genus zero with four markings")
    q = charges(p).charges
    found = []
    for partner in (1, 2, 3):
        left = (0, partner)
        right = tuple(i for i in range(1, 4) if i != partner)
        node_left = tuple(
            mod1(q[j] - ins.multiplicity(left[0], j) - ins.multiplicity(left[1], j))
            for j in range(p.n_vars)
        )
        node_right = tuple(mod1(-t) for t in node_left)
        found.append(Degeneration(left, right, node_left, node_right))
    return tuple(found)


def _check_concave(ins: InsertionList, degrees: Sequence[Fraction]):
    if ins.genus != 0 or any(not h.is_narrow for h in ins.insertions):
        raise NotConcave({"message": "concavity needs genus zero and narrow insertions"})
    if any(v > -1 for v in degrees):
        raise NotConcave({"message": "some line bundle has degree above -1",
                          "line_degrees": [str(v) for v in degrees]})


def _check_component_concave(p: InvertiblePolynomial, ins: InsertionList, deg: Degeneration):
    q = charges(p).charges
    for markings, node in ((deg.left, deg.node_left), (deg.right, deg.node_right)):
        for j in range(p.n_vars):
            d = q[j] - sum((ins.multiplicity(i, j) for i in markings), Fraction(0)) - node[j]
            if d > -1:
                raise NotConcave({"message": "line bundle has sections on a boundary component",
                                  "markings": list(markings), "coordinate": j})


def four_point_value(p: InvertiblePolynomial, ins: InsertionList, broad_nodes: bool = False) -> Fraction:
    """
    Integral of c_1((R^1 pi_* L_{j*})^dual) = ch_1(R pi_* L_{j*}) over the genus-zero four-pointed
    moduli, where j* is the single coordinate with h^1 = 1.
    Uses int kappa_1 = int psi_i = 1 and degree 1 for each boundary point; each boundary stratum
    of W-curves covers its point with degree 1/delta per node branch.

    Raises:
        BroadNodeEncountered: if a degeneration has a node multiplicity 0 and broad_nodes is off
        NotConcave: if a boundary component carries a line bundle of degree above -1
    """
    degrees = line_degrees(p, ins)
    ranks = [-v - 1 for v in degrees]
    target = [j for j, rk in enumerate(ranks) if rk == 1]
    if len(target) != 1 or sum(ranks) != 1:
        raise ValueError("four-point evaluation needs exactly one line bundle with h^1 = 1")
    j_star = target[0]
    row = grr_expansion(p, ins, j_star, 1)
    total = row.kappa + sum(row.psi, Fraction(0))
    for deg in degenerations(p, ins):
        if deg.broad and not broad_nodes:
            raise BroadNodeEncountered({
                "message": "degeneration has a broad node",
                "split": [list(deg.left), list(deg.right)],
                "node": [str(t) for t in deg.node_left],
            })
        _check_component_concave(p, ins, deg)
        for theta in (deg.node_left[j_star], deg.node_right[j_star]):
            total += row.boundary.get(theta, Fraction(0)) / row.delta
    return total


def genus0_correlator(p: InvertiblePolynomial, group: Optional[Subgroup], insertions: Sequence[SymmetryElement],
                      broad_nodes: bool = False) -> CorrelatorResult:
    """
    Genus-zero concave correlator with three or four narrow insertions

    Args:
        p: Invertible polynomial
        group: Admissible group; Aut(W) when None
        insertions: Narrow sector elements h_1, ..., h_n with n in {3, 4}
        broad_nodes: Evaluate boundary terms with Theta = 0 using B_{h+1}(0)

    Returns:
        CorrelatorResult. n = 3 gives 1 when D = 0 and 0 when D > 0; n = 4 integrates
        the GRR degree-one row when D = 1. An empty moduli space has status "empty";
        broad nodes without the flag have status "unsupported". `value` is the bare
        intersection number; `normalization` is |G|^g / deg and `normalized_value` their product.

    Raises:
        NotConcave: if the concavity criterion fails
    """
    ins = insertion_list(0, insertions)
    if ins.n not in (3, 4):
        raise ValueError("only three- and four-point correlators are supported")
    profile = moduli_profile(p, group, ins)
    if not profile.nonempty:
        return CorrelatorResult(status=EMPTY, virtual_codim=profile.virtual_codim,
                                reason="selection rule fails")
    _check_concave(ins, profile.line_degrees)
    normalization = 1 / profile.group_cover_degree
    codim = profile.virtual_codim
    dimension = ins.n - 3
    if codim != dimension:
        return CorrelatorResult(status=VALUE, value=Fraction(0), virtual_codim=codim,
                                normalization=normalization, normalized_value=Fraction(0),
                                reason="virtual codimension differs from the moduli dimension")
    if ins.n == 3:
        value = Fraction(1)
        degs = ()
    else:
        degs = degenerations(p, ins)
        try:
            value = four_point_value(p, ins, broad_nodes=broad_nodes)
        except BroadNodeEncountered as e:
            logger.info("⚠️  broad node in %s: %s", p, e.detail)
            return CorrelatorResult(status=UNSUPPORTED, virtual_codim=codim, normalization=normalization,
                                    reason="broad node", degenerations=degs)
    return CorrelatorResult(status=VALUE, value=value, virtual_codim=codim, normalization=normalization,
                            normalized_value=normalization * value, degenerations=degs)


# ============ r-spin sweep ============

@dataclass(frozen=True)
class SweepRecord:
    r: int
    genus: int
    insertions: tuple
    status: str
    value: Optional[Fraction] = None
    closed_form: Optional[Fraction] = None


def closed_form_four_point(r: int, m: Sequence[int]) -> Fraction:
    """min_i min(m_i, r - 1 - m_i) / r for narrow insertions with sum m_i = 2r - 2, else 0"""
    if sum(m) != 2 * r - 2:
        return Fraction(0)
    return Fraction(min(min(v, r - 1 - v) for v in m), r)


def r_spin_insertions(r: int, n: int) -> tuple:
    """Nondecreasing narrow insertion lists (m_1, ..., m_n) with 0 <= m_i <= r - 2"""
    return tuple(combinations_with_replacement(range(r - 1), n))


def r_spin_sweep(r: int, points: Sequence[int] = (3, 4), broad_nodes: bool = False) -> tuple:
    """
    Every narrow genus-zero correlator of x^r with the given numbers of insertions

    Insertion m stands for the sector with multiplicity (m + 1)/r, i.e. j^(m+1).
    """
    p = fermat(r)
    group = aut_subgroup(p)
    records = []
    for n in points:
        for m in r_spin_insertions(r, n):
            ins = [element(p, [Fraction(v + 1, r)]) for v in m]
            result = genus0_correlator(p, group, ins, broad_nodes=broad_nodes)
            closed = closed_form_four_point(r, m) if n == 4 and result.status == VALUE else None
            records.append(SweepRecord(r=r, genus=0, insertions=m, status=result.status,
                                       value=result.value if result.status == VALUE else None,
                                       closed_form=closed))
    logger.debug("✅ r-spin sweep r=%d: %d records", r, len(records))
    return tuple(records)
