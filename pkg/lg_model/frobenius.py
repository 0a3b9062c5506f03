"""
Orbifold Frobenius Algebra
The product on the B-model state space Q_{W,G}:
alpha 1_g * beta 1_h = alpha beta gamma_{g,h} 1_{gh}, with alpha and beta restricted to Fix(gh)
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as triples
from typing import Optional

from sympy import Matrix, Poly
from sympy.polys.domains import QQ

from lg_model.errors import NonScalarRelation
from lg_model.exactmath import as_fraction, as_sympy
from lg_model.milnor import GradedMilnorRing, action_character, build, poly_multiply
from lg_model.polynomial import InvertiblePolynomial, charges
from lg_model.statespace import b_state_space
from lg_model.symmetry import Subgroup, SymmetryElement, identity

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SectorElement:
    """alpha 1_g with alpha given on the basis of Q_{W_g}"""
    element: SymmetryElement
    coefficients: dict = field(default_factory=dict)

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def scalar(self) -> Fraction:
        """The coefficient of 1 when alpha is a constant"""
        if self.is_zero:
            return Fraction(0)
        unit = tuple(0 for _ in self.element.fixed_indices)
        if set(self.coefficients) != {unit}:
            raise NonScalarRelation({"message": "class is not a multiple of 1",
                                     "sector": str(self.element),
                                     "class": {str(list(m)): str(c) for m, c in self.coefficients.items()}})
        return self.coefficients[unit]

    def same_as(self, other: "SectorElement") -> bool:
        if self.is_zero and other.is_zero:
            return True
        return self.element == other.element and self.coefficients == other.coefficients


@dataclass(frozen=True)
class FrobeniusReport:
    name: str
    passed: bool
    checked: int
    failures: tuple = ()
    unsupported: Optional[str] = None


class FrobeniusAlgebra:
    """
    Q_{W,G} with the orbifold product
    Structure constants are computed on demand and memoized; reads are safe across threads.
    """

    def __init__(self, p: InvertiblePolynomial, group: Subgroup):
        self.polynomial = p
        self.group = group
        self.space = b_state_space(p, group)
        self.q = charges(p).total
        self._gammas = {}

    def ring(self, g: SymmetryElement) -> GradedMilnorRing:
        return build(self.polynomial, g.fixed_indices)

    def unit(self, g: Optional[SymmetryElement] = None) -> SectorElement:
        g = identity(self.polynomial) if g is None else g
        return SectorElement(g, {tuple(0 for _ in g.fixed_indices): Fraction(1)})

    def element(self, g: SymmetryElement, alpha) -> SectorElement:
        return SectorElement(g, self.ring(g).normal_form(alpha))

    def gamma(self, g: SymmetryElement, h: SymmetryElement) -> SectorElement:
        key = (g.phases, h.phases)
        if key not in self._gammas:
            self._gammas[key] = self._compute_gamma(g, h)
        return self._gammas[key]

    def _compute_gamma(self, g: SymmetryElement, h: SymmetryElement) -> SectorElement:
        gh = g * h
        covered = set(g.fixed_indices) | set(h.fixed_indices) | set(gh.fixed_indices)
        if len(covered) != self.polynomial.n_vars:
            return SectorElement(gh, {})
        ring_gh = self.ring(gh)
        cap = tuple(sorted(set(g.fixed_indices) & set(h.fixed_indices)))
        ring_cap = build(self.polynomial, cap)
        scale = Fraction(ring_cap.mu, ring_gh.mu)
        if cap == ring_gh.indices:
            return SectorElement(gh, ring_gh.normal_form({ring_gh.basis[0]: scale}))
        lifted = {ring_gh.from_global(ring_cap.to_global(m)): c for m, c in ring_cap.hessian.items()}
        syms = [self.polynomial.symbols[j] for j in ring_gh.indices]
        numerator = Poly.from_dict({m: as_sympy(c) for m, c in ring_gh.hessian.items()}, *syms, domain=QQ)
        denominator = Poly.from_dict({m: as_sympy(c) for m, c in lifted.items()}, *syms, domain=QQ)
        quotient, remainder = numerator.div(denominator)
        if remainder.is_zero:
            q_dict = {tuple(m): as_fraction(c) * scale for m, c in quotient.as_dict().items() if c}
            return SectorElement(gh, ring_gh.normal_form(q_dict))
        return SectorElement(gh, self._solve_gamma(ring_gh, lifted, scale, g, h))

    def _solve_gamma(self, ring_gh: GradedMilnorRing, hess_cap: dict, scale: Fraction,
                     g: SymmetryElement, h: SymmetryElement) -> dict:
        """
        gamma * hess(W_{g cap h}) = scale * hess(W_gh) solved inside Q_{W_gh}

        Unknowns are the basis monomials of the complementary weight; free coefficients are set to 0.
        """
        shift = ring_gh.top_weight - ring_gh.weight(next(iter(hess_cap)))
        unknowns = [b for b in ring_gh.basis if ring_gh.weight(b) == shift]
        target = {m: c * scale for m, c in ring_gh.hessian_nf.items()}
        columns = [ring_gh.normal_form(poly_multiply({b: Fraction(1)}, hess_cap)) for b in unknowns]
        rows = sorted(set(target).union(*columns))
        failure = NonScalarRelation({
            "message": "hessian of Fix(g) and Fix(h) does not divide the hessian of Fix(gh) in its Milnor ring",
            "g": str(g), "h": str(h),
        })
        if not unknowns:
            raise failure
        system = Matrix([[as_sympy(col.get(r, 0)) for col in columns] for r in rows])
        rhs = Matrix([as_sympy(target.get(r, 0)) for r in rows])
        try:
            solution, params = system.gauss_jordan_solve(rhs)
        except ValueError:
            raise failure
        solution = solution.xreplace({t: 0 for t in params})
        return ring_gh.normal_form({b: as_fraction(v) for b, v in zip(unknowns, solution) if v})

    def product(self, a: SectorElement, b: SectorElement) -> SectorElement:
        g, h = a.element, b.element
        gh = g * h
        if a.is_zero or b.is_zero:
            return SectorElement(gh, {})
        gam = self.gamma(g, h)
        if gam.is_zero:
            return gam
        ring_gh = self.ring(gh)
        alpha = self._restrict(a, ring_gh)
        beta = self._restrict(b, ring_gh)
        return SectorElement(gh, ring_gh.normal_form(poly_multiply(poly_multiply(alpha, beta), gam.coefficients)))

    def _restrict(self, a: SectorElement, target: GradedMilnorRing) -> dict:
        """Set the coordinates outside Fix(gh) to zero"""
        source = self.ring(a.element)
        out = {}
        for m, c in a.coefficients.items():
            local = target.from_global(source.to_global(m))
            if local is not None:
                out[local] = out.get(local, Fraction(0)) + c
        return out

    def bidegree(self, a: SectorElement) -> tuple:
        ring = self.ring(a.element)
        degrees = {ring.charge_degree(m) for m in a.coefficients}
        if len(degrees) != 1:
            raise ValueError("element is zero or not homogeneous")
        ell = degrees.pop()
        return (ell + a.element.age - self.q, ell + a.element.inverse().age - self.q)

    def pairing(self, a: SectorElement, b: SectorElement) -> Fraction:
        if a.is_zero or b.is_zero or b.element != a.element.inverse():
            return Fraction(0)
        return self.ring(a.element).residue_pairing(a.coefficients, b.coefficients)

    def is_invariant(self, g: SymmetryElement, monomial: tuple) -> bool:
        ring = self.ring(g)
        return all(action_character(ring, monomial, k) == 0 for k in self.group.generators)

    def invariant_units(self, even_only: bool = False) -> tuple:
        """
        Sector units 1_g lying in Q_{W,G}

        Args:
            even_only: Keep only sectors with an even number of fixed coordinates (and 1_e)
        """
        units = []
        for g in self.group.elements:
            if not self.is_invariant(g, tuple(0 for _ in g.fixed_indices)):
                continue
            if even_only and g.n_fixed % 2 and not g.is_identity:
                continue
            units.append(self.unit(g))
        return tuple(units)

    def structure_constants(self) -> tuple:
        """(g, h, gamma_{g,h}) over all ordered pairs of group elements"""
        return tuple(
            (g, h, self.gamma(g, h))
            for g in self.group.elements
            for h in self.group.elements
        )


def gamma(algebra: FrobeniusAlgebra, g: SymmetryElement, h: SymmetryElement) -> SectorElement:
    return algebra.gamma(g, h)


def product(algebra: FrobeniusAlgebra, a: SectorElement, b: SectorElement) -> SectorElement:
    return algebra.product(a, b)


# ============ Axiom checks ============

def check_unit(algebra: FrobeniusAlgebra) -> FrobeniusReport:
    one = algebra.unit()
    failures = []
    checked = 0
    for cls in algebra.space.classes:
        x = algebra.element(cls.element, cls.monomial)
        checked += 1
        if not (algebra.product(one, x).same_as(x) and algebra.product(x, one).same_as(x)):
            failures.append(str(cls.element))
    return FrobeniusReport("unit", not failures, checked, tuple(failures))


def check_associativity(algebra: FrobeniusAlgebra, even_only: bool = False) -> FrobeniusReport:
    """
    ((1_g 1_h) 1_k) == (1_g (1_h 1_k)) for every triple of invariant sector units

    A gamma that cannot be pinned down is reported as unsupported rather than failed.
    """
    units = algebra.invariant_units(even_only=even_only)
    failures = []
    checked = 0
    try:
        for a, b, c in triples(units, repeat=3):
            left = algebra.product(algebra.product(a, b), c)
            right = algebra.product(a, algebra.product(b, c))
            checked += 1
            if not left.same_as(right):
                failures.append([str(a.element), str(b.element), str(c.element)])
    except NonScalarRelation as e:
        logger.warning("⚠️  associativity check stopped: %s", e.detail)
        return FrobeniusReport("associativity", False, checked, tuple(failures), unsupported=str(e.detail))
    return FrobeniusReport("associativity", not failures, checked, tuple(failures))


def check_grading(algebra: FrobeniusAlgebra) -> FrobeniusReport:
    """Nonzero products of homogeneous invariant classes add bidegrees"""
    classes = [algebra.element(c.element, c.monomial) for c in algebra.space.classes]
    failures = []
    checked = 0
    try:
        for a in classes:
            for b in classes:
                ab = algebra.product(a, b)
                if ab.is_zero:
                    continue
                checked += 1
                da, db, dab = algebra.bidegree(a), algebra.bidegree(b), algebra.bidegree(ab)
                if dab != (da[0] + db[0], da[1] + db[1]):
                    failures.append([str(a.element), str(b.element)])
    except NonScalarRelation as e:
        return FrobeniusReport("grading", False, checked, tuple(failures), unsupported=str(e.detail))
    return FrobeniusReport("grading", not failures, checked, tuple(failures))


def check_equivariance(algebra: FrobeniusAlgebra) -> FrobeniusReport:
    """gamma_{g,h} 1_{gh} carries the character of 1_g 1_h under every generator of G"""
    failures = []
    checked = 0
    units = algebra.invariant_units()
    try:
        for a in units:
            for b in units:
                gam = algebra.gamma(a.element, b.element)
                ring = algebra.ring(gam.element)
                for m in gam.coefficients:
                    checked += 1
                    if any(action_character(ring, m, k) != 0 for k in algebra.group.generators):
                        failures.append([str(a.element), str(b.element), list(m)])
    except NonScalarRelation as e:
        return FrobeniusReport("equivariance", False, checked, tuple(failures), unsupported=str(e.detail))
    return FrobeniusReport("equivariance", not failures, checked, tuple(failures))


def check_frobenius(algebra: FrobeniusAlgebra, limit: Optional[int] = None) -> FrobeniusReport:
    """<a b, c> == <a, b c> on triples of basis classes, in class order, up to `limit` triples"""
    classes = [algebra.element(c.element, c.monomial) for c in algebra.space.classes]
    failures = []
    checked = 0
    try:
        for a, b, c in triples(classes, repeat=3):
            if limit is not None and checked >= limit:
                break
            checked += 1
            if algebra.pairing(algebra.product(a, b), c) != algebra.pairing(a, algebra.product(b, c)):
                failures.append([str(a.element), str(b.element), str(c.element)])
    except NonScalarRelation as e:
        return FrobeniusReport("frobenius", False, checked, tuple(failures), unsupported=str(e.detail))
    return FrobeniusReport("frobenius", not failures, checked, tuple(failures))
