"""
Graded Milnor Rings
Q_{W_I} = C[x_I] / Jac(W|_I) built degree by degree with exact row reduction.
Monomials are exponent tuples over the coordinates of I; ring elements are {monomial: Fraction}.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Iterable, Mapping, Optional, Sequence, Union

from sympy import Poly, hessian

from lg_model.errors import DegenerateRestriction, NonIntegralDegree
from lg_model.exactmath import as_fraction, mod1, row_reduce
from lg_model.polynomial import InvertiblePolynomial, charges
from lg_model.symmetry import Subgroup, SymmetryElement

logger = logging.getLogger(__name__)

Monomial = tuple
RingElement = dict
ElementLike = Union[Mapping, Sequence[int]]


@lru_cache(maxsize=None)
def monomials_of_weight(weights: tuple, target: int) -> tuple:
    """All exponent tuples m with sum m_j * weights_j == target"""
    if not weights:
        return ((),) if target == 0 else ()
    head, rest = weights[0], weights[1:]
    found = []
    for e in range(target // head + 1):
        for tail in monomials_of_weight(rest, target - e * head):
            found.append((e,) + tail)
    return tuple(found)


def _as_element(f: ElementLike) -> dict:
    if isinstance(f, Mapping):
        return {tuple(m): as_fraction(c) for m, c in f.items() if c}
    return {tuple(f): Fraction(1)}


def poly_multiply(f: Mapping, g: Mapping) -> dict:
    """Product of two {monomial: coefficient} polynomials, no reduction"""
    out = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = out.get(m, Fraction(0)) + c1 * c2
    return {m: c for m, c in out.items() if c}


@dataclass(frozen=True, eq=False)
class GradedMilnorRing:
    """
    Milnor ring of W restricted to the coordinates in `indices`
    Basis monomials are the lexicographically smallest independent ones in each degree.
    """
    polynomial: InvertiblePolynomial
    indices: tuple
    weights: tuple
    degree: int
    basis: tuple
    top_weight: int
    mu: int
    hessian: dict = field(repr=False)
    hessian_nf: dict = field(repr=False)
    _reductions: dict = field(repr=False)

    @property
    def top_degree(self) -> Fraction:
        """Central charge of the restriction, sum over I of (1 - 2 q_j)"""
        return Fraction(self.top_weight, self.degree)

    @property
    def top_monomial(self) -> Monomial:
        return self.basis[-1]

    @property
    def hessian_coefficient(self) -> Fraction:
        return self.hessian_nf[self.top_monomial]

    @property
    def hessian_class(self) -> dict:
        """hess/mu in normal form"""
        return {m: c / self.mu for m, c in self.hessian_nf.items()}

    def weight(self, m: Monomial) -> int:
        return sum(e * w for e, w in zip(m, self.weights))

    def charge_degree(self, m: Monomial) -> Fraction:
        """l(m) = sum over I of (m_j + 1) q_j"""
        return Fraction(self.weight(m) + sum(self.weights), self.degree)

    def polynomial_degree(self, m: Monomial) -> Fraction:
        return Fraction(self.weight(m), self.degree)

    def normal_form(self, f: ElementLike) -> dict:
        """Coefficients of f on the basis, after reduction modulo the Jacobian ideal"""
        out = {}
        for m, c in _as_element(f).items():
            if self.weight(m) > self.top_weight:
                continue
            for b, v in self._reductions.get(m, {m: Fraction(1)}).items():
                out[b] = out.get(b, Fraction(0)) + c * v
        return {m: c for m, c in out.items() if c}

    def multiply(self, f: ElementLike, g: ElementLike) -> dict:
        return self.normal_form(poly_multiply(_as_element(f), _as_element(g)))

    def residue_pairing(self, f: ElementLike, g: ElementLike) -> Fraction:
        """<f, g> defined by f*g = <f, g> hess/mu + lower degree"""
        product = self.multiply(f, g)
        return product.get(self.top_monomial, Fraction(0)) * self.mu / self.hessian_coefficient

    def gram_matrix(self) -> tuple:
        return tuple(
            tuple(self.residue_pairing(a, b) for b in self.basis)
            for a in self.basis
        )

    def to_global(self, m: Monomial) -> tuple:
        full = [0] * self.polynomial.n_vars
        for j, e in zip(self.indices, m):
            full[j] = e
        return tuple(full)

    def from_global(self, m: Sequence[int]) -> Optional[Monomial]:
        """Local monomial, or None when m involves a coordinate outside I"""
        inside = set(self.indices)
        if any(e and j not in inside for j, e in enumerate(m)):
            return None
        return tuple(m[j] for j in self.indices)

    def action_character(self, m: Monomial, h: SymmetryElement) -> Fraction:
        return action_character(self, m, h)


def _derivatives(local_rows: Sequence[Monomial], n: int) -> list:
    derivs = []
    for t in range(n):
        d = {}
        for row in local_rows:
            if row[t]:
                m = tuple(e - 1 if k == t else e for k, e in enumerate(row))
                d[m] = d.get(m, Fraction(0)) + row[t]
        derivs.append(d)
    return derivs


def _empty_ring(p: InvertiblePolynomial) -> GradedMilnorRing:
    return GradedMilnorRing(
        polynomial=p, indices=(), weights=(), degree=charges(p).degree, basis=((),),
        top_weight=0, mu=1, hessian={(): Fraction(1)}, hessian_nf={(): Fraction(1)},
        _reductions={},
    )


@lru_cache(maxsize=None)
def build(p: InvertiblePolynomial, indices: tuple) -> GradedMilnorRing:
    """
    Graded Milnor ring of W restricted to a coordinate subset

    Args:
        p: Invertible polynomial
        indices: Coordinates kept (the fixed locus of a symmetry)

    Returns:
        GradedMilnorRing with per-degree bases, hessian normal form and reductions

    Raises:
        DegenerateRestriction: if W|_I misses a variable of I, the quotient is nonzero
            above the top degree, or its dimension differs from prod (1/q_j - 1)
    """
    idx = tuple(sorted(set(indices)))
    if not idx:
        return _empty_ring(p)
    cv = charges(p)
    d = cv.degree
    weights = tuple(cv.weights[j] for j in idx)
    n = len(idx)
    local_rows = tuple(tuple(row[j] for j in idx) for row in p.monomials_in(idx))
    missing = [p.names[idx[t]] for t in range(n) if not any(row[t] for row in local_rows)]
    if missing:
        raise DegenerateRestriction({"message": "restriction does not involve every variable",
                                     "indices": list(idx), "missing": missing})

    expected = prod((Fraction(d - w, w) for w in weights), start=Fraction(1))
    top_weight = sum(d - 2 * w for w in weights)
    derivs = _derivatives(local_rows, n)

    basis = []
    reductions = {}
    for t in range(top_weight + max(weights) + 1):
        columns = sorted(monomials_of_weight(weights, t), reverse=True)
        if not columns:
            continue
        position = {m: i for i, m in enumerate(columns)}
        relations = set()
        for var, deriv in enumerate(derivs):
            shift = t - (d - weights[var])
            if shift < 0:
                continue
            for a in monomials_of_weight(weights, shift):
                rel = {}
                for m, c in deriv.items():
                    rel[position[tuple(x + y for x, y in zip(a, m))]] = c
                relations.add(tuple(sorted(rel.items())))
        pivots = row_reduce([dict(r) for r in sorted(relations)], len(columns))
        free = sorted(m for i, m in enumerate(columns) if i not in pivots)
        if t > top_weight:
            if free:
                raise DegenerateRestriction({"message": "quotient is nonzero above the top degree",
                                             "indices": list(idx), "weight": t})
            continue
        for pivot, row in pivots.items():
            reductions[columns[pivot]] = {
                columns[j]: -v for j, v in row.items() if j != pivot and v
            }
        basis.extend(free)

    if len(basis) != expected:
        raise DegenerateRestriction({"message": "dimension differs from the Milnor number formula",
                                     "indices": list(idx), "dimension": len(basis),
                                     "expected": str(expected)})
    top = [m for m in basis if sum(e * w for e, w in zip(m, weights)) == top_weight]
    if len(top) != 1:
        raise DegenerateRestriction({"message": "top graded piece is not one-dimensional",
                                     "indices": list(idx), "dimension": len(top)})
    basis.sort(key=lambda m: (sum(e * w for e, w in zip(m, weights)), m))

    syms = [p.symbols[j] for j in idx]
    hess_expr = hessian(p.expression(idx), syms).det()
    hess = {
        tuple(m): as_fraction(c)
        for m, c in Poly(hess_expr, *syms).as_dict().items() if c
    }
    ring = GradedMilnorRing(
        polynomial=p, indices=idx, weights=weights, degree=d, basis=tuple(basis),
        top_weight=top_weight, mu=int(expected), hessian=hess, hessian_nf={},
        _reductions=reductions,
    )
    hess_nf = ring.normal_form(hess)
    if not hess_nf.get(ring.top_monomial):
        raise DegenerateRestriction({"message": "hessian vanishes in the top degree",
                                     "indices": list(idx)})
    object.__setattr__(ring, "hessian_nf", hess_nf)
    logger.debug("✅ Milnor ring of %s on %s: mu=%d", p, idx, ring.mu)
    return ring


def residue_pairing(ring: GradedMilnorRing, f: ElementLike, g: ElementLike) -> Fraction:
    return ring.residue_pairing(f, g)


def action_character(ring: GradedMilnorRing, m: Monomial, h: SymmetryElement) -> Fraction:
    """
    Character of h on the form x^m dx_I, i.e. sum over I of (m_j + 1) * phase_j(h) mod 1

    Returns:
        A rational in [0, 1); zero means the form is h-invariant
    """
    return mod1(sum(((e + 1) * h.phases[j] for j, e in zip(ring.indices, m)), Fraction(0)))


@dataclass(frozen=True)
class InvariantMonomial:
    monomial: Monomial
    charge_degree: Fraction


def invariant_basis(ring: GradedMilnorRing, group: Union[Subgroup, Iterable[SymmetryElement]],
                    contains_j: Optional[bool] = None) -> tuple:
    """
    Basis monomials whose forms are invariant under every generator of the group

    Args:
        ring: Sector Milnor ring
        group: Subgroup, or an explicit list of generating elements
        contains_j: Whether j_W lies in the group (read from the Subgroup when omitted)

    Returns:
        Tuple of InvariantMonomial in basis order

    Raises:
        NonIntegralDegree: if j_W is in the group but an invariant form has non-integral degree
    """
    if isinstance(group, Subgroup):
        generators = group.generators
        if contains_j is None:
            contains_j = group.contains_j
    else:
        generators = tuple(group)
    chosen = []
    for m in ring.basis:
        if all(action_character(ring, m, h) == 0 for h in generators):
            ell = ring.charge_degree(m)
            if contains_j and ell.denominator != 1:
                raise NonIntegralDegree({"message": "invariant form has non-integral degree",
                                         "monomial": list(m), "degree": str(ell)})
            chosen.append(InvariantMonomial(m, ell))
    return tuple(chosen)
