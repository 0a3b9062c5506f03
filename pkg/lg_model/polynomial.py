"""
Invertible Polynomials
Exponent-matrix representation of invertible quasihomogeneous polynomials: charges,
Fermat/chain/loop decomposition, Berglund-Hubsch transpose and CY/Gorenstein predicates
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import prod
from typing import Iterable, Optional, Sequence

from sympy import Matrix, Symbol

from lg_model.errors import (
    ChargeOutOfRange,
    NonIntegerMilnor,
    NotInvertibleType,
    NotSquare,
    SingularMatrix,
)
from lg_model.exactmath import denominator_lcm, invert, mat_vec, to_fraction_rows

logger = logging.getLogger(__name__)

FERMAT = "fermat"
CHAIN = "chain"
LOOP = "loop"
ATOM_KINDS = (FERMAT, CHAIN, LOOP)


@dataclass(frozen=True)
class InvertiblePolynomial:
    """
    W = sum_i prod_j x_j^{E[i][j]} with all coefficients 1
    Row i of the exponent matrix is the i-th monomial; equality ignores variable names.
    """
    exponents: tuple
    names: tuple = field(default=(), compare=False)

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.exponents)
        n = len(rows)
        if n == 0:
            raise NotSquare({"message": "polynomial has no monomials"})
        if any(len(row) != n for row in rows):
            raise NotSquare({"message": "exponent matrix is not square", "rows": n,
                             "columns": sorted({len(r) for r in rows})})
        if any(v < 0 for row in rows for v in row):
            raise ValueError("exponents must be non-negative")
        names = tuple(self.names) or tuple(f"x{i + 1}" for i in range(n))
        if len(names) != n:
            raise NotSquare({"message": "variable count differs from monomial count",
                             "variables": len(names), "monomials": n})
        object.__setattr__(self, "exponents", rows)
        object.__setattr__(self, "names", names)
        if self.matrix.det() == 0:
            raise SingularMatrix({"message": "exponent matrix has determinant zero",
                                  "exponents": [list(r) for r in rows]})

    @property
    def n_vars(self) -> int:
        return len(self.exponents)

    @cached_property
    def matrix(self) -> Matrix:
        return Matrix(self.exponents)

    @cached_property
    def inverse(self) -> tuple:
        """E^-1 as nested tuples of Fractions"""
        return to_fraction_rows(invert(self.matrix))

    @cached_property
    def determinant(self) -> int:
        return int(self.matrix.det())

    @cached_property
    def symbols(self) -> tuple:
        return tuple(Symbol(f"x{i + 1}") for i in range(self.n_vars))

    def monomials_in(self, indices: Iterable[int]) -> tuple:
        """Rows of W whose support lies inside the given coordinate set"""
        allowed = set(indices)
        return tuple(
            row for row in self.exponents
            if all(j in allowed for j, e in enumerate(row) if e)
        )

    def expression(self, indices: Optional[Iterable[int]] = None):
        """W (or W restricted to the coordinates in indices) as a sympy expression"""
        rows = self.exponents if indices is None else self.monomials_in(indices)
        return sum(
            (prod((self.symbols[j] ** e for j, e in enumerate(row) if e), start=1) for row in rows),
            start=0,
        )

    def to_dsl(self) -> str:
        """Emit the polynomial in DSL syntax using the display names"""
        terms = []
        for row in self.exponents:
            factors = [
                self.names[j] if e == 1 else f"{self.names[j]}^{e}"
                for j, e in enumerate(row) if e
            ]
            terms.append("*".join(factors))
        return "+".join(terms)

    def __str__(self) -> str:
        return self.to_dsl()


@dataclass(frozen=True)
class ChargeVector:
    charges: tuple
    degree: int
    weights: tuple
    central_charge: Fraction

    @property
    def total(self) -> Fraction:
        return sum(self.charges, Fraction(0))


@dataclass(frozen=True)
class Atom:
    kind: str
    exponents: tuple
    variables: tuple

    @property
    def label(self) -> str:
        return f"{self.kind}({','.join(str(a) for a in self.exponents)})"

    def block(self) -> tuple:
        """Exponent matrix of the atom in its own variable order"""
        n = len(self.exponents)
        rows = []
        for i, a in enumerate(self.exponents):
            row = [0] * n
            row[i] = a
            if self.kind == CHAIN and i + 1 < n:
                row[i + 1] = 1
            elif self.kind == LOOP:
                row[(i + 1) % n] = 1
            rows.append(tuple(row))
        return tuple(rows)

    def milnor_number(self) -> int:
        """Closed forms: Fermat a-1, loop prod(a_i), chain by the alternating recursion"""
        if self.kind == FERMAT:
            return self.exponents[0] - 1
        if self.kind == LOOP:
            return prod(self.exponents)
        # chain x1^a1 x2 + ... + xn^an: mu = sum_k (-1)^(n-k) a_{n-k+1}...a_n, empty product for k = 0
        n = len(self.exponents)
        total = 0
        for k in range(n + 1):
            total += (-1) ** (n - k) * prod(self.exponents[n - k:])
        return total


@dataclass(frozen=True)
class AtomDecomposition:
    atoms: tuple
    head_rows: dict = field(compare=False, hash=False)

    @property
    def variable_order(self) -> tuple:
        return tuple(v for atom in self.atoms for v in atom.variables)

    @property
    def permutation(self) -> dict:
        """original variable index -> (atom index, slot)"""
        return {
            v: (a, slot)
            for a, atom in enumerate(self.atoms)
            for slot, v in enumerate(atom.variables)
        }

    @property
    def canonical_id(self) -> str:
        return "+".join(atom.label for atom in self.atoms)

    def block_matrix(self) -> tuple:
        n = len(self.variable_order)
        rows = []
        offset = 0
        for atom in self.atoms:
            for block_row in atom.block():
                row = [0] * n
                row[offset:offset + len(block_row)] = block_row
                rows.append(tuple(row))
            offset += len(atom.exponents)
        return tuple(rows)

    def permuted_matrix(self, p: InvertiblePolynomial) -> tuple:
        """E with rows and columns reordered to the atom order; equals block_matrix()"""
        order = self.variable_order
        return tuple(
            tuple(p.exponents[self.head_rows[v]][c] for c in order)
            for v in order
        )


@dataclass(frozen=True)
class Predicates:
    is_calabi_yau: bool
    is_gorenstein: bool
    milnor_number: int
    is_transverse: bool
    contained_subspaces: tuple


# ============ Operations ============

@lru_cache(maxsize=None)
def charges(p: InvertiblePolynomial) -> ChargeVector:
    """
    Charges q = E^-1 * (1,...,1), i.e. the row sums of the inverse exponent matrix

    Args:
        p: Invertible polynomial

    Returns:
        ChargeVector with degree d, integer weights d*q_j and central charge

    Raises:
        ChargeOutOfRange: if some q_j lies outside (0, 1)
    """
    q = tuple(sum(row, Fraction(0)) for row in p.inverse)
    if mat_vec(p.exponents, q) != tuple(Fraction(1) for _ in q):
        raise ArithmeticError("charges fail the quasihomogeneity check E*q = 1")
    bad = [str(v) for v in q if not 0 < v < 1]
    if bad:
        raise ChargeOutOfRange({"message": "charges must lie strictly between 0 and 1",
                                "charges": [str(v) for v in q]})
    d = denominator_lcm(q)
    weights = tuple(int(v * d) for v in q)
    c_hat = sum((1 - 2 * v for v in q), Fraction(0))
    return ChargeVector(charges=q, degree=d, weights=weights, central_charge=c_hat)


def _head_and_pointer(row: Sequence[int], index: int) -> tuple:
    support = [(j, e) for j, e in enumerate(row) if e]
    if len(support) == 1 and support[0][1] >= 2:
        return support[0][0], None
    if len(support) == 2:
        (j1, e1), (j2, e2) = support
        if e1 >= 2 and e2 == 1:
            return j1, j2
        if e2 >= 2 and e1 == 1:
            return j2, j1
    raise NotInvertibleType({"message": "monomial is not of Fermat, chain or loop shape",
                             "monomial": index, "exponents": list(row)})


def _min_rotation(exponents: Sequence[int], variables: Sequence[int]) -> tuple:
    n = len(exponents)
    best = min(range(n), key=lambda s: (tuple(exponents[s:]) + tuple(exponents[:s]),
                                       tuple(variables[s:]) + tuple(variables[:s])))
    return (tuple(exponents[best:]) + tuple(exponents[:best]),
            tuple(variables[best:]) + tuple(variables[:best]))


@lru_cache(maxsize=None)
def decompose(p: InvertiblePolynomial) -> AtomDecomposition:
    """
    Split W into Fermat, chain and loop atoms on disjoint variables

    Args:
        p: Invertible polynomial

    Returns:
        AtomDecomposition with atoms sorted by (kind, exponents)

    Raises:
        NotInvertibleType: if no permutation of the variables yields the three shapes
    """
    head_row = {}
    pointer = {}
    for i, row in enumerate(p.exponents):
        head, target = _head_and_pointer(row, i)
        if head in head_row:
            raise NotInvertibleType({"message": "variable carries two high powers",
                                     "variable": p.names[head]})
        head_row[head] = i
        if target is not None:
            pointer[head] = target
    pointed = {}
    for source, target in pointer.items():
        if target in pointed:
            raise NotInvertibleType({"message": "variable is linked from two monomials",
                                     "variable": p.names[target]})
        pointed[target] = source

    exps = {v: p.exponents[head_row[v]][v] for v in head_row}
    atoms = []
    seen = set()
    for start in range(p.n_vars):
        if start in pointed:
            continue
        path = [start]
        while path[-1] in pointer:
            path.append(pointer[path[-1]])
        seen.update(path)
        kind = FERMAT if len(path) == 1 else CHAIN
        atoms.append(Atom(kind, tuple(exps[v] for v in path), tuple(path)))
    for start in range(p.n_vars):
        if start in seen:
            continue
        cycle = [start]
        while pointer[cycle[-1]] != start:
            cycle.append(pointer[cycle[-1]])
        seen.update(cycle)
        rotated_exps, rotated_vars = _min_rotation([exps[v] for v in cycle], cycle)
        atoms.append(Atom(LOOP, rotated_exps, rotated_vars))

    atoms.sort(key=lambda a: (ATOM_KINDS.index(a.kind), a.exponents, a.variables))
    return AtomDecomposition(atoms=tuple(atoms), head_rows=head_row)


def transpose(p: InvertiblePolynomial) -> InvertiblePolynomial:
    """Berglund-Hubsch transpose: exponent matrix E^T, same variable names"""
    rows = tuple(zip(*p.exponents))
    return InvertiblePolynomial(rows, names=p.names)


def transversality(p: InvertiblePolynomial) -> tuple:
    """
    Maximal coordinate subsets S with W|_S identically zero

    X_W then contains the coordinate subspace P(w_S); an empty result means X_W is transverse.
    """
    n = p.n_vars
    vanishing = [
        frozenset(s)
        for size in range(1, n + 1)
        for s in combinations(range(n), size)
        if not p.monomials_in(s)
    ]
    maximal = [s for s in vanishing if not any(s < t for t in vanishing)]
    return tuple(tuple(sorted(s)) for s in sorted(maximal, key=lambda s: (len(s), sorted(s))))


def milnor_number(p: InvertiblePolynomial, indices: Optional[Iterable[int]] = None) -> int:
    """prod (1/q_j - 1) over the given coordinates (all by default)"""
    q = charges(p).charges
    chosen = range(p.n_vars) if indices is None else indices
    mu = prod((1 / q[j] - 1 for j in chosen), start=Fraction(1))
    if mu.denominator != 1:
        raise NonIntegerMilnor({"message": "Milnor number formula is not an integer",
                                "value": str(mu)})
    return int(mu)


def predicates(p: InvertiblePolynomial) -> Predicates:
    """
    CY condition (sum q = 1), Gorenstein condition (w_j | d) and Milnor number

    Args:
        p: Invertible polynomial

    Returns:
        Predicates, including the coordinate subspaces contained in X_W
    """
    cv = charges(p)
    contained = transversality(p)
    return Predicates(
        is_calabi_yau=cv.total == 1,
        is_gorenstein=all(cv.degree % w == 0 for w in cv.weights),
        milnor_number=milnor_number(p),
        is_transverse=not contained,
        contained_subspaces=contained,
    )


def canonical_id(p: InvertiblePolynomial) -> str:
    """Permutation-invariant identifier: sorted atom labels"""
    return decompose(p).canonical_id


def from_atoms(atoms: Sequence[Atom]) -> InvertiblePolynomial:
    """Assemble a polynomial whose variables run through the atoms in order"""
    decomposition = AtomDecomposition(atoms=tuple(atoms), head_rows={})
    return InvertiblePolynomial(decomposition.block_matrix())


def fermat(*exponents: int) -> InvertiblePolynomial:
    return from_atoms([Atom(FERMAT, (a,), (i,)) for i, a in enumerate(exponents)])


def chain(*exponents: int) -> InvertiblePolynomial:
    return from_atoms([Atom(CHAIN, tuple(exponents), tuple(range(len(exponents))))])


def loop(*exponents: int) -> InvertiblePolynomial:
    return from_atoms([Atom(LOOP, tuple(exponents), tuple(range(len(exponents))))])
