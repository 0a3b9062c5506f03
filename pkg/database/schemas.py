"""
Pydantic Schemas
Input and report models for every command; rationals serialize as "p/q" strings
"""
from datetime import datetime
from fractions import Fraction
from typing import Annotated, Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, PlainSerializer, PlainValidator, WithJsonSchema

from lg_model.exactmath import fraction_str, parse_fraction


def _to_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return parse_fraction(value)
    raise ValueError("expected an integer, a Fraction or a 'p/q' string")


Rational = Annotated[
    Fraction,
    PlainValidator(_to_fraction),
    PlainSerializer(fraction_str, return_type=str),
    WithJsonSchema({"type": "string", "pattern": r"^-?\d+(/\d+)?$"}),
]


# ============ Input Schemas ============

class ExponentMatrixInput(BaseModel):
    """Exponent-matrix JSON accepted wherever a polynomial is expected"""
    exponents: List[List[Annotated[int, Field(ge=0)]]] = Field(..., min_length=1)
    names: Optional[List[str]] = None


# ============ Polynomial Schemas ============

class AtomOut(BaseModel):
    kind: str
    exponents: List[int]
    variables: List[str]
    label: str


class AnalyzeReport(BaseModel):
    """Charges, atom decomposition and predicates of W"""
    polynomial: str
    exponents: List[List[int]]
    charges: List[Rational]
    weights: List[int]
    degree: int
    central_charge: Rational
    total_charge: Rational
    canonical_id: str
    atoms: List[AtomOut]
    is_calabi_yau: bool
    is_gorenstein: bool
    milnor_number: int
    is_transverse: bool
    contained_subspaces: List[List[str]] = []


class TransposeReport(BaseModel):
    polynomial: str
    transpose: str
    exponents: List[List[int]]
    charges: List[Rational]
    weights: List[int]
    degree: int
    is_gorenstein: bool


# ============ Group Schemas ============

class ElementOut(BaseModel):
    phases: List[Rational]
    age: Rational
    order: int
    fixed: List[int]


class SubgroupOut(BaseModel):
    order: int
    invariant_factors: List[int]
    generators: List[ElementOut]
    contains_j: bool
    in_sl: bool
    dual_order: int


class GroupReport(BaseModel):
    """Aut(W), SL_W, j_W and the exponent delta, optionally with the subgroup lattice"""
    polynomial: str
    aut_order: int
    invariant_factors: List[int]
    exponent: int
    j: ElementOut
    sl_order: int
    subgroups: Optional[List[SubgroupOut]] = None
    cy_subgroups: Optional[List[SubgroupOut]] = None


class DualGroupReport(BaseModel):
    polynomial: str
    transpose: str
    group: SubgroupOut
    dual: SubgroupOut
    involution: bool


# ============ State Space Schemas ============

class BidegreeCount(BaseModel):
    p: Rational
    q: Rational
    dim: int


class DegreeCount(BaseModel):
    degree: Rational
    dim: int


class StateClassOut(BaseModel):
    sector: List[Rational]
    monomial: List[int]
    charge_degree: Rational
    bidegree: List[Rational]


class StateSpaceReport(BaseModel):
    flavor: str
    polynomial: str
    group_order: int
    total_dim: int
    table: List[BidegreeCount]
    poincare: List[DegreeCount]
    pairing_rank: Optional[int] = None
    classes: Optional[List[StateClassOut]] = None


class DiamondReport(BaseModel):
    """LG-CY Hodge diamond of [X_W / G~]"""
    polynomial: str
    group_order: int
    quotient_order: int
    dimension: int
    rows: List[List[int]]
    entries: List[BidegreeCount]
    fractional: List[BidegreeCount] = []
    euler_characteristic: int


class MirrorCheckReport(BaseModel):
    passed: bool
    passes_up_to_conjugation: bool
    krawitz_passed: bool
    left: DiamondReport
    right: DiamondReport
    mismatches: List[Dict[str, Any]] = []


# ============ Frobenius Schemas ============

class AxiomResult(BaseModel):
    name: str
    passed: bool
    checked: int
    failures: List[Any] = []
    unsupported: Optional[str] = None


class StructureConstant(BaseModel):
    g: List[Rational]
    h: List[Rational]
    gh: List[Rational]
    gamma: Dict[str, Rational]


class FrobeniusReportOut(BaseModel):
    polynomial: str
    group_order: int
    dimension: int
    axioms: List[AxiomResult]
    structure_constants: Optional[List[StructureConstant]] = None


# ============ W-Curve Schemas ============

class ModuliReport(BaseModel):
    polynomial: str
    genus: int
    insertions: List[List[Rational]]
    nonempty: bool
    line_degrees: List[Rational]
    euler_characteristics: List[Rational]
    virtual_codim: Rational
    cycle_degree: Rational
    cover_degree: Rational
    group_cover_degree: Rational


class CorrelatorReport(BaseModel):
    polynomial: str
    insertions: List[List[Rational]]
    status: str
    value: Optional[Rational] = None
    virtual_codim: Optional[Rational] = None
    normalization: Optional[Rational] = None
    normalized_value: Optional[Rational] = None
    reason: Optional[str] = None


class SweepLine(BaseModel):
    """One JSON line of an r-spin correlator sweep"""
    r: int
    genus: int
    insertions: List[int]
    status: str
    value: Optional[Rational] = None
    closed_form: Optional[Rational] = None


# ============ Catalog Schemas ============

class CatalogEntry(BaseModel):
    """One JSON line of an enumerated catalog"""
    id: str
    polynomial: str
    exponents: List[List[int]]
    charges: List[Rational]
    is_calabi_yau: bool
    is_gorenstein: bool
    aut_order: int


class EntryVerification(BaseModel):
    id: str
    passed: bool
    checks: Dict[str, str]
    details: Dict[str, Any] = {}


class VerificationSummary(BaseModel):
    entries: int
    passed: int
    failed: int
    per_check: Dict[str, Dict[str, int]]
    results: List[EntryVerification]


class CatalogRecordResponse(BaseModel):
    """Stored verification result"""
    id: int
    canonical_id: str
    polynomial: str
    exponents: List[List[int]]
    charges: List[str]
    is_calabi_yau: bool
    is_gorenstein: bool
    aut_order: int
    checks: Dict[str, str]
    passed: bool
    created_at: datetime

    model_config = ConfigDict(from_attributes=True)


class ErrorReport(BaseModel):
    error: str
    detail: Any
    exit_code: int


# Every model printed by the `schema` command
OUTPUT_MODELS = {
    "analyze": AnalyzeReport,
    "transpose": TransposeReport,
    "group": GroupReport,
    "dualgroup": DualGroupReport,
    "statespace": StateSpaceReport,
    "diamond": DiamondReport,
    "mirror-check": MirrorCheckReport,
    "frobenius": FrobeniusReportOut,
    "moduli": ModuliReport,
    "correlator": CorrelatorReport,
    "correlator-sweep": SweepLine,
    "catalog-entry": CatalogEntry,
    "catalog-verify": VerificationSummary,
    "catalog-stored": CatalogRecordResponse,
    "error": ErrorReport,
}
