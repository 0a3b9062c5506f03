"""
Catalog Enumeration and Verification
Invertible polynomials built from Fermat, chain and loop atoms, deduplicated by canonical id,
and the per-entry battery of duality, Krawitz, mirror, pairing and Frobenius checks
"""
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import Callable, Dict, Iterable, List, Optional

from cli.config import MAX_FROBENIUS_GROUP, MAX_GROUP, WORKERS
from cli.parser import parse_source
from database.schemas import CatalogEntry, EntryVerification, VerificationSummary
from lg_model.errors import GroupTooLarge, LGMirrorError, PolynomialSyntaxError
from lg_model.frobenius import FrobeniusAlgebra, check_associativity, check_grading, check_unit
from lg_model.milnor import build
from lg_model.polynomial import (
    CHAIN,
    FERMAT,
    LOOP,
    Atom,
    InvertiblePolynomial,
    canonical_id,
    charges,
    decompose,
    from_atoms,
    predicates,
    transpose,
)
from lg_model.statespace import a_state_space, krawitz_compare, mirror_check, pairing_rank
from lg_model.symmetry import (
    aut_subgroup,
    dual_group,
    enumerate_subgroups,
    full_group,
    j_subgroup,
    sl_subgroup,
    trivial_subgroup,
)

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
# gamma could not be computed; never counts as passed
UNSUPPORTED = "unsupported"

CHECKS = ("charges", "milnor", "duality", "krawitz", "mirror", "pairing", "frobenius")


# ============ Enumeration ============

def _atom_shapes(size: int, max_exp: int) -> List[tuple]:
    """(kind, exponents) for every atom on `size` variables, loops at their minimal rotation"""
    exps = range(2, max_exp + 1)
    if size == 1:
        return [(FERMAT, (a,)) for a in exps]
    shapes = [(CHAIN, e) for e in product(exps, repeat=size)]
    for e in product(exps, repeat=size):
        if e == min(e[s:] + e[:s] for s in range(size)):
            shapes.append((LOOP, e))
    return shapes


def _multisets(shapes: List[tuple], n_vars: int, start: int = 0) -> Iterable[list]:
    if n_vars == 0:
        yield []
        return
    for i in range(start, len(shapes)):
        kind, e = shapes[i]
        if len(e) <= n_vars:
            for rest in _multisets(shapes, n_vars - len(e), i):
                yield [shapes[i]] + rest


def _assemble(shapes: List[tuple]) -> InvertiblePolynomial:
    atoms = []
    offset = 0
    for kind, e in shapes:
        atoms.append(Atom(kind, e, tuple(range(offset, offset + len(e)))))
        offset += len(e)
    return from_atoms(atoms)


def catalog_entry(p: InvertiblePolynomial) -> CatalogEntry:
    preds = predicates(p)
    return CatalogEntry(
        id=canonical_id(p),
        polynomial=p.to_dsl(),
        exponents=[list(r) for r in p.exponents],
        charges=list(charges(p).charges),
        is_calabi_yau=preds.is_calabi_yau,
        is_gorenstein=preds.is_gorenstein,
        aut_order=full_group(p).order,
    )


def enumerate_catalog(n_vars: int, max_exp: int, cy_only: bool = False) -> List[CatalogEntry]:
    """
    Every invertible polynomial in n_vars variables with exponents in [2, max_exp]

    Args:
        n_vars: Number of variables
        max_exp: Largest exponent allowed in any atom
        cy_only: Keep only Calabi-Yau polynomials (charges summing to 1)

    Returns:
        Entries sorted by canonical id, one per permutation class
    """
    shapes = []
    for size in range(1, n_vars + 1):
        shapes.extend(_atom_shapes(size, max_exp))
    shapes.sort(key=lambda s: ([FERMAT, CHAIN, LOOP].index(s[0]), s[1]))
    entries = {}
    for combo in _multisets(shapes, n_vars):
        p = _assemble(combo)
        if cy_only and charges(p).total != 1:
            continue
        entry = catalog_entry(p)
        entries.setdefault(entry.id, entry)
    logger.info("✅ Enumerated %d polynomials (N=%d, max exponent %d)", len(entries), n_vars, max_exp)
    return [entries[k] for k in sorted(entries)]


def write_catalog(entries: Iterable[CatalogEntry]) -> str:
    """JSON lines, one entry per line"""
    return "".join(entry.model_dump_json() + "\n" for entry in entries)


def load_catalog(text: str) -> List[InvertiblePolynomial]:
    """
    Read JSON-lines catalog entries or one polynomial source per line

    Raises:
        LGMirrorError: the first entry that fails to parse, e.g. SingularMatrix for det = 0
    """
    polys = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if line.startswith("{"):
                data = json.loads(line)
                polys.append(InvertiblePolynomial(tuple(tuple(r) for r in data["exponents"])))
            else:
                polys.append(parse_source(line))
        except (KeyError, json.JSONDecodeError) as e:
            raise PolynomialSyntaxError(f"catalog line {lineno} is not an entry: {e}", lineno, 1, 0)
        except LGMirrorError as e:
            logger.error("❌ Catalog line %d rejected: %s", lineno, e.detail)
            raise
    return polys


# ============ Verification ============

def _check_charges(p: InvertiblePolynomial) -> tuple:
    q = charges(p).charges
    ok = all(sum(e * v for e, v in zip(row, q)) == 1 for row in p.exponents)
    return (PASS if ok else FAIL), {}


def _check_milnor(p: InvertiblePolynomial) -> tuple:
    mu = build(p, tuple(range(p.n_vars))).mu
    from_atoms_mu = 1
    for atom in decompose(p).atoms:
        from_atoms_mu *= atom.milnor_number()
    ok = mu == predicates(p).milnor_number == from_atoms_mu
    return (PASS if ok else FAIL), {"mu": mu, "atoms": from_atoms_mu}


def _check_duality(p: InvertiblePolynomial, max_group: int) -> tuple:
    subgroups = enumerate_subgroups(p, max_group=max_group)
    bad = []
    for g in subgroups:
        if dual_group(dual_group(g)) != g:
            bad.append(g.describe())
    for g in subgroups:
        for h in subgroups:
            if g.is_subgroup_of(h) and not dual_group(h).is_subgroup_of(dual_group(g)):
                bad.append(f"{g.describe()} < {h.describe()}")
    mirror = transpose(p)
    if dual_group(trivial_subgroup(p)) != aut_subgroup(mirror):
        bad.append("{1}^v != Aut")
    if dual_group(j_subgroup(p)) != sl_subgroup(mirror):
        bad.append("<j>^v != SL")
    return (PASS if not bad else FAIL), {"subgroups": len(subgroups), "failures": bad}


def _check_krawitz(p: InvertiblePolynomial, max_group: int) -> tuple:
    failures = []
    checked = 0
    for g in enumerate_subgroups(p, max_group=max_group):
        if not g.contains_j:
            continue
        checked += 1
        report = krawitz_compare(p, g)
        if not report.passed:
            failures.append({"group": g.describe(), "differences": list(report.differences)})
    return (PASS if not failures else FAIL), {"groups": checked, "failures": failures}


def _check_mirror(p: InvertiblePolynomial, max_group: int) -> tuple:
    if charges(p).total != 1:
        return SKIPPED, {"reason": "not Calabi-Yau"}
    failures = []
    checked = 0
    for g in enumerate_subgroups(p, max_group=max_group):
        if not g.is_cy_type:
            continue
        checked += 1
        report = mirror_check(p, g)
        if not report.passed:
            failures.append({"group": g.describe(), "mismatches": list(report.mismatches)})
    return (PASS if not failures else FAIL), {"groups": checked, "failures": failures}


def _check_pairing(p: InvertiblePolynomial) -> tuple:
    space = a_state_space(p, j_subgroup(p))
    r = pairing_rank(space)
    return (PASS if r == space.total_dim else FAIL), {"rank": r, "dimension": space.total_dim}


def _check_frobenius(p: InvertiblePolynomial, max_group: int, max_frobenius_group: int) -> tuple:
    """Unit, associativity and grading laws on every B-admissible G within the size cap"""
    groups = [
        g for g in enumerate_subgroups(p, max_group=max_group)
        if g.in_sl and g.order <= max_frobenius_group
    ]
    failures = []
    unsupported = []
    for group in groups:
        algebra = FrobeniusAlgebra(p, group)
        for report in (check_unit(algebra), check_associativity(algebra), check_grading(algebra)):
            if report.unsupported:
                unsupported.append({"group": group.describe(), "check": report.name,
                                    "reason": report.unsupported})
            elif not report.passed:
                failures.append({"group": group.describe(), "check": report.name,
                                 "witnesses": list(report.failures[:5])})
    details = {"groups": len(groups), "failures": failures, "unsupported": unsupported}
    if failures:
        return FAIL, details
    if unsupported:
        return UNSUPPORTED, details
    return PASS, details


def verify_polynomial(p: InvertiblePolynomial, max_group: Optional[int] = None,
                      max_frobenius_group: Optional[int] = None) -> EntryVerification:
    """
    Run every check on one polynomial; errors are recorded as "error:<name>", never raised

    Args:
        p: Invertible polynomial
        max_group: Cap on |Aut(W)| for the subgroup-based checks
        max_frobenius_group: Cap on |G| for the Frobenius checks
    """
    max_group = MAX_GROUP if max_group is None else max_group
    max_frobenius_group = MAX_FROBENIUS_GROUP if max_frobenius_group is None else max_frobenius_group
    runners: Dict[str, Callable[[], tuple]] = {
        "charges": lambda: _check_charges(p),
        "milnor": lambda: _check_milnor(p),
        "duality": lambda: _check_duality(p, max_group),
        "krawitz": lambda: _check_krawitz(p, max_group),
        "mirror": lambda: _check_mirror(p, max_group),
        "pairing": lambda: _check_pairing(p),
        "frobenius": lambda: _check_frobenius(p, max_group, max_frobenius_group),
    }
    checks = {}
    details = {}
    for name in CHECKS:
        try:
            checks[name], details[name] = runners[name]()
        except GroupTooLarge as e:
            checks[name], details[name] = SKIPPED, e.detail
        except LGMirrorError as e:
            checks[name], details[name] = f"error:{e.__class__.__name__}", e.detail
    passed = all(v in (PASS, SKIPPED) for v in checks.values())
    if not passed:
        logger.warning("❌ %s failed: %s", canonical_id(p), {k: v for k, v in checks.items() if v != PASS})
    return EntryVerification(id=canonical_id(p), passed=passed, checks=checks, details=details)


def verify_catalog(polys: List[InvertiblePolynomial], workers: Optional[int] = None,
                   max_group: Optional[int] = None,
                   max_frobenius_group: Optional[int] = None) -> VerificationSummary:
    """
    Verify every entry across worker threads; results keep input order

    Returns:
        VerificationSummary with per-entry results and pass/fail/skip counts per check
    """
    workers = WORKERS if workers is None else workers
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        results = list(pool.map(
            lambda p: verify_polynomial(p, max_group=max_group, max_frobenius_group=max_frobenius_group),
            polys,
        ))
    per_check = {name: {} for name in CHECKS}
    for r in results:
        for name, status in r.checks.items():
            per_check[name][status] = per_check[name].get(status, 0) + 1
    n_passed = sum(1 for r in results if r.passed)
    logger.info("✅ Verified %d entries: %d passed", len(results), n_passed)
    return VerificationSummary(
        entries=len(results),
        passed=n_passed,
        failed=len(results) - n_passed,
        per_check=per_check,
        results=results,
    )
