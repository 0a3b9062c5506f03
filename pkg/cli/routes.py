"""
CLI Routes
Argument parser and one handler per command; handlers return report models
"""
import argparse
import json
import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import List, Optional

from cli.catalog import catalog_entry, enumerate_catalog, load_catalog, verify_catalog
from cli.config import ENABLE_DB, MAX_FROBENIUS_GROUP, MAX_GROUP, OUTPUT_DIR, WORKERS
from cli.formatting import EXTENSIONS, JSON, TEXT, TSV, Result, render
from cli.parser import parse_elements, parse_group, parse_source
from database.models import CatalogRecord
from database.schemas import (
    OUTPUT_MODELS,
    AnalyzeReport,
    AtomOut,
    AxiomResult,
    BidegreeCount,
    CatalogRecordResponse,
    CorrelatorReport,
    DegreeCount,
    DiamondReport,
    DualGroupReport,
    ElementOut,
    ErrorReport,
    FrobeniusReportOut,
    GroupReport,
    MirrorCheckReport,
    ModuliReport,
    StateClassOut,
    StateSpaceReport,
    StructureConstant,
    SubgroupOut,
    SweepLine,
    TransposeReport,
)
from lg_model.errors import GroupTooLarge, LGMirrorError
from lg_model.fjrw import genus0_correlator, insertion_list, moduli_profile, r_spin_sweep
from lg_model.frobenius import (
    FrobeniusAlgebra,
    check_associativity,
    check_equivariance,
    check_frobenius,
    check_grading,
    check_unit,
)
from lg_model.polynomial import InvertiblePolynomial, charges, decompose, predicates, transpose
from lg_model.statespace import (
    A_MODEL,
    B_MODEL,
    HodgeDiamond,
    krawitz_compare,
    lg_cy_diamond,
    mirror_check,
    pairing_rank,
    space_for,
)
from lg_model.symmetry import (
    Subgroup,
    SymmetryElement,
    dual_group,
    enumerate_subgroups,
    full_group,
    j_element,
    sl_subgroup,
)

logger = logging.getLogger(__name__)


# ============ Converters ============

def element_out(g: SymmetryElement) -> ElementOut:
    return ElementOut(phases=list(g.phases), age=g.age, order=g.order, fixed=list(g.fixed_indices))


def subgroup_out(g: Subgroup) -> SubgroupOut:
    return SubgroupOut(
        order=g.order,
        invariant_factors=[d for d in g.invariant_factors if d != 1],
        generators=[element_out(h) for h in g.generators],
        contains_j=g.contains_j,
        in_sl=g.in_sl,
        dual_order=dual_group(g).order,
    )


def diamond_out(d: HodgeDiamond) -> DiamondReport:
    return DiamondReport(
        polynomial=d.polynomial.to_dsl(),
        group_order=d.group.order,
        quotient_order=d.quotient_order,
        dimension=d.dimension,
        rows=[list(r) for r in d.rows()],
        entries=[BidegreeCount(p=a, q=b, dim=n) for (a, b), n in d.entries.items()],
        fractional=[BidegreeCount(p=a, q=b, dim=n) for (a, b), n in d.fractional.items()],
        euler_characteristic=d.euler_characteristic,
    )


# ============ Handlers ============

def _polynomial(args) -> InvertiblePolynomial:
    if getattr(args, "file", None):
        return parse_source(Path(args.file).read_text(encoding="utf-8"))
    source = getattr(args, "poly_option", None) or getattr(args, "poly", None)
    if not source:
        raise ValueError("a polynomial is required (positional, --poly or --file)")
    return parse_source(source)


def handle_analyze(args) -> AnalyzeReport:
    p = _polynomial(args)
    cv = charges(p)
    preds = predicates(p)
    atoms = decompose(p).atoms
    return AnalyzeReport(
        polynomial=p.to_dsl(),
        exponents=[list(r) for r in p.exponents],
        charges=list(cv.charges),
        weights=list(cv.weights),
        degree=cv.degree,
        central_charge=cv.central_charge,
        total_charge=cv.total,
        canonical_id=decompose(p).canonical_id,
        atoms=[AtomOut(kind=a.kind, exponents=list(a.exponents),
                       variables=[p.names[v] for v in a.variables], label=a.label) for a in atoms],
        is_calabi_yau=preds.is_calabi_yau,
        is_gorenstein=preds.is_gorenstein,
        milnor_number=preds.milnor_number,
        is_transverse=preds.is_transverse,
        contained_subspaces=[[p.names[j] for j in s] for s in preds.contained_subspaces],
    )


def handle_transpose(args) -> TransposeReport:
    p = _polynomial(args)
    t = transpose(p)
    cv = charges(t)
    return TransposeReport(
        polynomial=p.to_dsl(),
        transpose=t.to_dsl(),
        exponents=[list(r) for r in t.exponents],
        charges=list(cv.charges),
        weights=list(cv.weights),
        degree=cv.degree,
        is_gorenstein=predicates(t).is_gorenstein,
    )


def handle_group(args) -> GroupReport:
    p = _polynomial(args)
    aut = full_group(p)
    report = GroupReport(
        polynomial=p.to_dsl(),
        aut_order=aut.order,
        invariant_factors=[d for d in aut.invariant_factors if d != 1],
        exponent=aut.exponent,
        j=element_out(j_element(p)),
        sl_order=sl_subgroup(p).order,
    )
    if args.subgroups:
        subgroups = enumerate_subgroups(p, max_group=args.max_group)
        report.subgroups = [subgroup_out(g) for g in subgroups]
        report.cy_subgroups = [subgroup_out(g) for g in subgroups if g.is_cy_type]
    return report


def handle_dualgroup(args) -> DualGroupReport:
    p = _polynomial(args)
    g = parse_group(p, args.group)
    dual = dual_group(g)
    return DualGroupReport(
        polynomial=p.to_dsl(),
        transpose=transpose(p).to_dsl(),
        group=subgroup_out(g),
        dual=subgroup_out(dual),
        involution=dual_group(dual) == g,
    )


def handle_statespace(args) -> StateSpaceReport:
    p = _polynomial(args)
    g = parse_group(p, args.group)
    space = space_for(p, g, args.flavor)
    report = StateSpaceReport(
        flavor=space.flavor,
        polynomial=p.to_dsl(),
        group_order=g.order,
        total_dim=space.total_dim,
        table=[BidegreeCount(p=a, q=b, dim=n) for (a, b), n in space.table.items()],
        poincare=[DegreeCount(degree=k, dim=n) for k, n in space.poincare_polynomial().items()],
    )
    if args.pairing:
        report.pairing_rank = pairing_rank(space)
    if args.classes:
        report.classes = [
            StateClassOut(sector=list(c.element.phases), monomial=list(c.monomial),
                          charge_degree=c.charge_degree, bidegree=list(c.bidegree))
            for c in space.classes
        ]
    return report


def handle_diamond(args) -> DiamondReport:
    p = _polynomial(args)
    return diamond_out(lg_cy_diamond(p, parse_group(p, args.group)))


def handle_mirror_check(args) -> MirrorCheckReport:
    p = _polynomial(args)
    g = parse_group(p, args.group)
    report = mirror_check(p, g)
    return MirrorCheckReport(
        passed=report.passed,
        passes_up_to_conjugation=report.passes_up_to_conjugation,
        krawitz_passed=krawitz_compare(p, g).passed,
        left=diamond_out(report.left),
        right=diamond_out(report.right),
        mismatches=list(report.mismatches),
    )


def handle_frobenius(args) -> FrobeniusReportOut:
    p = _polynomial(args)
    g = parse_group(p, args.group)
    if g.order > args.max_group:
        raise GroupTooLarge({"message": "group exceeds the Frobenius limit", "order": g.order, "limit": args.max_group})
    algebra = FrobeniusAlgebra(p, g)
    reports = [
        check_unit(algebra),
        check_associativity(algebra, even_only=args.even_only),
        check_grading(algebra),
        check_equivariance(algebra),
        check_frobenius(algebra, limit=args.samples),
    ]
    out = FrobeniusReportOut(
        polynomial=p.to_dsl(),
        group_order=g.order,
        dimension=algebra.space.total_dim,
        axioms=[AxiomResult(name=r.name, passed=r.passed, checked=r.checked,
                            failures=list(r.failures), unsupported=r.unsupported) for r in reports],
    )
    if args.constants:
        out.structure_constants = [
            StructureConstant(g=list(a.phases), h=list(b.phases), gh=list(c.element.phases),
                              gamma={str(list(m)): v for m, v in c.coefficients.items()})
            for a, b, c in algebra.structure_constants()
        ]
    return out


def handle_moduli(args) -> ModuliReport:
    p = _polynomial(args)
    g = parse_group(p, args.group)
    elements = parse_elements(p, args.insertions) if args.insertions else []
    profile = moduli_profile(p, g, insertion_list(args.genus, elements))
    return ModuliReport(
        polynomial=p.to_dsl(),
        genus=args.genus,
        insertions=[list(h.phases) for h in elements],
        nonempty=profile.nonempty,
        line_degrees=list(profile.line_degrees),
        euler_characteristics=list(profile.euler_characteristics),
        virtual_codim=profile.virtual_codim,
        cycle_degree=profile.cycle_degree,
        cover_degree=profile.cover_degree,
        group_cover_degree=profile.group_cover_degree,
    )


def handle_correlator(args) -> Result:
    if args.r_spin:
        points = tuple(int(v) for v in args.points.split(","))
        return [
            SweepLine(r=rec.r, genus=rec.genus, insertions=list(rec.insertions), status=rec.status,
                      value=rec.value, closed_form=rec.closed_form)
            for rec in r_spin_sweep(args.r_spin, points=points, broad_nodes=args.broad_nodes)
        ]
    p = _polynomial(args)
    g = parse_group(p, args.group)
    elements = parse_elements(p, args.insertions or "")
    result = genus0_correlator(p, g, elements, broad_nodes=args.broad_nodes)
    return CorrelatorReport(
        polynomial=p.to_dsl(),
        insertions=[list(h.phases) for h in elements],
        status=result.status,
        value=result.value if result.status == "value" else None,
        virtual_codim=result.virtual_codim,
        normalization=result.normalization,
        normalized_value=result.normalized_value,
        reason=result.reason,
    )


def handle_catalog(args) -> Result:
    if args.catalog_command == "enumerate":
        return enumerate_catalog(args.vars, args.max_exp, cy_only=args.cy)
    if args.catalog_command == "stored":
        return stored_records(args.db)
    polys = load_catalog(Path(args.path).read_text(encoding="utf-8"))
    summary = verify_catalog(polys, workers=args.workers, max_group=args.max_group,
                             max_frobenius_group=args.max_frobenius_group)
    if args.store or ENABLE_DB:
        store_summary(polys, summary, args.db)
    return summary


def store_summary(polys, summary, url: Optional[str] = None):
    # database.connection imports cli.config, so it cannot load at package import
    from database.connection import connect, get_db_error, get_session, init_db, upsert_record

    if not connect(url):
        logger.warning("⚠️  Results not stored: %s", get_db_error())
        return
    init_db()
    for db in get_session():
        for p, result in zip(polys, summary.results):
            entry = catalog_entry(p)
            upsert_record(db, {
                "canonical_id": entry.id,
                "polynomial": entry.polynomial,
                "exponents": entry.exponents,
                "charges": [str(q) for q in entry.charges],
                "is_calabi_yau": entry.is_calabi_yau,
                "is_gorenstein": entry.is_gorenstein,
                "aut_order": entry.aut_order,
                "checks": result.checks,
                "passed": result.passed,
            })
    logger.info("💾 Stored %d catalog records", len(summary.results))


def stored_records(url: Optional[str] = None) -> List[CatalogRecordResponse]:
    from database.connection import connect, get_db_error, get_session, init_db

    if not connect(url):
        raise OSError(f"catalog database unavailable: {get_db_error()}")
    init_db()
    records = []
    for db in get_session():
        rows = db.query(CatalogRecord).order_by(CatalogRecord.canonical_id).all()
        records = [CatalogRecordResponse.model_validate(r) for r in rows]
    return records


def handle_schema(args) -> str:
    names = [args.name] if args.name else list(OUTPUT_MODELS)
    unknown = [n for n in names if n not in OUTPUT_MODELS]
    if unknown:
        raise ValueError(f"unknown schema {unknown[0]!r}; choose from {', '.join(OUTPUT_MODELS)}")
    schemas = {n: OUTPUT_MODELS[n].model_json_schema(mode="serialization") for n in names}
    if args.write:
        written = {n: str(write_schema(Path(args.write), n, s)) for n, s in schemas.items()}
        return json.dumps(written, indent=2, sort_keys=True) + "\n"
    return json.dumps(schemas if not args.name else schemas[args.name], indent=2, sort_keys=True) + "\n"


def write_schema(directory: Path, name: str, schema: dict) -> Path:
    """<directory>/<name>.schema.json"""
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{name}.schema.json"
    path.write_text(json.dumps(schema, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


HANDLERS = {
    "analyze": handle_analyze,
    "transpose": handle_transpose,
    "group": handle_group,
    "dualgroup": handle_dualgroup,
    "statespace": handle_statespace,
    "diamond": handle_diamond,
    "mirror-check": handle_mirror_check,
    "frobenius": handle_frobenius,
    "moduli": handle_moduli,
    "correlator": handle_correlator,
    "catalog": handle_catalog,
    "schema": handle_schema,
}


# ============ Parser ============

def _add_poly(sub: argparse.ArgumentParser):
    sub.add_argument("poly", nargs="?", help="DSL text, exponent-matrix JSON or a preset name")
    sub.add_argument("--poly", dest="poly_option", help="same as the positional argument")
    sub.add_argument("--file", help="read the polynomial from a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lgmirror", description="LG mirror symmetry in exact arithmetic")
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const=JSON)
    fmt.add_argument("--tsv", dest="format", action="store_const", const=TSV)
    fmt.add_argument("--text", dest="format", action="store_const", const=TEXT)
    parser.set_defaults(format=JSON)
    parser.add_argument("--out", nargs="?", const=str(OUTPUT_DIR),
                        help="output file, or a directory for a timestamped report")
    commands = parser.add_subparsers(dest="command", required=True)

    for name in ("analyze", "transpose"):
        _add_poly(commands.add_parser(name))

    sub = commands.add_parser("group")
    _add_poly(sub)
    sub.add_argument("--subgroups", action="store_true", help="list every subgroup and the CY-type ones")
    sub.add_argument("--max-group", type=int, default=MAX_GROUP)

    sub = commands.add_parser("dualgroup")
    _add_poly(sub)
    sub.add_argument("-G", "--group", required=True)

    sub = commands.add_parser("statespace")
    _add_poly(sub)
    sub.add_argument("-G", "--group", required=True)
    sub.add_argument("--flavor", choices=[A_MODEL, B_MODEL], default=A_MODEL)
    sub.add_argument("--classes", action="store_true")
    sub.add_argument("--pairing", action="store_true", help="report the rank of the pairing")

    for name in ("diamond", "mirror-check"):
        sub = commands.add_parser(name)
        _add_poly(sub)
        sub.add_argument("-G", "--group", default="j")

    sub = commands.add_parser("frobenius")
    _add_poly(sub)
    sub.add_argument("-G", "--group", default="sl")
    sub.add_argument("--even-only", action="store_true", help="restrict associativity to even sectors")
    sub.add_argument("--constants", action="store_true", help="dump gamma for every pair")
    sub.add_argument("--samples", type=int, default=100, help="triples for the Frobenius property")
    sub.add_argument("--max-group", type=int, default=MAX_FROBENIUS_GROUP)

    sub = commands.add_parser("moduli")
    _add_poly(sub)
    sub.add_argument("-G", "--group", default="aut")
    sub.add_argument("-g", "--genus", type=int, default=0)
    sub.add_argument("-i", "--insertions", default="")

    sub = commands.add_parser("correlator")
    _add_poly(sub)
    sub.add_argument("-G", "--group", default="aut")
    sub.add_argument("-i", "--insertions")
    sub.add_argument("--broad-nodes", action="store_true", help="evaluate Theta = 0 boundary terms")
    sub.add_argument("--r-spin", type=int, help="sweep every narrow correlator of x^r")
    sub.add_argument("--points", default="3,4")

    sub = commands.add_parser("catalog")
    catalog = sub.add_subparsers(dest="catalog_command", required=True)
    enum = catalog.add_parser("enumerate")
    enum.add_argument("--vars", type=int, required=True)
    enum.add_argument("--max-exp", type=int, required=True)
    enum.add_argument("--cy", action="store_true")
    verify = catalog.add_parser("verify")
    verify.add_argument("path")
    verify.add_argument("--workers", type=int, default=WORKERS)
    verify.add_argument("--max-group", type=int, default=MAX_GROUP)
    verify.add_argument("--max-frobenius-group", type=int, default=MAX_FROBENIUS_GROUP)
    verify.add_argument("--store", action="store_true", help="save results to the catalog database")
    verify.add_argument("--db", help="database URL; LGMIRROR_DATABASE_URL when omitted")
    stored = catalog.add_parser("stored")
    stored.add_argument("--db", help="database URL; LGMIRROR_DATABASE_URL when omitted")

    sub = commands.add_parser("schema")
    sub.add_argument("name", nargs="?")
    sub.add_argument("--write", metavar="DIR", help="write <name>.schema.json files instead of printing")
    return parser


# ============ Dispatch ============

def output_path(out: str, command: str, fmt: str) -> Path:
    """An existing directory (or a path ending in '/') gets <command>_<YYYYmmddHHMMSS>.<ext>"""
    path = Path(out)
    if path.is_dir() or out.endswith(("/", "\\")):
        path.mkdir(parents=True, exist_ok=True)
        ts = datetime.now().strftime("%Y%m%d%H%M%S")
        return path / f"{command}_{ts}.{EXTENSIONS[fmt]}"
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def run(argv: Optional[List[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        result = HANDLERS[args.command](args)
    except LGMirrorError as e:
        logger.error("❌ %s: %s", e.__class__.__name__, e.detail)
        stdout.write(ErrorReport(**e.to_dict()).model_dump_json() + "\n")
        return e.exit_code
    except (ValueError, OSError) as e:
        logger.error("❌ %s", e)
        stdout.write(ErrorReport(error=e.__class__.__name__, detail=str(e), exit_code=1).model_dump_json() + "\n")
        return 1
    text = result if isinstance(result, str) else render(result, args.format)
    if args.out:
        path = output_path(args.out, args.command, args.format)
        path.write_text(text, encoding="utf-8")
        logger.info("💾 Saved %s", path)
    else:
        stdout.write(text)
    return 0
