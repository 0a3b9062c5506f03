import pytest

from cli.catalog import (
    CHECKS,
    FAIL,
    PASS,
    SKIPPED,
    UNSUPPORTED,
    enumerate_catalog,
    load_catalog,
    verify_catalog,
    verify_polynomial,
    write_catalog,
)
from cli.parser import parse
from lg_model.errors import PolynomialSyntaxError, SingularMatrix
from lg_model.frobenius import FrobeniusReport
from lg_model.polynomial import canonical_id


def test_enumerate_two_variables():
    entries = enumerate_catalog(2, 3)
    ids = [e.id for e in entries]
    # 3 Fermat pairs, 4 chains, 3 loops up to rotation
    assert len(entries) == 10
    assert ids == sorted(ids)
    assert "fermat(2)+fermat(3)" in ids
    assert "loop(2,3)" in ids
    assert "loop(3,2)" not in ids


def test_enumerate_is_deterministic():
    first = write_catalog(enumerate_catalog(2, 4))
    second = write_catalog(enumerate_catalog(2, 4))
    assert first == second


def test_enumerate_calabi_yau_only():
    entries = enumerate_catalog(3, 3, cy_only=True)
    assert entries
    assert all(e.is_calabi_yau for e in entries)
    assert "fermat(3)+fermat(3)+fermat(3)" in [e.id for e in entries]


def test_load_catalog_round_trip():
    entries = enumerate_catalog(2, 3)
    polys = load_catalog(write_catalog(entries))
    assert [canonical_id(p) for p in polys] == [e.id for e in entries]


def test_load_catalog_mixed_lines(p8):
    text = "# cubic\nx^3+y^3+z^3\n\nquintic\n"
    polys = load_catalog(text)
    assert polys[0] == p8
    assert len(polys) == 2


def test_load_catalog_rejects_singular_entry():
    with pytest.raises(SingularMatrix):
        load_catalog('{"exponents": [[1, 1], [1, 1]]}\n')


def test_load_catalog_rejects_bad_json():
    with pytest.raises(PolynomialSyntaxError):
        load_catalog('{"polynomial": "x^3"}\n')


def test_verify_cubic_torus(p8):
    result = verify_polynomial(p8)
    assert result.passed, result.checks
    for name in ("charges", "milnor", "duality", "krawitz", "mirror", "pairing"):
        assert result.checks[name] == PASS


def test_verify_skips_large_groups(quintic):
    result = verify_polynomial(quintic, max_group=100, max_frobenius_group=10)
    assert result.passed
    assert result.checks["charges"] == PASS
    assert result.checks["duality"] == SKIPPED
    assert result.checks["frobenius"] == SKIPPED


def test_verify_non_calabi_yau(d4, loop33):
    for p in (d4, loop33):
        result = verify_polynomial(p)
        assert result.checks["mirror"] == SKIPPED
        assert result.checks["krawitz"] == PASS
        assert result.checks["duality"] == PASS


def test_verify_catalog_keeps_order(d4, p8, loop33):
    polys = [loop33, d4, p8]
    summary = verify_catalog(polys, workers=3)
    assert [r.id for r in summary.results] == [canonical_id(p) for p in polys]
    assert summary.entries == 3
    assert summary.passed + summary.failed == 3
    for name in CHECKS:
        assert sum(summary.per_check[name].values()) == 3


@pytest.mark.slow
def test_three_variable_calabi_yau_catalog():
    polys = load_catalog(write_catalog(enumerate_catalog(3, 6, cy_only=True)))
    summary = verify_catalog(polys)
    assert summary.failed == 0, [r for r in summary.results if not r.passed]


def test_frobenius_covers_every_sl_subgroup():
    result = verify_polynomial(parse("x1^3*x2+x2^2*x3+x3^3"))
    assert result.checks["frobenius"] == PASS
    assert result.details["frobenius"]["groups"] == 2
    assert result.details["frobenius"]["unsupported"] == []


def test_unsupported_frobenius_is_not_a_pass(monkeypatch, p8):
    def undetermined(algebra, even_only=False):
        return FrobeniusReport("associativity", False, 0, unsupported="gamma is not determined")

    monkeypatch.setattr("cli.catalog.check_associativity", undetermined)
    result = verify_polynomial(p8)
    assert result.checks["frobenius"] == UNSUPPORTED
    assert result.details["frobenius"]["unsupported"]
    assert not result.passed

    summary = verify_catalog([p8], workers=1)
    assert summary.failed == 1
    assert summary.per_check["frobenius"] == {UNSUPPORTED: 1}


def test_verify_catalog_ignores_worker_count():
    polys = load_catalog(write_catalog(enumerate_catalog(2, 3)))
    single = verify_catalog(polys, workers=1)
    pooled = verify_catalog(polys, workers=4)
    assert single.model_dump() == pooled.model_dump()


@pytest.mark.slow
@pytest.mark.parametrize("n_vars,max_exp", [(2, 4), (3, 4), (4, 3)])
def test_small_catalogs_have_no_failed_checks(n_vars, max_exp):
    entries = enumerate_catalog(n_vars, max_exp)
    assert any(not e.is_calabi_yau for e in entries)
    summary = verify_catalog(load_catalog(write_catalog(entries)))
    bad = [
        (r.id, name, status)
        for r in summary.results
        for name, status in r.checks.items()
        if status == FAIL or status.startswith("error:")
    ]
    assert bad == []
