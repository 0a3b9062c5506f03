import pytest

from database import connection
from database.models import CatalogRecord
from database.schemas import CatalogRecordResponse


@pytest.fixture
def db(tmp_path):
    assert connection.connect(f"sqlite:///{tmp_path / 'catalog.db'}")
    connection.init_db()
    for session in connection.get_session():
        yield session
    connection.drop_all_tables()


def record(**overrides):
    values = {
        "canonical_id": "fermat(3)+fermat(3)+fermat(3)",
        "polynomial": "x^3+y^3+z^3",
        "exponents": [[3, 0, 0], [0, 3, 0], [0, 0, 3]],
        "charges": ["1/3", "1/3", "1/3"],
        "is_calabi_yau": True,
        "is_gorenstein": True,
        "aut_order": 27,
        "checks": {"charges": "pass", "frobenius": "skipped"},
        "passed": True,
    }
    values.update(overrides)
    return values


def test_upsert_creates_then_updates(db):
    first = connection.upsert_record(db, record())
    second = connection.upsert_record(db, record(passed=False, checks={"charges": "fail"}))
    assert first.id == second.id
    assert db.query(CatalogRecord).count() == 1
    stored = db.query(CatalogRecord).one()
    assert stored.passed is False
    assert stored.checks == {"charges": "fail"}


def test_response_model_reads_attributes(db):
    stored = connection.upsert_record(db, record())
    response = CatalogRecordResponse.model_validate(stored)
    assert response.canonical_id == "fermat(3)+fermat(3)+fermat(3)"
    assert response.charges == ["1/3", "1/3", "1/3"]


def test_failed_connection_is_reported():
    assert not connection.connect("sqlite:////nonexistent-dir/sub/catalog.db")
    assert connection.get_db_error()
    assert not connection.is_db_connected()
    sessions = list(connection.get_session())
    assert sessions == [None]
