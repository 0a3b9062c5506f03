"""
Database Connection and Session Management
"""
import logging
from typing import Generator, Optional

from sqlalchemy import create_engine, text
from sqlalchemy.engine import Engine
from sqlalchemy.orm import Session, sessionmaker

from cli.config import DATABASE_URL
from database.models import Base, CatalogRecord

logger = logging.getLogger(__name__)

# Engine and session factory are created on first use
engine: Optional[Engine] = None
SessionLocal = None
DB_CONNECTION_ERROR = None


def connect(url: Optional[str] = None) -> bool:
    """
    Create the engine and session factory, testing the connection immediately

    Args:
        url: Database URL; LGMIRROR_DATABASE_URL when omitted

    Returns:
        True when the database is reachable
    """
    global engine, SessionLocal, DB_CONNECTION_ERROR
    url = url or DATABASE_URL
    if url.startswith("sqlite"):
        connect_args = {"check_same_thread": False}
    else:
        connect_args = {"connect_timeout": 10}
    try:
        engine = create_engine(
            url,
            pool_pre_ping=True,          # Verify connections before using them
            echo=False,                  # Set to True for SQL logging during development
            connect_args=connect_args,
        )
        with engine.connect() as conn:
            conn.execute(text("SELECT 1"))
        SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)
        DB_CONNECTION_ERROR = None
        logger.info("✅ Database connection established successfully")
    except Exception as e:
        DB_CONNECTION_ERROR = str(e)
        logger.error("❌ Database connection failed: %s", DB_CONNECTION_ERROR)
        engine = None
        SessionLocal = None
    return is_db_connected()


def get_session() -> Generator[Optional[Session], None, None]:
    """
    Yield a database session, or None when the database is unavailable
    Usage:
        for db in get_session():
            ...
    """
    if SessionLocal is None:
        yield None
        return

    db = SessionLocal()
    try:
        yield db
    finally:
        db.close()


def is_db_connected() -> bool:
    """Check if database is connected and available"""
    return engine is not None and SessionLocal is not None


def get_db_error() -> str:
    """Get the database connection error message if any"""
    return DB_CONNECTION_ERROR if DB_CONNECTION_ERROR else ""


def init_db():
    """
    Initialize database tables
    Creates all tables defined in models.py
    """
    if engine is None:
        logger.warning("⚠️  Cannot initialize database: %s", get_db_error() or "not connected")
        return

    try:
        logger.info("🔧 Initializing database tables...")
        Base.metadata.create_all(bind=engine)
        logger.info("✅ Database tables initialized successfully")
    except Exception as e:
        logger.error("❌ Failed to initialize database tables: %s", e)


def drop_all_tables():
    """
    WARNING: Drop all tables from database
    Use only for development/testing
    """
    if engine is None:
        logger.warning("⚠️  Database not connected. No tables to drop.")
        return

    logger.warning("⚠️  Dropping all database tables...")
    Base.metadata.drop_all(bind=engine)
    logger.info("✅ All tables dropped")


def upsert_record(db: Session, values: dict) -> CatalogRecord:
    """Insert or update the record with the same canonical id"""
    record = db.query(CatalogRecord).filter_by(canonical_id=values["canonical_id"]).first()
    if record:
        for key, value in values.items():
            setattr(record, key, value)
        logger.debug("🔄 Updated catalog record %s", values["canonical_id"])
    else:
        record = CatalogRecord(**values)
        db.add(record)
        logger.debug("💾 Created catalog record %s", values["canonical_id"])
    db.commit()
    db.refresh(record)
    return record
