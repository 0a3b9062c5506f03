"""
SQLAlchemy Database Models
ORM model for stored catalog verification results
"""
from datetime import datetime
from sqlalchemy import Column, Integer, String, Text, DateTime, Boolean, JSON
from sqlalchemy.orm import declarative_base

Base = declarative_base()


class CatalogRecord(Base):
    """
    Catalog entry model
    Stores one invertible polynomial and the outcome of each verification check
    """
    __tablename__ = "catalog_records"

    id = Column(Integer, primary_key=True, index=True)
    canonical_id = Column(String(255), unique=True, index=True, nullable=False)
    polynomial = Column(Text, nullable=False)

    # Exponent matrix and charges ("p/q" strings) stored as JSON
    exponents = Column(JSON, nullable=False)
    charges = Column(JSON, nullable=False)

    is_calabi_yau = Column(Boolean, default=False)
    is_gorenstein = Column(Boolean, default=False)
    aut_order = Column(Integer, nullable=False)

    # check name -> "pass" / "fail" / "skipped" / "error:<name>"
    checks = Column(JSON, nullable=False)
    passed = Column(Boolean, default=False)

    created_at = Column(DateTime, default=datetime.utcnow)
    updated_at = Column(DateTime, default=datetime.utcnow, onupdate=datetime.utcnow)

    def __repr__(self):
        return f"<CatalogRecord(id={self.id}, canonical_id={self.canonical_id}, passed={self.passed})>"
