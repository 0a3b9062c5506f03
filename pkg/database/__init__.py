"""
Catalog store
CatalogRecord model and report schemas; the engine lives in database.connection
"""
from database.models import Base, CatalogRecord

__all__ = ["Base", "CatalogRecord"]
