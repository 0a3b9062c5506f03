"""
CLI Configuration
Contains all configuration constants for the command line tool
"""
import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

# Directory configuration
OUTPUT_DIR = Path(os.getenv("LGMIRROR_OUTPUT_DIR", ".output"))

# Group size limits
MAX_GROUP = int(os.getenv("LGMIRROR_MAX_GROUP", "200"))
MAX_FROBENIUS_GROUP = int(os.getenv("LGMIRROR_MAX_FROBENIUS_GROUP", "60"))

# Catalog verification worker threads
WORKERS = int(os.getenv("LGMIRROR_WORKERS", "4"))

# Logging
LOG_LEVEL = os.getenv("LGMIRROR_LOG_LEVEL", "WARNING").upper()

# Catalog persistence
# Set LGMIRROR_ENABLE_DB=true in .env to store verification results
ENABLE_DB = os.getenv("LGMIRROR_ENABLE_DB", "false").lower() == "true"

DATABASE_URL = os.getenv("LGMIRROR_DATABASE_URL", "sqlite:///lgmirror.db")
# Hosted Postgres URLs still use the postgres:// scheme
if DATABASE_URL and DATABASE_URL.startswith("postgres://"):
    DATABASE_URL = DATABASE_URL.replace("postgres://", "postgresql://", 1)
