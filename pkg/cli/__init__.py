"""
CLI Package
Command routes, input parsing, output formatting and the catalog runner
"""
from cli.config import OUTPUT_DIR, MAX_GROUP, MAX_FROBENIUS_GROUP, WORKERS, LOG_LEVEL
from cli.routes import build_parser, run

__all__ = [
    "OUTPUT_DIR",
    "MAX_GROUP",
    "MAX_FROBENIUS_GROUP",
    "WORKERS",
    "LOG_LEVEL",
    "build_parser",
    "run",
]
