"""
LG Mirror CLI
Entry point for the `lgmirror` command
"""
import logging
import sys

from cli.config import LOG_LEVEL
from cli.routes import run


def main():
    # Reports go to stdout, logs to stderr
    logging.basicConfig(
        level=getattr(logging, LOG_LEVEL, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    sys.exit(run())


if __name__ == "__main__":
    main()
